#pragma once

// Plain minimax over the raw rules (alternate moves, first square wins, full
// board draws). No forced-move shortcuts and no move restrictions, so it is an
// independent check on everything rules.hpp prunes.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

#include "sqrgame/board.hpp"

namespace sqrgame {

enum class GameValue { P1Win, Draw, P2Win };

inline std::string value_name(GameValue v) {
  switch (v) {
    case GameValue::P1Win:
      return "p1-win";
    case GameValue::P2Win:
      return "p2-win";
    case GameValue::Draw:
      break;
  }
  return "draw";
}

class Oracle {
 public:
  // Transposition memo on canonical forms is enabled from n = 4 up.
  explicit Oracle(int n) : n_(n), memoize_(n >= 4) {
    if (n > 4) throw std::invalid_argument("oracle refuses n >= 5");
    geometry(n);
    for (std::size_t t = 0; t < kAllTransforms.size(); ++t)
      for (int i = 0; i < n * n; ++i) {
        const Position p = apply(kAllTransforms[t], Position{i / n, i % n}, n);
        perm_[t][i] = p.r * n + p.c;
      }
  }

  // Value of g with the player to move given by g's move parity. g must not
  // already contain a completed square.
  GameValue value(Grid& g) {
    const int v = negamax(g);
    const bool p1_to_move = g.to_move() == CellValue::P1;
    if (v == 0) return GameValue::Draw;
    return (v > 0) == p1_to_move ? GameValue::P1Win : GameValue::P2Win;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  static bool completes(const Grid& g, int idx, CellValue v) {
    for (auto s : g.geo().cell_squares[idx])
      if (g.count(s, v) == 3) return true;
    return false;
  }

  std::uint64_t key(const Grid& g) const {
    std::uint64_t best = UINT64_MAX;
    for (const auto& perm : perm_) {
      std::array<std::uint8_t, kMaxCells> cells{};
      for (int i = 0; i < n_ * n_; ++i) cells[perm[i]] = static_cast<std::uint8_t>(g.at_index(i));
      std::uint64_t k = 0;
      for (int i = 0; i < n_ * n_; ++i) k = k * 3 + cells[i];
      best = std::min(best, k);
    }
    return best;
  }

  // +1 mover wins, 0 draw, -1 mover loses.
  int negamax(Grid& g) {
    ++nodes_;
    const CellValue mover = g.to_move();
    std::uint64_t k = 0;
    if (memoize_) {
      k = key(g);
      if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    }
    int best = -2;
    bool any = false;
    for (int i = 0; i < n_ * n_ && best < 1; ++i) {
      if (!g.empty_at(i)) continue;
      any = true;
      if (completes(g, i, mover)) {
        best = 1;
        break;
      }
      g.place_unchecked(i, mover);
      const int v = -negamax(g);
      g.undo_last();
      best = std::max(best, v);
    }
    if (!any) best = 0;
    if (memoize_) memo_.emplace(k, static_cast<std::int8_t>(best));
    return best;
  }

  int n_;
  bool memoize_;
  std::array<std::array<int, kMaxCells>, 8> perm_{};
  std::unordered_map<std::uint64_t, std::int8_t> memo_;
  std::uint64_t nodes_ = 0;
};

// Exact game value from the empty n x n board, n <= 4.
inline GameValue oracle_minimax(int n) {
  Oracle oracle(n);
  Grid g(n);
  return oracle.value(g);
}

}  // namespace sqrgame
