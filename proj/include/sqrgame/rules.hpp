#pragma once

// Optimal-play move discipline: the forced-move cascade and the candidate
// restrictions that every searcher and the live engine share.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sqrgame/board.hpp"

namespace sqrgame {

struct InstantWin {
  Position cell;
  friend bool operator==(const InstantWin&, const InstantWin&) = default;
};
struct InstantLoss {
  friend bool operator==(const InstantLoss&, const InstantLoss&) = default;
};
struct ForcedBlock {
  Position cell;
  friend bool operator==(const ForcedBlock&, const ForcedBlock&) = default;
};
struct DilemmaWin {
  Position cell;
  friend bool operator==(const DilemmaWin&, const DilemmaWin&) = default;
};
struct Free {
  friend bool operator==(const Free&, const Free&) = default;
};

using ForcedStatus = std::variant<InstantWin, InstantLoss, ForcedBlock, DilemmaWin, Free>;

enum class MoveOrdering { RowMajor, CenterOut };

inline std::string ordering_name(MoveOrdering o) {
  return o == MoveOrdering::CenterOut ? "center-out" : "row-major";
}

inline MoveOrdering parse_ordering(const std::string& s) {
  if (s == "row-major") return MoveOrdering::RowMajor;
  if (s == "center-out") return MoveOrdering::CenterOut;
  throw std::invalid_argument("unknown move ordering '" + s + "'");
}

struct RuleConfig {
  bool use_symmetry_restriction = true;
  bool use_diagonal_first_move_restriction = true;
  // (n, player) pairs whose free moves must touch a square still open for P1.
  std::set<std::pair<int, CellValue>> useful_vertex_restriction_for = {
      {4, CellValue::P2}, {5, CellValue::P1}};
  MoveOrdering move_ordering = MoveOrdering::RowMajor;

  bool useful_vertex_applies(int n, CellValue mover) const {
    return useful_vertex_restriction_for.contains({n, mover});
  }
  friend bool operator==(const RuleConfig&, const RuleConfig&) = default;
};

// Bitmask over cell indices (row-major); bit i is cell i.
using CellMask = std::uint64_t;

// Empty cells where v would complete a square.
inline CellMask threat_mask(const Grid& g, CellValue v) {
  const CellValue opp = opponent(v);
  CellMask m = 0;
  for (int s = 0; s < g.square_count(); ++s) {
    if (g.count(s, v) != 3 || g.count(s, opp) != 0) continue;
    for (auto idx : g.geo().square_cells[s])
      if (g.empty_at(idx)) m |= CellMask{1} << idx;
  }
  return m;
}

// Threat cells v would gain by playing the empty cell idx.
inline CellMask threats_created(const Grid& g, int idx, CellValue v) {
  const CellValue opp = opponent(v);
  CellMask m = 0;
  for (auto s : g.geo().cell_squares[idx]) {
    if (g.count(s, v) != 2 || g.count(s, opp) != 0) continue;
    // Two of v plus idx leaves exactly one other empty vertex.
    for (auto other : g.geo().square_cells[s])
      if (other != idx && g.empty_at(other)) m |= CellMask{1} << other;
  }
  return m;
}

inline Position first_cell(const Grid& g, CellMask m) {
  return g.position(std::countr_zero(m));
}

// Evaluated in order: immediate win, unstoppable opponent double threat,
// single forced block, creation of our own double threat, free choice.
// Ties resolve to the first cell in row-major order.
inline ForcedStatus forced_status(const Grid& g, CellValue mover) {
  if (const CellMask own = threat_mask(g, mover)) return InstantWin{first_cell(g, own)};
  const CellMask theirs = threat_mask(g, opponent(mover));
  if (std::popcount(theirs) >= 2) return InstantLoss{};
  if (theirs) return ForcedBlock{first_cell(g, theirs)};
  // With no threats on the board, any new threat pair comes from this move.
  for (int i = 0; i < g.cell_count(); ++i)
    if (g.empty_at(i) && std::popcount(threats_created(g, i, mover)) >= 2)
      return DilemmaWin{g.position(i)};
  return Free{};
}

// An empty cell on some square with no P2 vertex.
inline bool is_useful_for_p1(const Grid& g, int idx) {
  for (auto s : g.geo().cell_squares[idx])
    if (g.count(s, CellValue::P2) == 0) return true;
  return false;
}

// Cell indices of an n x n board in the given ordering.
inline const std::vector<int>& cell_order(int n, MoveOrdering ordering) {
  static const auto tables = [] {
    std::array<std::array<std::vector<int>, 2>, kMaxN + 1> t;
    for (int k = kMinN; k <= kMaxN; ++k) {
      auto& rm = t[k][0];
      for (int i = 0; i < k * k; ++i) rm.push_back(i);
      // Twice the distance keeps even n on integer arithmetic.
      const auto dist = [k](int i) {
        const int dr = 2 * (i / k) - (k - 1), dc = 2 * (i % k) - (k - 1);
        return dr * dr + dc * dc;
      };
      auto co = rm;
      std::stable_sort(co.begin(), co.end(), [&](int a, int b) { return dist(a) < dist(b); });
      t[k][1] = co;
    }
    return t;
  }();
  return tables.at(static_cast<std::size_t>(n))[ordering == MoveOrdering::CenterOut ? 1 : 0];
}

// Fixed-capacity candidate buffer for the search hot path.
struct CandidateList {
  std::array<std::uint8_t, kMaxCells> cells{};
  int size = 0;
  void push(int idx) { cells[size++] = static_cast<std::uint8_t>(idx); }
};

inline void collect_candidates(const Grid& g, CellValue mover, const RuleConfig& cfg,
                               CandidateList& out) {
  const int n = g.n();
  const bool half_only = cfg.use_symmetry_restriction && is_column_symmetric(g);
  bool upper_only = false;
  if (cfg.use_diagonal_first_move_restriction) {
    const bool odd_center_opening = n % 2 == 1 && g.move_count() == 1 &&
                                    g.move(0).pos == Position{n / 2, n / 2};
    upper_only = g.move_count() == 0 || odd_center_opening;
  }
  const bool useful_only = cfg.useful_vertex_applies(n, mover);
  out.size = 0;
  int useful = 0;
  CandidateList all;
  for (int i : cell_order(n, cfg.move_ordering)) {
    if (!g.empty_at(i)) continue;
    const int r = i / n, c = i % n;
    if (half_only && c > (n - 1) / 2) continue;
    if (upper_only && r > c) continue;
    if (useful_only) {
      all.push(i);
      if (is_useful_for_p1(g, i)) {
        out.push(i);
        ++useful;
      }
    } else {
      out.push(i);
    }
  }
  // Applies only if such a cell exists.
  if (useful_only && useful == 0) out = all;
}

// Candidate cells for a free move. Callers resolve forced statuses first.
inline std::vector<Position> legal_candidates(const Grid& g, CellValue mover,
                                              const RuleConfig& cfg) {
  CandidateList list;
  collect_candidates(g, mover, cfg, list);
  std::vector<Position> out;
  out.reserve(static_cast<std::size_t>(list.size));
  for (int i = 0; i < list.size; ++i) out.push_back(g.position(list.cells[i]));
  return out;
}

struct Ongoing {
  friend bool operator==(const Ongoing&, const Ongoing&) = default;
};
struct WonBy {
  CellValue player = CellValue::Empty;
  SquareSpec square;
  friend bool operator==(const WonBy&, const WonBy&) = default;
};
struct Draw {
  friend bool operator==(const Draw&, const Draw&) = default;
};

using GameStatus = std::variant<Ongoing, WonBy, Draw>;

// A board where neither side can still complete a square is a draw.
inline GameStatus game_status(const Grid& g) {
  if (auto s = completed_square(g, CellValue::P1)) return WonBy{CellValue::P1, *s};
  if (auto s = completed_square(g, CellValue::P2)) return WonBy{CellValue::P2, *s};
  if (g.full()) return Draw{};
  if (!has_live_square(g, CellValue::P1) && !has_live_square(g, CellValue::P2)) return Draw{};
  return Ongoing{};
}

}  // namespace sqrgame
