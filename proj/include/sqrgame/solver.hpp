#pragma once

// Backtracking search deciding whether Player 1 can force a square under the
// forced-move discipline and candidate restrictions of rules.hpp.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <variant>

#include "sqrgame/board.hpp"
#include "sqrgame/rules.hpp"
#include "sqrgame/strategy_table.hpp"

namespace sqrgame {

enum class Outcome { P1Win, NoP1Win };

struct SearchConfig {
  int n = 3;
  RuleConfig rules;
  MaxMovesPolicy max_moves;
  std::uint64_t progress_interval = 100000;
  // When set, the table's side plays only the stored move at free nodes that
  // have an entry.
  const StrategyTable* fixed_strategy = nullptr;
  // Called every progress_interval placements.
  std::function<void(std::uint64_t)> on_progress;
  const std::atomic<bool>* cancel = nullptr;
};

// Defaults: no move limit and row-major order for n = 3, 4. At n = 5 the
// search uses the paper-n5 limits and tries central cells first; row-major
// order there does not finish in reasonable time.
inline SearchConfig default_config(int n, const StrategyTable* table = nullptr) {
  SearchConfig cfg;
  cfg.n = n;
  cfg.fixed_strategy = table;
  if (n == 5) {
    cfg.max_moves = MaxMovesPolicy::paper_n5();
    cfg.rules.move_ordering = MoveOrdering::CenterOut;
  }
  return cfg;
}

struct SearchReport {
  Outcome outcome = Outcome::NoP1Win;
  bool completed = true;
  std::uint64_t moves_total = 0;
  std::uint64_t backtracks_p1 = 0;
  std::uint64_t backtracks_p2 = 0;
  int max_depth = 0;
  std::chrono::milliseconds elapsed{0};
};

struct SearchCancelled : std::runtime_error {
  SearchCancelled() : std::runtime_error("search cancelled") {}
};

class Solver {
 public:
  explicit Solver(SearchConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.n < 3) throw std::invalid_argument("solver requires n >= 3");
    geometry(cfg_.n);
    if (cfg_.max_moves.kind == MaxMovesPolicy::Kind::PaperN5 && cfg_.n != 5)
      throw std::invalid_argument("paper-n5 move limits only apply to n = 5");
    if (cfg_.max_moves.kind == MaxMovesPolicy::Kind::Fixed &&
        (cfg_.max_moves.limit < 1 || cfg_.max_moves.limit > cfg_.n * cfg_.n))
      throw std::invalid_argument("fixed move limit must lie in 1..n*n");
    if (cfg_.fixed_strategy && cfg_.fixed_strategy->n != cfg_.n)
      throw std::invalid_argument("strategy table is for a different board size");
  }

  // Can Player 1 force a win from g (with the player to move given by the
  // parity of g's history)? Counters accumulate across calls. g is restored.
  bool p1_wins(Grid& g) { return search(g); }

  SearchReport solve() {
    const auto start = std::chrono::steady_clock::now();
    Grid g(cfg_.n);
    SearchReport rep;
    try {
      rep.outcome = search(g) ? Outcome::P1Win : Outcome::NoP1Win;
    } catch (const SearchCancelled&) {
      rep.completed = false;
    }
    fill(rep);
    rep.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    return rep;
  }

  void fill(SearchReport& rep) const {
    rep.moves_total = moves_;
    rep.backtracks_p1 = backtracks_[0];
    rep.backtracks_p2 = backtracks_[1];
    rep.max_depth = max_depth_;
  }

  std::uint64_t moves() const { return moves_; }
  std::uint64_t backtracks(CellValue v) const { return backtracks_[static_cast<int>(v) - 1]; }
  const SearchConfig& config() const { return cfg_; }

 private:
  bool search(Grid& g) {
    // Outcomes must be decided before the line reaches its move limit.
    if (g.move_count() >= move_limit(g, cfg_.max_moves)) return false;
    if (!has_live_square(g, CellValue::P1)) return false;

    const CellValue mover = g.to_move();
    const bool p1 = mover == CellValue::P1;
    const ForcedStatus status = forced_status(g, mover);

    // A resolved cascade decides the game on the spot.
    if (std::holds_alternative<InstantWin>(status)) return p1;
    if (std::holds_alternative<InstantLoss>(status)) return !p1;
    if (std::holds_alternative<DilemmaWin>(status)) return p1;
    if (const auto* block = std::get_if<ForcedBlock>(&status))
      return try_move(g, g.index(block->cell), mover);

    CandidateList candidates;
    const StrategyTable* table = cfg_.fixed_strategy;
    if (table && table->side == mover) {
      if (auto m = table->lookup(g)) candidates.push(g.index(*m));
    }
    if (candidates.size == 0) collect_candidates(g, mover, cfg_.rules, candidates);

    for (int i = 0; i < candidates.size; ++i) {
      const bool r = try_move(g, candidates.cells[i], mover);
      if (p1 && r) return true;
      if (!p1 && !r) return false;
    }
    return !p1;
  }

  // Plays p, searches, retracts. Counts a backtrack when the subtree fails
  // the mover's aim.
  bool try_move(Grid& g, int idx, CellValue mover) {
    if (cfg_.cancel && cfg_.cancel->load(std::memory_order_relaxed)) throw SearchCancelled{};
    g.place_unchecked(idx, mover);
    ++moves_;
    if (g.move_count() > max_depth_) max_depth_ = g.move_count();
    if (cfg_.on_progress && cfg_.progress_interval && moves_ % cfg_.progress_interval == 0)
      cfg_.on_progress(moves_);
    bool r;
    try {
      r = search(g);
    } catch (...) {
      g.undo_last();
      throw;
    }
    g.undo_last();
    const bool aim = mover == CellValue::P1 ? r : !r;
    if (!aim) ++backtracks_[static_cast<int>(mover) - 1];
    return r;
  }

  SearchConfig cfg_;
  std::uint64_t moves_ = 0;
  std::uint64_t backtracks_[2] = {0, 0};
  int max_depth_ = 0;
};

inline SearchReport solve(const SearchConfig& cfg) { return Solver(cfg).solve(); }

inline std::string outcome_name(Outcome o) { return o == Outcome::P1Win ? "win" : "draw"; }

}  // namespace sqrgame
