#pragma once

// Strategy extraction from the solver and exhaustive verification of a table
// against every line the opponent can play.

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sqrgame/board.hpp"
#include "sqrgame/rules.hpp"
#include "sqrgame/solver.hpp"
#include "sqrgame/strategy_table.hpp"

namespace sqrgame {

struct ExtractionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VerificationReport {
  enum class Result { AllLinesWin, AllLinesNonLoss, CounterexampleFound };

  std::uint64_t states_visited = 0;
  int max_depth = 0;
  Result result = Result::CounterexampleFound;
  // Move number of the latest square the strategy player completed.
  int latest_square = 0;
  // Replayable from the empty board when a counterexample was found.
  std::vector<Move> line;
  std::string reason;

  bool passed() const { return result != Result::CounterexampleFound; }
};

inline std::string result_name(VerificationReport::Result r) {
  switch (r) {
    case VerificationReport::Result::AllLinesWin:
      return "all-lines-win";
    case VerificationReport::Result::AllLinesNonLoss:
      return "all-lines-non-loss";
    case VerificationReport::Result::CounterexampleFound:
      break;
  }
  return "counterexample";
}

// Search configuration a table was built under.
inline SearchConfig config_for(const StrategyTable& t) {
  SearchConfig cfg;
  cfg.n = t.n;
  cfg.rules = t.rules;
  cfg.max_moves = t.policy;
  return cfg;
}

namespace detail {

// Opponent replies, with the ones that put the line under a tighter move
// limit first. A table entry is then always committed under the tightest
// limit it is later reused with.
inline std::vector<Position> opponent_replies(Grid& g, CellValue mover, const SearchConfig& cfg) {
  auto replies = legal_candidates(g, mover, cfg.rules);
  if (cfg.max_moves.kind != MaxMovesPolicy::Kind::PaperN5 || g.move_count() != 1) return replies;
  std::vector<std::pair<int, Position>> keyed;
  for (Position p : replies) {
    g.place(p, mover);
    keyed.emplace_back(move_limit(g, cfg.max_moves), p);
    g.undo_last();
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  replies.clear();
  for (const auto& kp : keyed) replies.push_back(kp.second);
  return replies;
}

class Extractor {
 public:
  Extractor(const SearchConfig& cfg, CellValue side) : cfg_(cfg), side_(side), solver_(strip(cfg)) {
    table_.n = cfg.n;
    table_.side = side;
    table_.rules = cfg.rules;
    table_.policy = cfg.max_moves;
  }

  StrategyTable run() {
    Grid g(cfg_.n);
    if (!build(g))
      throw ExtractionError(player_name(side_) + " cannot achieve its aim at n = " +
                            std::to_string(cfg_.n) + " under this configuration");
    return std::move(table_);
  }

 private:
  static SearchConfig strip(SearchConfig cfg) {
    cfg.fixed_strategy = nullptr;
    cfg.on_progress = nullptr;
    return cfg;
  }

  bool aim(bool p1_wins) const { return side_ == CellValue::P1 ? p1_wins : !p1_wins; }

  bool build(Grid& g) {
    const int limit = move_limit(g, cfg_.max_moves);
    if (g.move_count() >= limit || !has_live_square(g, CellValue::P1)) return aim(false);

    const CellValue mover = g.to_move();
    const bool p1 = mover == CellValue::P1;
    const ForcedStatus status = forced_status(g, mover);
    if (std::holds_alternative<InstantWin>(status)) return aim(p1);
    if (std::holds_alternative<InstantLoss>(status)) return aim(!p1);
    if (std::holds_alternative<DilemmaWin>(status)) return aim(p1);
    if (const auto* block = std::get_if<ForcedBlock>(&status)) return play(g, block->cell, mover);

    auto key = std::make_pair(canonical_form(g).encoding, limit);
    if (done_.contains(key)) return true;

    if (mover == side_) {
      std::optional<Position> move = table_.lookup(g);
      if (!move) {
        for (Position p : legal_candidates(g, mover, cfg_.rules)) {
          g.place(p, mover);
          const bool ok = aim(solver_.p1_wins(g));
          g.undo_last();
          if (ok) {
            move = p;
            break;
          }
        }
        if (!move) return false;
        table_.record(g, *move);
      }
      if (!play(g, *move, mover))
        throw ExtractionError("table entry for " + g.encode() + " fails under move limit " +
                              std::to_string(limit));
    } else {
      for (Position p : opponent_replies(g, mover, cfg_))
        if (!play(g, p, mover)) return false;
    }
    done_.insert(std::move(key));
    return true;
  }

  bool play(Grid& g, Position p, CellValue mover) {
    g.place(p, mover);
    const bool r = build(g);
    g.undo_last();
    return r;
  }

  SearchConfig cfg_;
  CellValue side_;
  Solver solver_;
  StrategyTable table_;
  std::set<std::pair<std::string, int>> done_;
};

class Verifier {
 public:
  Verifier(const StrategyTable& table, const SearchConfig& cfg) : table_(table), cfg_(cfg) {}

  VerificationReport run() {
    Grid g(cfg_.n);
    if (walk(g, false))
      report_.result = table_.side == CellValue::P1 ? VerificationReport::Result::AllLinesWin
                                                    : VerificationReport::Result::AllLinesNonLoss;
    return report_;
  }

 private:
  bool fail(const Grid& g, std::string reason) {
    report_.result = VerificationReport::Result::CounterexampleFound;
    report_.line = g.history();
    report_.reason = std::move(reason);
    return false;
  }

  // decided: the cascade has already settled this line, so the move limit no
  // longer applies while the game is played out to its square.
  bool walk(Grid& g, bool decided) {
    ++report_.states_visited;
    report_.max_depth = std::max(report_.max_depth, g.move_count());
    const CellValue side = table_.side;
    const bool side_p1 = side == CellValue::P1;

    if (completed_square(g, CellValue::P1)) {
      if (!side_p1) return fail(g, "player 1 completed a square");
      if (table_.proven_bound > 0 && g.move_count() > table_.proven_bound)
        return fail(g, "square completed after the proven bound");
      report_.latest_square = std::max(report_.latest_square, g.move_count());
      return true;
    }
    if (completed_square(g, CellValue::P2))
      return side_p1 ? fail(g, "player 2 completed a square") : true;
    if (g.full()) return side_p1 ? fail(g, "board full without a player 1 square") : true;
    if (!has_live_square(g, CellValue::P1))
      return side_p1 ? fail(g, "player 1 has no square left") : true;
    if (!decided && g.move_count() >= move_limit(g, cfg_.max_moves))
      return side_p1 ? fail(g, "move limit reached without a decision") : true;

    const CellValue mover = g.to_move();
    const ForcedStatus status = forced_status(g, mover);
    const bool settles = !std::holds_alternative<ForcedBlock>(status) &&
                         !std::holds_alternative<Free>(status);

    std::vector<Position> moves;
    if (const auto* w = std::get_if<InstantWin>(&status)) {
      moves = {w->cell};
    } else if (const auto* b = std::get_if<ForcedBlock>(&status)) {
      moves = {b->cell};
    } else if (const auto* d = std::get_if<DilemmaWin>(&status)) {
      moves = {d->cell};
    } else if (mover == side) {
      if (std::holds_alternative<InstantLoss>(status))
        return fail(g, player_name(side) + " faces two opposing threats");
      const auto m = table_.lookup(g);
      if (!m) return fail(g, "no table entry for state " + g.encode());
      if (!g.in_range(*m) || !g.empty_at(g.index(*m)))
        return fail(g, "table move is not playable in state " + g.encode());
      moves = {*m};
    } else {
      moves = legal_candidates(g, mover, cfg_.rules);
    }

    for (Position p : moves) {
      g.place(p, mover);
      const bool ok = walk(g, decided || settles);
      g.undo_last();
      if (!ok) return false;
    }
    return true;
  }

  const StrategyTable& table_;
  SearchConfig cfg_;
  VerificationReport report_;
};

}  // namespace detail

// Depth-first: at each free node of `side` the first candidate whose subtree
// keeps side's aim is committed; every opponent reply is followed.
inline StrategyTable extract_strategy(const SearchConfig& cfg, CellValue side) {
  StrategyTable table = detail::Extractor(cfg, side).run();
  const VerificationReport rep = detail::Verifier(table, cfg).run();
  if (!rep.passed())
    throw ExtractionError("extracted table failed verification: " + rep.reason);
  table.proven_bound = side == CellValue::P1 ? rep.latest_square : rep.max_depth;
  return table;
}

inline VerificationReport verify_strategy(const StrategyTable& table, const SearchConfig& cfg) {
  if (table.n != cfg.n) throw std::invalid_argument("strategy table is for a different board size");
  return detail::Verifier(table, cfg).run();
}

}  // namespace sqrgame
