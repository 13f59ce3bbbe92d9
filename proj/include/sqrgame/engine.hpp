#pragma once

// Live opponent: forced moves first, then the strategy table, then a short
// search, then the first empty cell.

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "sqrgame/board.hpp"
#include "sqrgame/rules.hpp"
#include "sqrgame/strategy_table.hpp"

namespace sqrgame {

struct EngineProfile {
  int n = 3;
  CellValue engine_side = CellValue::P2;
  std::shared_ptr<const StrategyTable> table;
  // Plies searched when the table has nothing to say.
  int fallback_depth = 4;

  void validate() const {
    geometry(n);
    if (engine_side == CellValue::Empty) throw std::invalid_argument("engine side must be p1 or p2");
    if (table && (table->n != n || table->side != engine_side))
      throw std::invalid_argument("strategy table does not match the engine profile");
  }
};

namespace detail {

inline bool completes(const Grid& g, int idx, CellValue v) {
  for (auto s : g.geo().cell_squares[idx])
    if (g.count(s, v) == 3) return true;
  return false;
}

// Depth-bounded negamax on the raw rules: +1 mover wins, -1 mover loses,
// 0 for a draw or anything beyond the horizon.
inline int bounded_value(Grid& g, int depth) {
  const CellValue mover = g.to_move();
  bool any = false;
  for (int i = 0; i < g.cell_count(); ++i)
    if (g.empty_at(i)) {
      any = true;
      if (completes(g, i, mover)) return 1;
    }
  if (!any || depth <= 0) return 0;
  int best = -1;
  for (int i = 0; i < g.cell_count() && best < 1; ++i) {
    if (!g.empty_at(i)) continue;
    g.place_unchecked(i, mover);
    best = std::max(best, -bounded_value(g, depth - 1));
    g.undo_last();
  }
  return best;
}

inline std::optional<Position> fallback_search(Grid g, int depth) {
  std::optional<Position> best_move;
  int best = -2;
  const CellValue mover = g.to_move();
  for (int i = 0; i < g.cell_count(); ++i) {
    if (!g.empty_at(i)) continue;
    g.place_unchecked(i, mover);
    const int v = -bounded_value(g, depth - 1);
    g.undo_last();
    if (v > best) {
      best = v;
      best_move = g.position(i);
      if (best == 1) break;
    }
  }
  return best_move;
}

}  // namespace detail

inline Position engine_move(const Grid& g, const EngineProfile& prof) {
  if (g.n() != prof.n) throw std::invalid_argument("board size does not match the engine profile");
  if (!std::holds_alternative<Ongoing>(game_status(g)))
    throw std::logic_error("game is already over");
  if (g.to_move() != prof.engine_side) throw std::logic_error("not the engine's turn");

  const CellValue side = prof.engine_side;
  const ForcedStatus status = forced_status(g, side);
  if (const auto* w = std::get_if<InstantWin>(&status)) return w->cell;
  if (const auto* b = std::get_if<ForcedBlock>(&status)) return b->cell;
  if (const auto* d = std::get_if<DilemmaWin>(&status)) return d->cell;
  if (std::holds_alternative<InstantLoss>(status)) {
    // Lost anyway; block one of the threats.
    return completing_cells(g, opponent(side)).front();
  }

  if (prof.table) {
    if (auto m = prof.table->lookup(g); m && g.in_range(*m) && g.empty_at(g.index(*m))) return *m;
  }
  if (prof.fallback_depth > 0) {
    if (auto m = detail::fallback_search(g, prof.fallback_depth)) return *m;
  }
  for (int i = 0; i < g.cell_count(); ++i)
    if (g.empty_at(i)) return g.position(i);
  throw std::logic_error("no empty cell left");
}

struct GameRecord {
  std::vector<Move> moves;
  GameStatus status = Ongoing{};
};

// Anything that picks a move for the side to play.
using MovePolicy = std::function<Position(const Grid&)>;

inline GameRecord play_game(int n, const MovePolicy& p1, const MovePolicy& p2) {
  Grid g(n);
  GameRecord rec;
  while (std::holds_alternative<Ongoing>(rec.status = game_status(g))) {
    const CellValue mover = g.to_move();
    const Position p = mover == CellValue::P1 ? p1(g) : p2(g);
    g.place(p, mover);
  }
  rec.moves = g.history();
  return rec;
}

inline MovePolicy engine_policy(const EngineProfile& prof) {
  prof.validate();
  return [prof](const Grid& g) { return engine_move(g, prof); };
}

inline GameRecord play_out(const EngineProfile& a, const EngineProfile& b) {
  if (a.n != b.n) throw std::invalid_argument("profiles must share n");
  if (a.engine_side == b.engine_side) throw std::invalid_argument("profiles must play opposite sides");
  const EngineProfile& p1 = a.engine_side == CellValue::P1 ? a : b;
  const EngineProfile& p2 = a.engine_side == CellValue::P1 ? b : a;
  return play_game(a.n, engine_policy(p1), engine_policy(p2));
}

}  // namespace sqrgame
