// Loads the bundled n=5 table and lets it play against a greedy opponent.

#include <iostream>
#include <memory>

#include "sqrgame/engine.hpp"
#include "sqrgame/library.hpp"

int main() {
  using namespace sqrgame;
  EngineProfile p1;
  p1.n = 5;
  p1.engine_side = CellValue::P1;
  p1.table = std::make_shared<const StrategyTable>(
      load_strategy_file(default_strategy_dir() / strategy_file_name(5, CellValue::P1)));

  EngineProfile p2;
  p2.n = 5;
  p2.engine_side = CellValue::P2;

  const GameRecord rec = play_out(p1, p2);
  for (const Move& m : rec.moves)
    std::cout << player_name(m.value) << " " << m.pos.r << " " << m.pos.c << "\n";
  if (const auto* w = std::get_if<WonBy>(&rec.status))
    std::cout << player_name(w->player) << " wins with square (" << w->square.r << ","
              << w->square.c << ") size " << w->square.d << "\n";
  else
    std::cout << "draw\n";
}
