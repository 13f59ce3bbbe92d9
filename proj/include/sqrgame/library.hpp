#pragma once

// Strategy files on disk: naming, default directory, load/save helpers.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

#include "sqrgame/strategy_table.hpp"

namespace sqrgame {

#ifndef SQRGAME_DEFAULT_STRATEGY_DIR
#define SQRGAME_DEFAULT_STRATEGY_DIR "data/strategies"
#endif

// SQRGAME_STRATEGY_DIR overrides the built-in location.
inline std::filesystem::path default_strategy_dir() {
  if (const char* env = std::getenv("SQRGAME_STRATEGY_DIR"); env && *env) return env;
  return SQRGAME_DEFAULT_STRATEGY_DIR;
}

inline std::string strategy_file_name(int n, CellValue side) {
  return "n" + std::to_string(n) + "_" + player_name(side) + ".txt";
}

// Engine sides for which a verified table guarantees the result.
inline bool is_guaranteed_side(int n, CellValue engine_side) {
  return (n == 3 && engine_side == CellValue::P2) || (n == 4 && engine_side == CellValue::P2) ||
         (n == 5 && engine_side == CellValue::P1);
}

inline StrategyTable load_strategy_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read strategy file " + path.string());
  return read_strategy(in);
}

inline void save_strategy_file(const std::filesystem::path& path, const StrategyTable& t) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write strategy file " + path.string());
  write_strategy(out, t);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

using StrategyLibrary = std::map<std::pair<int, CellValue>, std::shared_ptr<const StrategyTable>>;

// Loads every guaranteed (n, side) table present in dir; absent files are
// skipped.
inline StrategyLibrary load_library(const std::filesystem::path& dir) {
  StrategyLibrary lib;
  for (auto [n, side] : {std::pair{3, CellValue::P2}, std::pair{4, CellValue::P2},
                         std::pair{5, CellValue::P1}}) {
    const auto path = dir / strategy_file_name(n, side);
    if (!std::filesystem::exists(path)) continue;
    lib[{n, side}] = std::make_shared<const StrategyTable>(load_strategy_file(path));
  }
  return lib;
}

}  // namespace sqrgame
