#pragma once

// Test-only oracles and generators. Nothing here reuses the incremental
// counters or the bitmask routines under test.

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <vector>

#include "sqrgame/board.hpp"

namespace sqrgame::testing {

inline Grid grid_with(int n, std::initializer_list<Position> p1, std::initializer_list<Position> p2) {
  Grid g(n);
  for (Position p : p1) g.place(p, CellValue::P1);
  for (Position p : p2) g.place(p, CellValue::P2);
  return g;
}

// Alternating random play from the empty board, stopping early on a full
// board.
inline Grid random_grid(int n, int moves, std::mt19937& rng) {
  Grid g(n);
  for (int i = 0; i < moves && !g.full(); ++i) {
    std::vector<int> empty;
    for (int c = 0; c < n * n; ++c)
      if (g.at_index(c) == CellValue::Empty) empty.push_back(c);
    std::uniform_int_distribution<std::size_t> pick(0, empty.size() - 1);
    g.place(g.position(empty[pick(rng)]), g.to_move());
  }
  return g;
}

// Every (r, c, d) triple, checked against the board bounds directly.
inline std::vector<SquareSpec> brute_force_squares(int n) {
  std::vector<SquareSpec> out;
  for (int d = 1; d < n; ++d)
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (r + d < n && c + d < n) out.push_back({r, c, d});
  return out;
}

inline int recount(const Grid& g, const SquareSpec& s, CellValue v) {
  int k = 0;
  for (Position p : s.vertices()) k += g.at(p) == v;
  return k;
}

inline bool owns_square(const Grid& g, CellValue v) {
  for (const auto& s : brute_force_squares(g.n()))
    if (recount(g, s, v) == 4) return true;
  return false;
}

// Empty cells whose occupation by v produces a square through that cell, by
// trial placement.
inline std::set<Position> brute_completing(const Grid& g, CellValue v) {
  std::set<Position> out;
  for (int r = 0; r < g.n(); ++r)
    for (int c = 0; c < g.n(); ++c) {
      if (g.at({r, c}) != CellValue::Empty) continue;
      Grid h = g;
      h.place({r, c}, v);
      for (const auto& s : brute_force_squares(g.n())) {
        const auto vs = s.vertices();
        if (std::find(vs.begin(), vs.end(), Position{r, c}) != vs.end() && recount(h, s, v) == 4)
          out.insert({r, c});
      }
    }
  return out;
}

inline std::set<Position> as_set(const std::vector<Position>& v) { return {v.begin(), v.end()}; }

// Every 3^(n*n) assignment with P1 - P2 in {0, 1} and no completed square.
template <typename F>
void for_each_legal_state(int n, F&& f) {
  const int cells = n * n;
  std::vector<int> digits(static_cast<std::size_t>(cells), 0);
  long total = 1;
  for (int i = 0; i < cells; ++i) total *= 3;
  for (long code = 0; code < total; ++code) {
    long x = code;
    int c1 = 0, c2 = 0;
    for (int i = 0; i < cells; ++i) {
      digits[i] = static_cast<int>(x % 3);
      x /= 3;
      c1 += digits[i] == 1;
      c2 += digits[i] == 2;
    }
    if (c1 - c2 != 0 && c1 - c2 != 1) continue;
    std::string s(static_cast<std::size_t>(cells), '0');
    for (int i = 0; i < cells; ++i) s[i] = static_cast<char>('0' + digits[i]);
    Grid g = decode(s);
    if (owns_square(g, CellValue::P1) || owns_square(g, CellValue::P2)) continue;
    f(g);
  }
}

}  // namespace sqrgame::testing
