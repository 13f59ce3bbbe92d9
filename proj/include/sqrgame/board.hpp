#pragma once

// Board state for the square achievement game: two players alternately claim
// cells of an n x n grid; the first to own the four corners of an
// axis-aligned square wins.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sqrgame {

inline constexpr int kMinN = 1;
inline constexpr int kMaxN = 8;
inline constexpr int kMaxCells = kMaxN * kMaxN;

// Sum over d of (n-d)^2 for n = kMaxN.
inline constexpr int kMaxSquares = 140;

enum class CellValue : std::uint8_t { Empty = 0, P1 = 1, P2 = 2 };

constexpr CellValue opponent(CellValue v) {
  return v == CellValue::P1 ? CellValue::P2 : CellValue::P1;
}

constexpr char to_char(CellValue v) {
  return static_cast<char>('0' + static_cast<int>(v));
}

inline std::string player_name(CellValue v) {
  switch (v) {
    case CellValue::P1:
      return "p1";
    case CellValue::P2:
      return "p2";
    case CellValue::Empty:
      break;
  }
  return "none";
}

inline CellValue parse_player(std::string_view s) {
  if (s == "p1" || s == "P1" || s == "1") return CellValue::P1;
  if (s == "p2" || s == "P2" || s == "2") return CellValue::P2;
  throw std::invalid_argument("unknown player '" + std::string(s) + "'");
}

struct Position {
  int r = 0;
  int c = 0;

  // Row-major order.
  friend constexpr auto operator<=>(const Position&, const Position&) = default;
};

struct SquareSpec {
  int r = 0;
  int c = 0;
  int d = 1;

  std::array<Position, 4> vertices() const {
    return {{{r, c}, {r, c + d}, {r + d, c}, {r + d, c + d}}};
  }
  friend constexpr auto operator<=>(const SquareSpec&, const SquareSpec&) = default;
};

// Row-major by r, then c, then ascending d.
inline std::vector<SquareSpec> enumerate_squares(int n) {
  if (n < kMinN) throw std::invalid_argument("board dimension must be positive");
  std::vector<SquareSpec> out;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      for (int d = 1; r + d < n && c + d < n; ++d) out.push_back({r, c, d});
  return out;
}

// The eight symmetries of the square.
enum class Transform : std::uint8_t {
  Identity,
  Rot90,
  Rot180,
  Rot270,
  MirrorColumns,  // c -> n-1-c
  MirrorRows,     // r -> n-1-r
  Transpose,      // main diagonal
  AntiTranspose,  // anti-diagonal
};

inline constexpr std::array<Transform, 8> kAllTransforms = {
    Transform::Identity,      Transform::Rot90,      Transform::Rot180,
    Transform::Rot270,        Transform::MirrorColumns, Transform::MirrorRows,
    Transform::Transpose,     Transform::AntiTranspose};

// Clockwise rotation for Rot90.
constexpr Position apply(Transform t, Position p, int n) {
  const int m = n - 1;
  switch (t) {
    case Transform::Identity:
      return p;
    case Transform::Rot90:
      return {p.c, m - p.r};
    case Transform::Rot180:
      return {m - p.r, m - p.c};
    case Transform::Rot270:
      return {m - p.c, p.r};
    case Transform::MirrorColumns:
      return {p.r, m - p.c};
    case Transform::MirrorRows:
      return {m - p.r, p.c};
    case Transform::Transpose:
      return {p.c, p.r};
    case Transform::AntiTranspose:
      return {m - p.c, m - p.r};
  }
  return p;
}

constexpr Transform inverse(Transform t) {
  if (t == Transform::Rot90) return Transform::Rot270;
  if (t == Transform::Rot270) return Transform::Rot90;
  return t;
}

// Per-dimension square tables, built once.
struct Geometry {
  int n = 0;
  std::vector<SquareSpec> squares;
  std::vector<std::array<std::uint8_t, 4>> square_cells;
  std::vector<std::vector<std::uint8_t>> cell_squares;
};

inline const Geometry& geometry(int n) {
  static const std::array<Geometry, kMaxN + 1> table = [] {
    std::array<Geometry, kMaxN + 1> all;
    for (int k = kMinN; k <= kMaxN; ++k) {
      Geometry& g = all[k];
      g.n = k;
      g.squares = enumerate_squares(k);
      g.cell_squares.resize(static_cast<std::size_t>(k * k));
      for (std::size_t s = 0; s < g.squares.size(); ++s) {
        std::array<std::uint8_t, 4> cells{};
        const auto vs = g.squares[s].vertices();
        for (int i = 0; i < 4; ++i) {
          cells[i] = static_cast<std::uint8_t>(vs[i].r * k + vs[i].c);
          g.cell_squares[cells[i]].push_back(static_cast<std::uint8_t>(s));
        }
        g.square_cells.push_back(cells);
      }
    }
    return all;
  }();
  if (n < kMinN || n > kMaxN)
    throw std::invalid_argument("board dimension " + std::to_string(n) +
                                " outside supported range 1.." + std::to_string(kMaxN));
  return table[n];
}

struct Move {
  Position pos;
  CellValue value = CellValue::Empty;
  friend constexpr bool operator==(const Move&, const Move&) = default;
};

class Grid {
 public:
  explicit Grid(int n) : n_(n), geo_(&geometry(n)) {}

  int n() const { return n_; }
  int cell_count() const { return n_ * n_; }
  const Geometry& geo() const { return *geo_; }
  int square_count() const { return static_cast<int>(geo_->squares.size()); }

  bool in_range(Position p) const { return p.r >= 0 && p.r < n_ && p.c >= 0 && p.c < n_; }
  int index(Position p) const { return p.r * n_ + p.c; }
  Position position(int idx) const { return {idx / n_, idx % n_}; }

  CellValue at(Position p) const {
    check_range(p);
    return cells_[index(p)];
  }
  CellValue at_index(int idx) const { return cells_[idx]; }
  bool empty_at(int idx) const { return cells_[idx] == CellValue::Empty; }

  // Vertices of square s currently owned by v.
  int count(int s, CellValue v) const { return counts_[s][static_cast<int>(v) - 1]; }

  void place(Position p, CellValue v) {
    check_range(p);
    if (v == CellValue::Empty) throw std::invalid_argument("cannot place an empty value");
    const int idx = index(p);
    if (cells_[idx] != CellValue::Empty)
      throw std::logic_error("cell (" + std::to_string(p.r) + "," + std::to_string(p.c) +
                             ") is occupied");
    place_unchecked(idx, v);
  }

  // Hot-path variant: idx must be an empty in-range cell.
  void place_unchecked(int idx, CellValue v) {
    cells_[idx] = v;
    const int slot = static_cast<int>(v) - 1;
    for (auto s : geo_->cell_squares[idx]) ++counts_[s][slot];
    history_[history_len_++] = Move{position(idx), v};
  }

  void undo_last() {
    if (history_len_ == 0) throw std::logic_error("undo on empty history");
    const Move m = history_[--history_len_];
    history_[history_len_] = Move{};
    const int idx = index(m.pos);
    const int slot = static_cast<int>(m.value) - 1;
    for (auto s : geo_->cell_squares[idx]) --counts_[s][slot];
    cells_[idx] = CellValue::Empty;
  }

  int move_count() const { return history_len_; }
  const Move& move(int i) const { return history_[i]; }
  std::vector<Move> history() const {
    return {history_.begin(), history_.begin() + history_len_};
  }

  // Player to move assuming alternating play from P1.
  CellValue to_move() const { return history_len_ % 2 == 0 ? CellValue::P1 : CellValue::P2; }

  int stones(CellValue v) const {
    return static_cast<int>(std::count(cells_.begin(), cells_.begin() + cell_count(), v));
  }
  bool full() const { return stones(CellValue::Empty) == 0; }

  // Row-major '0'/'1'/'2' string of length n*n.
  std::string encode() const {
    std::string s(static_cast<std::size_t>(cell_count()), '0');
    for (int i = 0; i < cell_count(); ++i) s[i] = to_char(cells_[i]);
    return s;
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.n_ == b.n_ && a.cells_ == b.cells_ && a.counts_ == b.counts_ &&
           a.history_len_ == b.history_len_ && a.history_ == b.history_;
  }

 private:
  void check_range(Position p) const {
    if (!in_range(p))
      throw std::out_of_range("position (" + std::to_string(p.r) + "," + std::to_string(p.c) +
                              ") outside " + std::to_string(n_) + "x" + std::to_string(n_) +
                              " board");
  }

  int n_;
  const Geometry* geo_;
  std::array<CellValue, kMaxCells> cells_{};
  std::array<std::array<std::uint8_t, 2>, kMaxSquares> counts_{};
  std::array<Move, kMaxCells> history_{};
  int history_len_ = 0;
};

// Builds a grid from a state string. Stones are placed row-major, so the
// history does not reflect any real move order.
inline Grid decode(std::string_view state) {
  int n = 0;
  while (n * n < static_cast<int>(state.size())) ++n;
  if (n * n != static_cast<int>(state.size()) || n < kMinN || n > kMaxN)
    throw std::invalid_argument("state string length " + std::to_string(state.size()) +
                                " is not a supported square");
  Grid g(n);
  for (int i = 0; i < n * n; ++i) {
    const char ch = state[i];
    if (ch == '0') continue;
    if (ch != '1' && ch != '2')
      throw std::invalid_argument(std::string("bad cell character '") + ch + "'");
    g.place_unchecked(i, ch == '1' ? CellValue::P1 : CellValue::P2);
  }
  return g;
}

// Smallest (in enumeration order) square fully owned by v.
inline std::optional<SquareSpec> completed_square(const Grid& g, CellValue v) {
  for (int s = 0; s < g.square_count(); ++s)
    if (g.count(s, v) == 4) return g.geo().squares[s];
  return std::nullopt;
}

// Empty cells where v would complete a square, row-major, no duplicates.
inline std::vector<Position> completing_cells(const Grid& g, CellValue v) {
  const CellValue opp = opponent(v);
  std::array<bool, kMaxCells> hit{};
  for (int s = 0; s < g.square_count(); ++s) {
    if (g.count(s, v) != 3 || g.count(s, opp) != 0) continue;
    for (auto idx : g.geo().square_cells[s])
      if (g.empty_at(idx)) hit[idx] = true;
  }
  std::vector<Position> out;
  for (int i = 0; i < g.cell_count(); ++i)
    if (hit[i]) out.push_back(g.position(i));
  return out;
}

// Some square has no vertex owned by v's opponent.
inline bool has_live_square(const Grid& g, CellValue v) {
  const CellValue opp = opponent(v);
  for (int s = 0; s < g.square_count(); ++s)
    if (g.count(s, opp) == 0) return true;
  return false;
}

inline bool is_column_symmetric(const Grid& g) {
  const int n = g.n();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n / 2; ++c)
      if (g.at_index(r * n + c) != g.at_index(r * n + n - 1 - c)) return false;
  return true;
}

// Moves are replayed through t, so the history is transformed as well.
inline Grid transform(const Grid& g, Transform t) {
  Grid out(g.n());
  for (int i = 0; i < g.move_count(); ++i) {
    const Move& m = g.move(i);
    out.place(apply(t, m.pos, g.n()), m.value);
  }
  return out;
}

inline std::string transformed_encoding(const Grid& g, Transform t) {
  const int n = g.n();
  std::string s(static_cast<std::size_t>(n * n), '0');
  for (int i = 0; i < n * n; ++i) {
    const Position p = apply(t, g.position(i), n);
    s[p.r * n + p.c] = to_char(g.at_index(i));
  }
  return s;
}

struct CanonicalForm {
  std::string encoding;
  // Maps the grid's frame onto the canonical frame.
  Transform transform = Transform::Identity;
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

// Lexicographically least encoding over the eight symmetric variants. Ties
// resolve to the earliest transform in kAllTransforms.
inline CanonicalForm canonical_form(const Grid& g) {
  CanonicalForm best{g.encode(), Transform::Identity};
  for (std::size_t i = 1; i < kAllTransforms.size(); ++i) {
    std::string s = transformed_encoding(g, kAllTransforms[i]);
    if (s < best.encoding) best = {std::move(s), kAllTransforms[i]};
  }
  return best;
}

}  // namespace sqrgame
