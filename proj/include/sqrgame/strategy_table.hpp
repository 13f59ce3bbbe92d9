#pragma once

// Strategy tables: canonical board state -> the strategy player's move, plus
// the text file format they are persisted in (grammar in docs/strategy-format.md).

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sqrgame/board.hpp"
#include "sqrgame/rules.hpp"

namespace sqrgame {

struct MaxMovesPolicy {
  enum class Kind { None, Fixed, PaperN5 };
  Kind kind = Kind::None;
  int limit = 0;  // Fixed only

  static MaxMovesPolicy none() { return {}; }
  static MaxMovesPolicy fixed(int k) { return {Kind::Fixed, k}; }
  static MaxMovesPolicy paper_n5() { return {Kind::PaperN5, 0}; }

  friend bool operator==(const MaxMovesPolicy&, const MaxMovesPolicy&) = default;
};

inline std::string to_string(const MaxMovesPolicy& p) {
  switch (p.kind) {
    case MaxMovesPolicy::Kind::None:
      return "none";
    case MaxMovesPolicy::Kind::Fixed:
      return "fixed:" + std::to_string(p.limit);
    case MaxMovesPolicy::Kind::PaperN5:
      return "paper-n5";
  }
  return "none";
}

inline MaxMovesPolicy parse_max_moves_policy(const std::string& s) {
  if (s == "none") return MaxMovesPolicy::none();
  if (s == "paper-n5") return MaxMovesPolicy::paper_n5();
  std::string digits = s.rfind("fixed:", 0) == 0 ? s.substr(6) : s;
  if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos)
    return MaxMovesPolicy::fixed(std::stoi(digits));
  throw std::invalid_argument("unknown max-moves policy '" + s + "'");
}

// Move limit for a game whose second placement was second_move. The paper-n5
// limits assume the opening took the centre.
inline int max_moves_for(Position second_move, const MaxMovesPolicy& policy, int n) {
  switch (policy.kind) {
    case MaxMovesPolicy::Kind::None:
      return n * n;
    case MaxMovesPolicy::Kind::Fixed:
      return policy.limit;
    case MaxMovesPolicy::Kind::PaperN5:
      break;
  }
  if (n != 5) throw std::invalid_argument("paper-n5 move limits only apply to n = 5");
  if (second_move == Position{0, 2}) return 17;
  if (second_move == Position{0, 0} || second_move == Position{1, 2}) return 13;
  return 11;
}

// Limit in force for the line leading to g. Before the second move is known
// the board size is the only bound.
inline int move_limit(const Grid& g, const MaxMovesPolicy& policy) {
  if (policy.kind == MaxMovesPolicy::Kind::PaperN5 && g.move_count() < 2)
    return g.cell_count();
  const Position second = g.move_count() >= 2 ? g.move(1).pos : Position{};
  return max_moves_for(second, policy, g.n());
}

struct StrategyTable {
  static constexpr int kFormatVersion = 1;

  int n = 3;
  CellValue side = CellValue::P2;
  int version = kFormatVersion;
  RuleConfig rules;
  MaxMovesPolicy policy;
  // Largest move number at which any verified line ended.
  int proven_bound = 0;
  // Canonical state -> move in the canonical frame.
  std::map<std::string, Position> entries;

  // Move for g in g's own frame.
  std::optional<Position> lookup(const Grid& g) const {
    const CanonicalForm cf = canonical_form(g);
    const auto it = entries.find(cf.encoding);
    if (it == entries.end()) return std::nullopt;
    return apply(inverse(cf.transform), it->second, n);
  }

  bool contains(const Grid& g) const { return entries.contains(canonical_form(g).encoding); }

  void record(const Grid& g, Position move) {
    const CanonicalForm cf = canonical_form(g);
    entries.emplace(cf.encoding, apply(cf.transform, move, n));
  }

  friend bool operator==(const StrategyTable&, const StrategyTable&) = default;
};

class StrategyFormatError : public std::runtime_error {
 public:
  StrategyFormatError(int line, const std::string& what)
      : std::runtime_error("strategy file line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

namespace detail {

inline std::string useful_vertex_field(const RuleConfig& rules) {
  std::string out;
  for (const auto& [n, v] : rules.useful_vertex_restriction_for) {
    if (!out.empty()) out += ',';
    out += std::to_string(n) + ':' + player_name(v);
  }
  return out.empty() ? "-" : out;
}

}  // namespace detail

inline void write_strategy(std::ostream& os, const StrategyTable& t) {
  os << "sqrgame-strategy " << t.version << '\n';
  os << "n " << t.n << '\n';
  os << "side " << player_name(t.side) << '\n';
  os << "symmetry " << (t.rules.use_symmetry_restriction ? "on" : "off") << '\n';
  os << "diagonal " << (t.rules.use_diagonal_first_move_restriction ? "on" : "off") << '\n';
  os << "useful-vertex " << detail::useful_vertex_field(t.rules) << '\n';
  os << "ordering " << ordering_name(t.rules.move_ordering) << '\n';
  os << "max-moves " << to_string(t.policy) << '\n';
  os << "proven-bound " << t.proven_bound << '\n';
  os << "entries " << t.entries.size() << '\n';
  for (const auto& [state, p] : t.entries) os << state << ' ' << p.r << ' ' << p.c << '\n';
  os << "end\n";
}

inline StrategyTable read_strategy(std::istream& is) {
  StrategyTable t;
  int line_no = 0;
  std::string line;
  const auto next = [&]() -> std::istringstream {
    if (!std::getline(is, line)) throw StrategyFormatError(line_no + 1, "unexpected end of file");
    ++line_no;
    return std::istringstream(line);
  };
  const auto expect_key = [&](std::istringstream& ss, const std::string& key) {
    std::string k;
    if (!(ss >> k) || k != key) throw StrategyFormatError(line_no, "expected '" + key + "'");
  };
  const auto read_word = [&](std::istringstream& ss) {
    std::string w;
    if (!(ss >> w)) throw StrategyFormatError(line_no, "missing value");
    std::string rest;
    if (ss >> rest) throw StrategyFormatError(line_no, "trailing text '" + rest + "'");
    return w;
  };
  const auto read_int = [&](std::istringstream& ss) {
    const std::string w = read_word(ss);
    if (w.find_first_not_of("0123456789") != std::string::npos)
      throw StrategyFormatError(line_no, "expected a non-negative integer, got '" + w + "'");
    return std::stoi(w);
  };
  const auto read_flag = [&](std::istringstream& ss) {
    const std::string w = read_word(ss);
    if (w != "on" && w != "off") throw StrategyFormatError(line_no, "expected on|off");
    return w == "on";
  };

  try {
    {
      auto ss = next();
      expect_key(ss, "sqrgame-strategy");
      t.version = read_int(ss);
      if (t.version != StrategyTable::kFormatVersion)
        throw StrategyFormatError(line_no, "unsupported version " + std::to_string(t.version));
    }
    {
      auto ss = next();
      expect_key(ss, "n");
      t.n = read_int(ss);
      geometry(t.n);
    }
    {
      auto ss = next();
      expect_key(ss, "side");
      t.side = parse_player(read_word(ss));
    }
    {
      auto ss = next();
      expect_key(ss, "symmetry");
      t.rules.use_symmetry_restriction = read_flag(ss);
    }
    {
      auto ss = next();
      expect_key(ss, "diagonal");
      t.rules.use_diagonal_first_move_restriction = read_flag(ss);
    }
    {
      auto ss = next();
      expect_key(ss, "useful-vertex");
      const std::string w = read_word(ss);
      t.rules.useful_vertex_restriction_for.clear();
      if (w != "-") {
        std::istringstream items(w);
        std::string item;
        while (std::getline(items, item, ',')) {
          const auto colon = item.find(':');
          if (colon == std::string::npos || colon == 0)
            throw StrategyFormatError(line_no, "bad useful-vertex item '" + item + "'");
          t.rules.useful_vertex_restriction_for.insert(
              {std::stoi(item.substr(0, colon)), parse_player(item.substr(colon + 1))});
        }
      }
    }
    {
      auto ss = next();
      expect_key(ss, "ordering");
      t.rules.move_ordering = parse_ordering(read_word(ss));
    }
    {
      auto ss = next();
      expect_key(ss, "max-moves");
      t.policy = parse_max_moves_policy(read_word(ss));
    }
    {
      auto ss = next();
      expect_key(ss, "proven-bound");
      t.proven_bound = read_int(ss);
    }
    std::size_t count = 0;
    {
      auto ss = next();
      expect_key(ss, "entries");
      count = static_cast<std::size_t>(read_int(ss));
    }
    const std::size_t cells = static_cast<std::size_t>(t.n * t.n);
    for (std::size_t i = 0; i < count; ++i) {
      auto ss = next();
      std::string state;
      int r = -1, c = -1;
      if (!(ss >> state >> r >> c)) throw StrategyFormatError(line_no, "expected '<state> <r> <c>'");
      std::string rest;
      if (ss >> rest) throw StrategyFormatError(line_no, "trailing text '" + rest + "'");
      if (state.size() != cells || state.find_first_not_of("012") != std::string::npos)
        throw StrategyFormatError(line_no, "malformed state '" + state + "'");
      if (r < 0 || r >= t.n || c < 0 || c >= t.n)
        throw StrategyFormatError(line_no, "move outside the board");
      if (state[static_cast<std::size_t>(r * t.n + c)] != '0')
        throw StrategyFormatError(line_no, "move onto an occupied cell");
      if (!t.entries.emplace(state, Position{r, c}).second)
        throw StrategyFormatError(line_no, "duplicate state '" + state + "'");
    }
    {
      auto ss = next();
      expect_key(ss, "end");
    }
  } catch (const StrategyFormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw StrategyFormatError(line_no, e.what());
  }
  return t;
}

}  // namespace sqrgame
