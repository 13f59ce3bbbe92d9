// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "sqrgame/library.hpp"
#include "sqrgame/oracle.hpp"
#include "sqrgame/strategy.hpp"
#include "support.hpp"

using namespace sqrgame;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void check(const std::string& name, const std::function<std::string(bool&)>& body) {
  const auto start = Clock::now();
  bool ok = false;
  std::string detail;
  try {
    detail = body(ok);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (!ok) ++failures;
  std::printf("%s  %-58s %8.2fs  %s\n", ok ? "PASS" : "FAIL", name.c_str(), secs, detail.c_str());
  std::fflush(stdout);
}

struct CliRun {
  int status = -1;
  std::string out;
  double seconds = 0;
};

CliRun run_cli(const std::string& args) {
  CliRun r;
  const std::string cmd = std::string(SQRGAME_CLI_PATH) + " " + args + " 2>&1";
  const auto start = Clock::now();
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int raw = pclose(pipe);
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string field(const std::string& line, const std::string& key) {
  const auto at = line.find(key + "=");
  if (at == std::string::npos) return "";
  const auto from = at + key.size() + 1;
  return line.substr(from, line.find(' ', from) - from);
}

void cli_solve(int n, const std::string& want, double limit_s) {
  std::ostringstream name;
  name << "solve --n " << n << " reports " << want << " in < " << limit_s << " s";
  check(name.str(), [&](bool& ok) {
    const CliRun r = run_cli("solve --n " + std::to_string(n) + " --report machine");
    const std::string outcome = field(r.out, "outcome");
    ok = r.status == 0 && outcome == want && r.seconds < limit_s;
    std::ostringstream d;
    d << "outcome=" << outcome << " exit=" << r.status << " wall=" << r.seconds << "s";
    return d.str();
  });
}

StrategyTable bundled(int n, CellValue side) {
  return load_strategy_file(default_strategy_dir() / strategy_file_name(n, side));
}

std::string counters(const SearchReport& r) {
  std::ostringstream d;
  d << "moves=" << r.moves_total << " bt_p1=" << r.backtracks_p1 << " bt_p2=" << r.backtracks_p2;
  return d.str();
}

}  // namespace

int main() {
  cli_solve(3, "draw", 1.0);
  cli_solve(4, "draw", 60.0);
  cli_solve(5, "win", 60.0);

  const StrategyTable t3 = bundled(3, CellValue::P2);
  const StrategyTable t4 = bundled(4, CellValue::P2);
  const StrategyTable t5 = bundled(5, CellValue::P1);

  check("table player never backtracks (n=3,4 p2; n=5 p1)", [&](bool& ok) {
    const SearchReport a = solve(default_config(3, &t3));
    const SearchReport b = solve(default_config(4, &t4));
    const SearchReport c = solve(default_config(5, &t5));
    ok = a.backtracks_p2 == 0 && b.backtracks_p2 == 0 && c.backtracks_p1 == 0 &&
         a.outcome == Outcome::NoP1Win && b.outcome == Outcome::NoP1Win && c.outcome == Outcome::P1Win;
    return "n3 " + counters(a) + "; n4 " + counters(b) + "; n5 " + counters(c);
  });

  check("counters identical across repeated runs", [&](bool& ok) {
    ok = true;
    for (int n : {3, 4}) {
      const SearchReport a = solve(default_config(n)), b = solve(default_config(n));
      ok = ok && a.moves_total == b.moves_total && a.backtracks_p1 == b.backtracks_p1 &&
           a.backtracks_p2 == b.backtracks_p2;
    }
    const SearchReport a = solve(default_config(5, &t5)), b = solve(default_config(5, &t5));
    ok = ok && a.moves_total == b.moves_total && a.backtracks_p1 == b.backtracks_p1 &&
         a.backtracks_p2 == b.backtracks_p2;
    return "n5 " + counters(a);
  });

  check("oracle_minimax(3) is draw", [&](bool& ok) {
    ok = oracle_minimax(3) == GameValue::Draw;
    return value_name(oracle_minimax(3));
  });

  check("oracle_minimax(3) agrees with solve(3)", [&](bool& ok) {
    const bool oracle_draw = oracle_minimax(3) == GameValue::Draw;
    const bool solver_draw = solve(default_config(3)).outcome == Outcome::NoP1Win;
    ok = oracle_draw == solver_draw;
    return std::string("solver=") + (solver_draw ? "draw" : "win");
  });

  check("solve(3) stays draw with each restriction off", [&](bool& ok) {
    std::string d;
    ok = true;
    for (int which = 0; which < 3; ++which) {
      SearchConfig cfg = default_config(3);
      if (which == 0) cfg.rules.use_symmetry_restriction = false;
      if (which == 1) cfg.rules.use_diagonal_first_move_restriction = false;
      if (which == 2) cfg.rules.useful_vertex_restriction_for.clear();
      const Outcome o = solve(cfg).outcome;
      ok = ok && o == Outcome::NoP1Win;
      d += (which ? " " : "") + outcome_name(o);
    }
    return d;
  });

  const auto verify_case = [&](const std::string& name, const StrategyTable& t,
                               VerificationReport::Result want) {
    check(name, [&](bool& ok) {
      const auto start = Clock::now();
      const VerificationReport rep = verify_strategy(t, config_for(t));
      const double secs = std::chrono::duration<double>(Clock::now() - start).count();
      ok = rep.result == want && secs < 60.0;
      if (want == VerificationReport::Result::AllLinesWin)
        ok = ok && rep.latest_square <= t.proven_bound;
      std::ostringstream d;
      d << result_name(rep.result) << " states=" << rep.states_visited;
      if (t.side == CellValue::P1) d << " latest_square=" << rep.latest_square << " bound=" << t.proven_bound;
      if (!rep.passed()) d << " reason=" << rep.reason;
      return d.str();
    });
  };
  verify_case("verify n=3 p2 table: all-lines-non-loss", t3, VerificationReport::Result::AllLinesNonLoss);
  verify_case("verify n=4 p2 table: all-lines-non-loss", t4, VerificationReport::Result::AllLinesNonLoss);
  verify_case("verify n=5 p1 table: all-lines-win within bound", t5, VerificationReport::Result::AllLinesWin);

  check("invariant: incremental counts (1000 random sequences)", [&](bool& ok) {
    std::mt19937 rng(1);
    ok = true;
    int sequences = 0;
    for (; sequences < 1000 && ok; ++sequences) {
      const int n = 3 + sequences % 4;
      Grid g(n);
      while (!g.full() && ok) {
        std::vector<int> empty;
        for (int i = 0; i < n * n; ++i)
          if (g.empty_at(i)) empty.push_back(i);
        g.place(g.position(empty[rng() % empty.size()]), g.to_move());
        if (rng() % 4 == 0) g.undo_last();
        for (int s = 0; s < g.square_count() && ok; ++s)
          for (CellValue v : {CellValue::P1, CellValue::P2})
            ok = ok && g.count(s, v) == testing::recount(g, g.geo().squares[s], v);
      }
    }
    return std::to_string(sequences) + " sequences";
  });

  check("invariant: symmetry equivariance (8 transforms)", [&](bool& ok) {
    std::mt19937 rng(2);
    ok = true;
    for (int trial = 0; trial < 500 && ok; ++trial) {
      const int n = 3 + trial % 3;
      const Grid g = testing::random_grid(n, static_cast<int>(rng() % (n * n)), rng);
      for (Transform t : kAllTransforms) {
        const Grid h = transform(g, t);
        for (CellValue v : {CellValue::P1, CellValue::P2}) {
          const auto a = completed_square(g, v), b = completed_square(h, v);
          ok = ok && a.has_value() == b.has_value();
          std::set<Position> mapped;
          for (Position p : completing_cells(g, v)) mapped.insert(apply(t, p, n));
          ok = ok && mapped == testing::as_set(completing_cells(h, v));
        }
      }
    }
    return "500 states";
  });

  check("invariant: canonical form orbit invariance", [&](bool& ok) {
    std::mt19937 rng(3);
    ok = true;
    for (int trial = 0; trial < 500 && ok; ++trial) {
      const int n = 3 + trial % 3;
      const Grid g = testing::random_grid(n, static_cast<int>(rng() % (n * n)), rng);
      const std::string c = canonical_form(g).encoding;
      for (Transform t : kAllTransforms) ok = ok && canonical_form(transform(g, t)).encoding == c;
    }
    return "500 states";
  });

  check("invariant: forced-status pipeline order", [&](bool& ok) {
    std::mt19937 rng(4);
    ok = true;
    for (int trial = 0; trial < 3000 && ok; ++trial) {
      const int n = 3 + trial % 3;
      const Grid g = testing::random_grid(n, static_cast<int>(rng() % (n * n)), rng);
      if (testing::owns_square(g, CellValue::P1) || testing::owns_square(g, CellValue::P2)) continue;
      const CellValue v = g.to_move();
      const auto own = testing::brute_completing(g, v), theirs = testing::brute_completing(g, opponent(v));
      const ForcedStatus st = forced_status(g, v);
      if (!own.empty())
        ok = st == ForcedStatus{InstantWin{*own.begin()}};
      else if (theirs.size() >= 2)
        ok = std::holds_alternative<InstantLoss>(st);
      else if (theirs.size() == 1)
        ok = st == ForcedStatus{ForcedBlock{*theirs.begin()}};
      else
        ok = std::holds_alternative<DilemmaWin>(st) || std::holds_alternative<Free>(st);
    }
    return "3000 states";
  });

  check("invariant: dilemma shortcuts sound vs n=3 oracle", [&](bool& ok) {
    Oracle oracle(3);
    ok = true;
    int checked = 0;
    testing::for_each_legal_state(3, [&](Grid& g) {
      const CellValue mover = g.to_move();
      const ForcedStatus st = forced_status(g, mover);
      const GameValue win = mover == CellValue::P1 ? GameValue::P1Win : GameValue::P2Win;
      const GameValue loss = mover == CellValue::P1 ? GameValue::P2Win : GameValue::P1Win;
      if (std::holds_alternative<DilemmaWin>(st)) {
        ++checked;
        ok = ok && oracle.value(g) == win;
      } else if (std::holds_alternative<InstantLoss>(st)) {
        ++checked;
        ok = ok && oracle.value(g) == loss;
      }
    });
    return std::to_string(checked) + " dilemma states";
  });

  check("invariant: undo is an exact inverse", [&](bool& ok) {
    std::mt19937 rng(6);
    ok = true;
    for (int trial = 0; trial < 500 && ok; ++trial) {
      const int n = 3 + trial % 4;
      Grid g = testing::random_grid(n, static_cast<int>(rng() % (n * n)), rng);
      const Grid before = g;
      for (int i = 0; i < n * n && ok; ++i) {
        if (!g.empty_at(i)) continue;
        g.place(g.position(i), g.to_move());
        g.undo_last();
        ok = g == before;
      }
    }
    return "500 states";
  });

  check("strategy file round trip: extract, write, load, verify", [&](bool& ok) {
    const StrategyTable t = extract_strategy(default_config(3), CellValue::P2);
    std::stringstream ss;
    write_strategy(ss, t);
    const StrategyTable back = read_strategy(ss);
    const VerificationReport a = verify_strategy(t, config_for(t));
    const VerificationReport b = verify_strategy(back, config_for(back));
    ok = back == t && a.result == b.result && a.passed();
    return result_name(a.result) + " / " + result_name(b.result);
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
