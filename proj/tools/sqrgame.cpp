// sqrgame: solve, extract and verify strategies, run the minimax oracle, play
// in the terminal, or serve games over HTTP.

#include <atomic>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sqrgame/board.hpp"
#include "sqrgame/engine.hpp"
#include "sqrgame/http.hpp"
#include "sqrgame/library.hpp"
#include "sqrgame/oracle.hpp"
#include "sqrgame/report.hpp"
#include "sqrgame/rules.hpp"
#include "sqrgame/solver.hpp"
#include "sqrgame/strategy.hpp"

namespace fs = std::filesystem;
using namespace sqrgame;

namespace {

std::atomic<bool> g_cancel{false};
httplib::Server* g_server = nullptr;

extern "C" void on_sigint(int) {
  g_cancel.store(true);
  if (g_server) g_server->stop();
}

struct RuleFlags {
  bool no_symmetry = false;
  bool no_diagonal = false;
  bool no_useful_vertex = false;
  std::string ordering;
  std::string max_moves;

  void add_to(CLI::App* cmd) {
    cmd->add_flag("--no-symmetry", no_symmetry, "Disable the column-symmetry restriction");
    cmd->add_flag("--no-diagonal", no_diagonal, "Disable the first/second-move diagonal restriction");
    cmd->add_flag("--no-useful-vertex", no_useful_vertex,
                  "Disable the useful-vertex restriction (n=4 P2, n=5 P1)");
    cmd->add_option("--ordering", ordering, "Candidate order: row-major | center-out")
        ->check(CLI::IsMember({"row-major", "center-out"}));
    cmd->add_option("--max-moves", max_moves, "Move limit: none | paper-n5 | fixed:<k> | <k>");
  }

  SearchConfig config(int n) const {
    SearchConfig cfg = default_config(n);
    cfg.rules.use_symmetry_restriction = !no_symmetry;
    cfg.rules.use_diagonal_first_move_restriction = !no_diagonal;
    if (no_useful_vertex) cfg.rules.useful_vertex_restriction_for.clear();
    if (!ordering.empty()) cfg.rules.move_ordering = parse_ordering(ordering);
    if (!max_moves.empty()) cfg.max_moves = parse_max_moves_policy(max_moves);
    return cfg;
  }
};

// Outcome the checked player is after: P2 holds the draw at n = 3, 4; P1
// wins at n = 5.
std::optional<Outcome> expected_outcome(int n) {
  if (n == 3 || n == 4) return Outcome::NoP1Win;
  if (n == 5) return Outcome::P1Win;
  return std::nullopt;
}

std::string line_string(const std::vector<Move>& line) {
  std::ostringstream os;
  for (std::size_t i = 0; i < line.size(); ++i)
    os << (i ? " " : "") << player_name(line[i].value) << "(" << line[i].pos.r << ","
       << line[i].pos.c << ")";
  return os.str();
}

std::shared_ptr<const StrategyTable> bundled_table(int n, CellValue side, const fs::path& dir) {
  const fs::path path = dir / strategy_file_name(n, side);
  if (!fs::exists(path)) return nullptr;
  return std::make_shared<const StrategyTable>(load_strategy_file(path));
}

int run_solve(const std::vector<int>& ns, const RuleFlags& flags, const std::string& report,
              const std::string& strategy_path, bool no_strategy) {
  const bool text = report == "text";
  RunReportDocument doc;
  bool all_ok = true;
  if (text) write_text_header(std::cout);
  for (int n : ns) {
    SearchConfig cfg = flags.config(n);
    std::shared_ptr<const StrategyTable> table;
    if (!no_strategy) {
      if (!strategy_path.empty()) {
        table = std::make_shared<const StrategyTable>(load_strategy_file(strategy_path));
        if (table->n != n) {
          std::cerr << "strategy file is for n = " << table->n << "\n";
          return 2;
        }
      } else if (auto exp = expected_outcome(n)) {
        table = bundled_table(n, *exp == Outcome::P1Win ? CellValue::P1 : CellValue::P2,
                              default_strategy_dir());
      }
    }
    cfg.fixed_strategy = table.get();
    cfg.cancel = &g_cancel;
    bool ticked = false;
    if (text) {
      write_text_start(std::cout, n);
      cfg.on_progress = [&ticked](std::uint64_t) {
        std::cout << '+' << std::flush;
        ticked = true;
      };
    }
    const SearchReport rep = solve(cfg);
    if (ticked) std::cout << '\n';
    const RunReportEntry entry = make_entry(n, rep);
    doc.entries.push_back(entry);
    if (text) write_text_result(std::cout, entry);
    const auto exp = expected_outcome(n);
    if (!rep.completed || (exp && rep.outcome != *exp)) all_ok = false;
    if (!rep.completed) break;
  }
  if (text)
    write_text_footer(std::cout);
  else
    write_machine(std::cout, doc);
  return all_ok ? 0 : 1;
}

int run_extract(int n, const std::string& side_name, const std::string& out,
                const RuleFlags& flags) {
  const CellValue side = parse_player(side_name);
  const SearchConfig cfg = flags.config(n);
  const StrategyTable table = extract_strategy(cfg, side);
  save_strategy_file(out, table);
  std::cout << "wrote " << table.entries.size() << " entries to " << out
            << " (proven bound " << table.proven_bound << ")\n";
  return 0;
}

int run_verify(const std::string& path) {
  StrategyTable table;
  try {
    table = load_strategy_file(path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  const VerificationReport rep = verify_strategy(table, config_for(table));
  std::cout << "result: " << result_name(rep.result) << "\n"
            << "states visited: " << rep.states_visited << "\n"
            << "max depth: " << rep.max_depth << "\n";
  if (!rep.passed()) {
    std::cout << "counterexample: " << line_string(rep.line) << "\n"
              << "reason: " << rep.reason << "\n";
    return 1;
  }
  return 0;
}

void render(std::ostream& os, const Grid& g) {
  const auto t1 = completing_cells(g, CellValue::P1);
  const auto t2 = completing_cells(g, CellValue::P2);
  os << "   ";
  for (int c = 0; c < g.n(); ++c) os << ' ' << c;
  os << '\n';
  for (int r = 0; r < g.n(); ++r) {
    os << ' ' << r << ' ';
    for (int c = 0; c < g.n(); ++c) {
      const CellValue v = g.at({r, c});
      os << ' ' << (v == CellValue::P1 ? 'O' : v == CellValue::P2 ? 'X' : '.');
    }
    os << '\n';
  }
  const auto list = [&os](const char* who, const std::vector<Position>& cells) {
    if (cells.empty()) return;
    os << "threats for " << who << ":";
    for (Position p : cells) os << " (" << p.r << "," << p.c << ")";
    os << '\n';
  };
  list("O", t1);
  list("X", t2);
}

int run_play(int n, const std::string& human_name, std::istream& in, std::ostream& os) {
  const CellValue human = parse_player(human_name);
  EngineProfile prof;
  prof.n = n;
  prof.engine_side = opponent(human);
  try {
    prof.table = bundled_table(n, prof.engine_side, default_strategy_dir());
  } catch (const std::exception& e) {
    std::cerr << "warning: " << e.what() << "\n";
  }
  prof.validate();
  os << "You play " << (human == CellValue::P1 ? "O (player 1)" : "X (player 2)") << ". "
     << (prof.table && is_guaranteed_side(n, prof.engine_side) ? "The engine plays a verified strategy."
                                                               : "The engine plays best-effort.")
     << "\nEnter moves as 'r c', 'q' to quit.\n";
  Grid g(n);
  while (std::holds_alternative<Ongoing>(game_status(g))) {
    if (g.to_move() == prof.engine_side) {
      const Position p = engine_move(g, prof);
      g.place(p, prof.engine_side);
      os << "engine plays " << p.r << " " << p.c << "\n";
      continue;
    }
    render(os, g);
    os << "> " << std::flush;
    std::string line;
    if (!std::getline(in, line) || line == "q") return 1;
    std::istringstream ss(line);
    Position p;
    if (!(ss >> p.r >> p.c) || !g.in_range(p) || !g.empty_at(g.index(p))) {
      os << "illegal move\n";
      continue;
    }
    g.place(p, human);
  }
  render(os, g);
  const GameStatus st = game_status(g);
  if (const auto* w = std::get_if<WonBy>(&st))
    os << (w->player == human ? "You win" : "Engine wins") << " with the square at (" << w->square.r
       << "," << w->square.c << ") of size " << w->square.d << "\n";
  else
    os << "Draw\n";
  return 0;
}

int run_serve(const std::string& host, int port, const std::string& snapshot,
              const std::string& static_dir) {
  StrategyLibrary lib = load_library(default_strategy_dir());
  for (auto [n, side] : {std::pair{3, CellValue::P2}, std::pair{4, CellValue::P2},
                         std::pair{5, CellValue::P1}})
    if (!lib.contains({n, side}))
      std::cerr << "warning: no strategy table for n=" << n << " " << player_name(side)
                << "; that engine will play best-effort\n";
  GameService service(std::move(lib));
  if (!snapshot.empty() && fs::exists(snapshot)) service.load_snapshot(snapshot);

  httplib::Server server;
  register_routes(server, service);
  if (!static_dir.empty()) server.set_mount_point("/", static_dir);
  if (!server.bind_to_port(host, port)) {
    std::cerr << "error: cannot bind " << host << ":" << port << "\n";
    return 1;
  }
  g_server = &server;
  std::cout << "listening on http://" << host << ":" << port << std::endl;
  server.listen_after_bind();
  g_server = nullptr;
  if (!snapshot.empty()) service.save_snapshot(snapshot);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Square achievement game solver and strategy engine"};
  app.require_subcommand(1);

  RuleFlags flags;
  std::vector<int> solve_ns;
  std::string report = "text", strategy_path;
  bool no_strategy = false;
  auto* solve_cmd = app.add_subcommand("solve", "Decide whether player 1 can force a square");
  solve_cmd->add_option("--n", solve_ns, "Board size(s)")->required()->check(CLI::Range(3, 8));
  solve_cmd->add_option("--report", report, "text | machine")
      ->check(CLI::IsMember({"text", "machine"}));
  solve_cmd->add_option("--strategy", strategy_path, "Strategy file fixing the checked player's moves");
  solve_cmd->add_flag("--no-strategy", no_strategy, "Search without any strategy table");
  flags.add_to(solve_cmd);

  int extract_n = 0;
  std::string side_name, out_path;
  RuleFlags extract_flags;
  auto* extract_cmd = app.add_subcommand("extract", "Derive a strategy table");
  extract_cmd->add_option("--n", extract_n, "Board size")->required()->check(CLI::Range(3, 8));
  extract_cmd->add_option("--side", side_name, "p1 | p2")
      ->required()
      ->check(CLI::IsMember({"p1", "p2"}));
  extract_cmd->add_option("--out", out_path, "Output file")->required();
  extract_flags.add_to(extract_cmd);

  std::string verify_path;
  auto* verify_cmd = app.add_subcommand("verify", "Exhaustively verify a strategy file");
  verify_cmd->add_option("--strategy", verify_path, "Strategy file")->required();

  int oracle_n = 0;
  auto* oracle_cmd = app.add_subcommand("oracle", "Unrestricted minimax game value");
  oracle_cmd->add_option("--n", oracle_n, "Board size")->required()->check(CLI::Range(2, 4));

  int play_n = 0;
  std::string human_name;
  auto* play_cmd = app.add_subcommand("play", "Play against the engine in the terminal");
  play_cmd->add_option("--n", play_n, "Board size")->required()->check(CLI::Range(3, 8));
  play_cmd->add_option("--human", human_name, "p1 | p2")
      ->required()
      ->check(CLI::IsMember({"p1", "p2"}));

  int port = 8080;
  std::string host = "127.0.0.1", snapshot, static_dir;
  auto* serve_cmd = app.add_subcommand("serve", "Serve games over HTTP");
  serve_cmd->add_option("--port", port, "TCP port")->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--host", host, "Bind address");
  serve_cmd->add_option("--snapshot", snapshot, "Session snapshot file (loaded and saved)");
  serve_cmd->add_option("--static", static_dir, "Directory served at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::signal(SIGINT, on_sigint);
  try {
    if (*solve_cmd) return run_solve(solve_ns, flags, report, strategy_path, no_strategy);
    if (*extract_cmd) return run_extract(extract_n, side_name, out_path, extract_flags);
    if (*verify_cmd) return run_verify(verify_path);
    if (*oracle_cmd) {
      std::cout << value_name(oracle_minimax(oracle_n)) << "\n";
      return 0;
    }
    if (*play_cmd) return run_play(play_n, human_name, std::cin, std::cout);
    if (*serve_cmd) return run_serve(host, port, snapshot, static_dir);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
