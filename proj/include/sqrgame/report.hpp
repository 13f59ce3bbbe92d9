#pragma once

// Search reports in two shapes: a human-readable block laid out like the
// original program's console output, and one key=value line per board size.

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqrgame/solver.hpp"

namespace sqrgame {

struct RunReportEntry {
  int n = 0;
  std::string outcome;  // win | draw | cancelled
  std::uint64_t moves_total = 0;
  std::uint64_t backtracks_p1 = 0;
  std::uint64_t backtracks_p2 = 0;
  std::int64_t elapsed_ms = 0;

  friend bool operator==(const RunReportEntry&, const RunReportEntry&) = default;
};

struct RunReportDocument {
  std::vector<RunReportEntry> entries;
  friend bool operator==(const RunReportDocument&, const RunReportDocument&) = default;
};

inline RunReportEntry make_entry(int n, const SearchReport& rep) {
  return {n,
          rep.completed ? outcome_name(rep.outcome) : "cancelled",
          rep.moves_total,
          rep.backtracks_p1,
          rep.backtracks_p2,
          rep.elapsed.count()};
}

inline void write_text_header(std::ostream& os) {
  os << "=== Checking solutions for the square achievement game problem ===\n\n"
     << "Hints:\n"
     << "  After each 100000 moves a + will be emitted.\n"
     << "  To cancel the execution press Ctrl-C .\n";
}

inline void write_text_start(std::ostream& os, int n) {
  os << "\nStarting search with n = " << n << "\n";
}

// Follows the '+' progress line, if any.
inline void write_text_result(std::ostream& os, const RunReportEntry& e) {
  if (e.outcome == "cancelled")
    os << "\nThe search has been cancelled.\n";
  else
    os << "\nThe search has been completed. Result: " << e.outcome << "\n";
  os << "Sum of moves: " << e.moves_total << ". N. of backtrack.: Player 1: " << e.backtracks_p1
     << ", Player 2: " << e.backtracks_p2 << "\n"
     << "(counter values are ordering-dependent; elapsed " << e.elapsed_ms << " ms)\n";
}

inline void write_text_footer(std::ostream& os) { os << "\n== Regular program stop ==\n"; }

inline void write_machine(std::ostream& os, const RunReportDocument& doc) {
  for (const auto& e : doc.entries)
    os << "n=" << e.n << " outcome=" << e.outcome << " moves_total=" << e.moves_total
       << " backtracks_p1=" << e.backtracks_p1 << " backtracks_p2=" << e.backtracks_p2
       << " elapsed_ms=" << e.elapsed_ms << "\n";
}

inline RunReportDocument read_machine(std::istream& is) {
  RunReportDocument doc;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    RunReportEntry e;
    int seen = 0;
    std::string field;
    while (ss >> field) {
      const auto eq = field.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("report line " + std::to_string(line_no) + ": bad field '" +
                                    field + "'");
      const std::string key = field.substr(0, eq), val = field.substr(eq + 1);
      try {
        if (key == "n") {
          e.n = std::stoi(val);
        } else if (key == "outcome") {
          e.outcome = val;
        } else if (key == "moves_total") {
          e.moves_total = std::stoull(val);
        } else if (key == "backtracks_p1") {
          e.backtracks_p1 = std::stoull(val);
        } else if (key == "backtracks_p2") {
          e.backtracks_p2 = std::stoull(val);
        } else if (key == "elapsed_ms") {
          e.elapsed_ms = std::stoll(val);
        } else {
          throw std::invalid_argument("unknown key");
        }
      } catch (const std::exception&) {
        throw std::invalid_argument("report line " + std::to_string(line_no) + ": bad field '" +
                                    field + "'");
      }
      ++seen;
    }
    if (seen != 6)
      throw std::invalid_argument("report line " + std::to_string(line_no) + ": expected 6 fields");
    doc.entries.push_back(e);
  }
  return doc;
}

}  // namespace sqrgame
