#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "m2vpi/bounds.hpp"
#include "m2vpi/graph.hpp"

namespace m2vpi::cli {

/// Exit codes of every subcommand.
inline constexpr int kExitFeasible = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;

/// One benchmark or solve run. `param` is h for the trade-off solver and d
/// for the APSP driver, empty otherwise. `baseline_ms` is the naive oracle's
/// time on APSP rows, negative when not measured.
struct RunReport {
  std::string instance;
  std::string algo;
  std::uint64_t seed = 0;
  std::string param;
  std::string outcome;
  double wall_ms = 0;
  std::uint64_t edge_relaxations = 0;
  std::uint64_t locate_calls = 0;
  std::uint64_t kcycle_calls = 0;
  std::int64_t peak_cells = 0;
  double baseline_ms = -1;
};

/// Versioned header comment plus the column line.
std::string csv_header();
std::string csv_row(const RunReport& r);

/// `x <v> <value>` per vertex, 1-indexed, values as p/q, integer or inf.
std::string format_solution(const BoundVector& x);

struct SolveRequest {
  std::string algo = "simple";  ///< simple | tradeoff
  std::optional<std::size_t> h;  ///< trade-off parameter; default ceil(sqrt(n))
  std::uint64_t seed = 1;
};

struct CommandResult {
  int exit_code = kExitFeasible;
  std::string output;
  RunReport report;
};

/// Solves and re-verifies: x^max through verify_solution, certificates
/// through verify_certificate. A failed re-check is an error.
CommandResult run_solve(const Graph& g, const SolveRequest& req, const std::string& instance_id = "input");

/// Parses `text` first; parse errors give kExitError with the line cited.
CommandResult run_solve_text(const std::string& text, const SolveRequest& req);

/// Deterministic instance text for a generator kind.
std::string run_gen(const std::string& kind, std::size_t n, std::size_t m, std::uint64_t seed);

struct DapspRequest {
  Rational gamma{1, 2};
  std::optional<std::size_t> d;
  bool use_float = false;
  bool check = false;
};

/// Edge gains of `g` are ignored; `gamma` applies to every edge. Output is
/// the n x n matrix as CSV rows. With `check`, a trailing comment line
/// reports the diff against the naive oracle; any mismatch is kExitError.
CommandResult run_dapsp(const Graph& g, const DapspRequest& req);

/// Suite lines (text after '#' ignored):
///   solve <kind> <n> <m> <seed> <simple|tradeoff> [h]
///   dapsp <n> <m> <seed> <gamma> <d|auto> <exact|float>
/// Cells run in file order; one CSV row each.
std::string run_bench(std::istream& suite);

}  // namespace m2vpi::cli
