// m2vpi: solve, generate, benchmark and discounted APSP front end.
//
// Exit codes: 0 feasible (or success), 2 infeasible, 1 error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "m2vpi/cli.hpp"
#include "m2vpi/rational.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace m2vpi;
  CLI::App app{"Monotone two-variable-per-inequality systems and discounted shortest paths"};
  app.require_subcommand(1);

  std::string file, out_path;

  auto* solve = app.add_subcommand("solve", "solve an instance file; prints x-lines or a certificate block");
  solve->set_help_flag("--help", "print this help and exit");  // frees -h for the trade-off parameter
  cli::SolveRequest sreq;
  std::size_t h = 0;
  bool report = false;
  solve->add_option("file", file, "instance file")->required();
  solve->add_option("--algo", sreq.algo, "simple | tradeoff")->check(CLI::IsMember({"simple", "tradeoff"}));
  solve->add_option("--h", h, "trade-off parameter (default ceil(sqrt(n)))")->check(CLI::PositiveNumber);
  solve->add_option("--seed", sreq.seed, "random seed");
  solve->add_option("--out", out_path, "write the solution or certificate here");
  solve->add_flag("--report", report, "print a CSV run report on stderr");

  auto* gen = app.add_subcommand("gen", "write a generated instance");
  std::string kind;
  std::size_t n = 0, m = 0;
  std::uint64_t seed = 1;
  gen->add_option("kind", kind, "feasible-random | planted-long-cycle | infeasible-bicycle | dmdp-random | dapsp-random")
      ->required();
  gen->add_option("--n", n, "vertices")->required();
  gen->add_option("--m", m, "edges")->required();
  gen->add_option("--seed", seed, "random seed");
  gen->add_option("--out", out_path, "output file (default stdout)");

  auto* bench = app.add_subcommand("bench", "run a benchmark suite file and write CSV");
  bench->add_option("suite", file, "suite file")->required();
  bench->add_option("--out", out_path, "CSV file (default stdout)");

  auto* dapsp = app.add_subcommand("dapsp", "discounted all-pairs distances of an instance file as CSV");
  std::string gamma = "1/2", d = "auto";
  cli::DapspRequest dreq;
  dapsp->add_option("file", file, "instance file; edge gains are ignored")->required();
  dapsp->add_option("--gamma", gamma, "discount p/q in (0, 1)");
  dapsp->add_option("--d", d, "branching parameter, integer >= 2 or auto");
  dapsp->add_flag("--float", dreq.use_float, "double precision instead of exact rationals");
  dapsp->add_flag("--check", dreq.check, "diff against the naive oracle");
  dapsp->add_option("--out", out_path, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitError;
  }

  try {
    if (*solve) {
      if (h) sreq.h = h;
      Graph g = parse_instance_string(slurp(file));
      cli::CommandResult res = cli::run_solve(g, sreq, file);
      emit(res.output, out_path);
      if (report) std::cerr << cli::csv_header() << cli::csv_row(res.report);
      return res.exit_code;
    }
    if (*gen) {
      emit(cli::run_gen(kind, n, m, seed), out_path);
      return cli::kExitFeasible;
    }
    if (*bench) {
      std::ifstream in(file);
      if (!in) throw std::runtime_error("cannot open '" + file + "'");
      emit(cli::run_bench(in), out_path);
      return cli::kExitFeasible;
    }
    if (*dapsp) {
      dreq.gamma = parse_rational(gamma);
      if (d != "auto") dreq.d = std::stoul(d);
      Graph g = parse_instance_string(slurp(file));
      cli::CommandResult res = cli::run_dapsp(g, dreq);
      emit(res.output, out_path);
      return res.exit_code;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitError;
  }
  return cli::kExitError;
}
