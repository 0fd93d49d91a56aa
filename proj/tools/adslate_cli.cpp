// adslate: optimal ad slates under generalized second price.
//
//   adslate solve  <instance.json> [--mode bid|revenue|hybrid] [--engine dp|path|both]
//   adslate check  [fixture-dir] [--seed S] [--count N]
//   adslate bench  [--count 5000] [--positions 12] [--max-ads 77] [--seed S]
//   adslate colgen <problem.json> [--max-iters N] [--exact]

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "adslate/commands.hpp"

int main(int argc, char** argv) {
  using namespace adslate;
  CLI::App app{"Optimal sponsored-search ad slates"};
  app.require_subcommand(1);

  std::string mode_text = "revenue";
  std::string engine_text = "path";
  std::string mask_text;
  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one query instance");
  solve_cmd->add_option("instance", solve.instance, "Instance file")->required();
  solve_cmd->add_option("--mode", mode_text, "bid | revenue | hybrid");
  solve_cmd->add_option("--engine", engine_text, "dp | path | both");
  solve_cmd->add_option("--mask", mask_text, "Exclusion mask bitstring in rank order");
  solve_cmd->add_flag("--allow-empty", solve.allow_empty, "Permit the empty slate");
  solve_cmd->add_flag("--dump-network", solve.dump_network, "Print the arc list");
  solve_cmd->add_flag("--json", solve.json, "Machine-readable output");

  CheckArgs check;
  std::string fixture_dir;
  auto* check_cmd = app.add_subcommand("check", "Compare solvers against brute force");
  check_cmd->add_option("instance-dir", fixture_dir, "Directory of fixture files");
  check_cmd->add_option("--seed", check.seed, "Random instance seed");
  check_cmd->add_option("--count", check.random_instances, "Random instances");
  check_cmd->add_flag("--json", check.json, "Machine-readable output");

  BenchArgs bench;
  std::string bench_mode = "revenue";
  auto* bench_cmd = app.add_subcommand("bench", "Time slate construction");
  bench_cmd->add_option("--count", bench.count, "Queries to generate");
  bench_cmd->add_option("--positions", bench.positions, "Positions per slate");
  bench_cmd->add_option("--max-ads", bench.max_ads, "Maximum candidate ads per query");
  bench_cmd->add_option("--seed", bench.seed, "Workload seed");
  bench_cmd->add_option("--mode", bench_mode, "bid | revenue | hybrid");
  bench_cmd->add_flag("--json", bench.json, "Machine-readable output");

  ColGenArgs colgen;
  auto* colgen_cmd = app.add_subcommand("colgen", "Budget-constrained column generation");
  colgen_cmd->add_option("problem", colgen.problem, "Problem file")->required();
  colgen_cmd->add_option("--max-iters", colgen.max_iters, "Iteration cap");
  colgen_cmd->add_option("--tolerance", colgen.tolerance, "Reduced-cost threshold");
  colgen_cmd->add_flag("--exact", colgen.exact, "Also solve the fully enumerated LP");
  colgen_cmd->add_flag("--json", colgen.json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*solve_cmd) {
      solve.mode = ParseObjectiveMode(mode_text);
      solve.engine = ParseEngine(engine_text);
      if (!mask_text.empty()) solve.mask = mask_text;
      return CmdSolve(solve, std::cout, std::cerr);
    }
    if (*check_cmd) {
      if (!fixture_dir.empty()) check.fixture_dir = fixture_dir;
      return CmdCheck(check, std::cout, std::cerr);
    }
    if (*bench_cmd) {
      bench.mode = ParseObjectiveMode(bench_mode);
      return CmdBench(bench, std::cout, std::cerr);
    }
    if (*colgen_cmd) return CmdColGen(colgen, std::cout, std::cerr);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
