#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "bdtsp/cli.hpp"

using namespace bdtsp;
using namespace bdtsp::cli;

int main(int argc, char** argv) {
  CLI::App app{"Exact TSP on bounded-degree graphs by backtracking with reductions"};
  app.require_subcommand(1);
  const std::map<std::string, SplitMode> modes{{"exhaustive", SplitMode::exhaustive},
                                               {"sample", SplitMode::sample}};

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "find an optimal tour (or one below --threshold)");
  solve->add_option("file", solve_args.path, "instance file")->required();
  solve->add_flag("--oracle", solve_args.oracle, "cross-check with Held-Karp");
  solve->add_option("--threshold", solve_args.threshold, "report a tour of cost < T");
  solve->add_option("--delta", solve_args.delta, "total failure probability")->check(CLI::Range(1e-12, 0.999999));
  solve->add_option("--split-mode", solve_args.split_mode, "exhaustive or sample")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  solve->add_option("--seed", solve_args.seed, "seed for sample mode");
  solve->add_option("--degree", solve_args.degree, "degree bound for TSPLIB input")->check(CLI::Range(3, 7));
  solve->add_flag("--json", solve_args.json, "also print JSON");

  ReduceArgs reduce_args;
  auto* reduce = app.add_subcommand("reduce", "apply a partial assignment and print the reduction trace");
  reduce->add_option("file", reduce_args.path, "instance file")->required();
  reduce->add_option("--assign", reduce_args.assign, "e.g. 3+,5- (1-indexed edges)");
  reduce->add_option("--degree", reduce_args.degree, "degree bound for TSPLIB input")->check(CLI::Range(3, 7));
  reduce->add_flag("--json", reduce_args.json, "also print JSON");

  EstimateArgs estimate_args;
  auto* estimate = app.add_subcommand("estimate", "quantum query estimate from the measured tree");
  estimate->add_option("file", estimate_args.path, "instance file")->required();
  estimate->add_option("--delta", estimate_args.delta, "total failure probability")
      ->check(CLI::Range(1e-12, 0.999999));
  estimate->add_option("--degree", estimate_args.degree, "degree bound for TSPLIB input")->check(CLI::Range(3, 7));
  estimate->add_flag("--json", estimate_args.json, "also print JSON");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "tree size growth on random instances");
  bench->add_option("--degree", bench_args.degree)->check(CLI::Range(3, 7));
  bench->add_option("--sizes", bench_args.sizes)->delimiter(',')->check(CLI::Range(3, 64));
  bench->add_option("--count", bench_args.count);
  bench->add_option("--cost-max", bench_args.cost_max)->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_args.seed);
  bench->add_flag("--json", bench_args.json);

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "compare the solver with Held-Karp on random instances");
  verify->add_option("--degree", verify_args.degree)->check(CLI::Range(3, 7));
  verify->add_option("--n", verify_args.n)->check(CLI::Range(3, 20));
  verify->add_option("--count", verify_args.count);
  verify->add_option("--cost-max", verify_args.cost_max)->check(CLI::PositiveNumber);
  verify->add_option("--seed", verify_args.seed);
  verify->add_option("--split-mode", verify_args.split_mode)
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  verify->add_flag("--json", verify_args.json);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "print a random instance");
  gen->add_option("--n", gen_args.n)->check(CLI::Range(3, 100000));
  gen->add_option("--degree", gen_args.degree)->check(CLI::Range(3, 7));
  gen->add_option("--cost-max", gen_args.cost_max)->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_args.seed);
  gen->add_option("--max-high", gen_args.max_high_degree, "vertices allowed above degree 4");
  gen->add_option("--fill", gen_args.fill)->check(CLI::Range(0.0, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  auto run = [&]() -> int {
    if (*solve) return cmd_solve(solve_args, std::cout);
    if (*reduce) return cmd_reduce(reduce_args, std::cout);
    if (*estimate) return cmd_estimate(estimate_args, std::cout);
    if (*bench) return cmd_bench(bench_args, std::cout);
    if (*verify) return cmd_verify(verify_args, std::cout);
    return cmd_gen(gen_args, std::cout);
  };
  try {
    return guarded(run, std::cerr);
  } catch (const std::bad_alloc&) {
    std::cerr << "resource limit: out of memory\n";
    return kResourceError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}
