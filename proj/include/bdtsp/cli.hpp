#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bdtsp/reductions.hpp"
#include "bdtsp/solver.hpp"

namespace bdtsp::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kMismatch = 2,
  kResourceError = 3,
  kInternalError = 4,
};

struct SolveArgs {
  std::string path;
  bool oracle = false;
  std::optional<Cost> threshold;
  double delta = 1.0 / 3.0;
  SplitMode split_mode = SplitMode::exhaustive;
  std::uint64_t seed = 1;
  std::optional<int> degree;  // TSPLIB degree bound
  bool json = false;
};

struct ReduceArgs {
  std::string path;
  std::string assign;  // e.g. "3+,5-": 1-indexed edge, + force, - remove
  std::optional<int> degree;
  bool json = false;
};

struct EstimateArgs {
  std::string path;
  double delta = 1.0 / 3.0;
  std::optional<int> degree;
  bool json = false;
};

struct BenchArgs {
  int degree = 3;
  std::vector<int> sizes{10, 12, 14, 16};
  int count = 20;
  Cost cost_max = 64;
  std::uint64_t seed = 1;
  bool json = false;
};

struct VerifyArgs {
  int degree = 3;
  int n = 10;
  int count = 500;
  Cost cost_max = 64;
  std::uint64_t seed = 1;
  SplitMode split_mode = SplitMode::exhaustive;
  bool json = false;
};

struct GenArgs {
  int n = 10;
  int degree = 3;
  Cost cost_max = 64;
  std::uint64_t seed = 1;
  int max_high_degree = -1;
  double fill = 1.0;
};

/// "3+,5-" -> [(2, force), (4, remove)]; throws InputError on bad syntax.
PartialAssignment parse_assignment(const std::string& text);

/// Size of the full unthresholded backtracking tree; for degree > 4 the
/// first splitting combination is measured.
SearchStats measure_tree(const Instance& inst);

int cmd_solve(const SolveArgs& args, std::ostream& out);
int cmd_reduce(const ReduceArgs& args, std::ostream& out);
int cmd_estimate(const EstimateArgs& args, std::ostream& out);
int cmd_bench(const BenchArgs& args, std::ostream& out);
int cmd_verify(const VerifyArgs& args, std::ostream& out);
int cmd_gen(const GenArgs& args, std::ostream& out);

/// Runs a command, mapping exceptions to exit codes and messages on err.
template <class F>
int guarded(F&& f, std::ostream& err) {
  try {
    return f();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kResourceError;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace bdtsp::cli
