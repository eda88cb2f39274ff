#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bdtsp/reductions.hpp"
#include "bdtsp/types.hpp"

namespace bdtsp {

enum class PredicateResult : std::uint8_t { false_, true_, indeterminate };

const char* to_string(PredicateResult p);

struct SearchStats {
  std::int64_t tree_nodes = 0;  // T
  int max_depth = 0;
  std::int64_t p_calls = 0;
  std::int64_t h_calls = 0;
  std::int64_t pruned_false = 0;
  std::int64_t accepted = 0;
  std::int64_t internal = 0;

  SearchStats& operator+=(const SearchStats& o);
  friend bool operator==(const SearchStats&, const SearchStats&) = default;
};

/// Tour of a reduced working graph: live edge ids and cost in working units.
struct WorkTour {
  std::vector<EdgeId> edges;
  Cost cost = 0;
};

inline constexpr std::int64_t kLemma1Cap = std::int64_t{1} << 20;

struct Lemma1Result {
  std::optional<WorkTour> tour;
  bool declined = false;  // too many 4-cycle components to enumerate
};

/// Cheapest completion of a snapshot whose U-components are all trivial or
/// 4-cycles: each 4-cycle contributes one of its two perfect matchings.
/// `bound` (working units) keeps only completions strictly below it.
Lemma1Result lemma1_finish(const ReducedInstance& r, std::optional<Cost> bound = std::nullopt);

struct Evaluation {
  PredicateResult result = PredicateResult::indeterminate;
  std::optional<WorkTour> completion;  // set when result is true
};

/// Predicate on an already reduced snapshot; threshold in instance units.
Evaluation evaluate(const ReducedInstance& r, std::optional<Cost> threshold);

PredicateResult predicate(const Instance& inst, const PartialAssignment& assignment,
                          std::optional<Cost> threshold = std::nullopt);

/// Branching edge (instance id) for an indeterminate snapshot.
EdgeId select_branch_edge(const ReducedInstance& r);

EdgeId heuristic(const Instance& inst, const PartialAssignment& assignment);

struct BacktrackOptions {
  bool full_tree = false;  // keep exploring after the first accepting node
};

struct BacktrackResult {
  std::optional<PartialAssignment> assignment;
  std::optional<Tour> tour;
  SearchStats stats;
};

/// Depth-first search over force/remove decisions, force child first.
/// Requires maximum degree <= 4.
BacktrackResult backtrack(const Instance& inst, std::optional<Cost> threshold = std::nullopt,
                          BacktrackOptions options = {});

struct OptimumResult {
  std::optional<Tour> tour;
  SearchStats stats;
  int runs = 0;
  std::optional<Cost> first_cost;  // L_Gamma of the unthresholded run
  std::vector<Cost> thresholds;    // thresholds of the runs after the first
};

/// Repetition bound 2 + ceil(log2(first_cost + 1)).
int repetition_bound(Cost first_cost);

/// Unthresholded run, then bisection on the threshold. With `cap` the first
/// run is thresholded at cap, so only tours cheaper than cap are reported.
OptimumResult binary_search_optimum(const Instance& inst, std::optional<Cost> cap = std::nullopt);

/// Sum over vertices of the largest incident edge cost.
Cost compute_upper_bound(const Instance& inst);

/// Expands a tour of a reduced snapshot to an instance tour; throws
/// InternalError if the expansion is not a valid tour of matching cost.
Tour expand_tour(const Instance& inst, const ReducedInstance& r, const WorkTour& t);

Tour reconstruct_tour(const Instance& inst, const PartialAssignment& accepting);

enum class SplitMode : std::uint8_t { exhaustive, sample };

struct SolveOptions {
  SplitMode split_mode = SplitMode::exhaustive;
  std::uint64_t seed = 1;
  std::optional<std::int64_t> sample_draws;  // default: three times the expected draws
};

struct SolveReport {
  std::optional<Tour> tour;
  SearchStats stats;  // summed over every backtrack run
  int backtrack_runs = 0;
  int max_runs_per_solve = 0;
  bool repetition_bound_held = true;
  std::int64_t sub_solves = 0;
  int split56 = 0;  // f: split vertices of degree 5 or 6
  int split7 = 0;   // k: split vertices of degree 7
  bool exact = true;
};

SolveReport solve(const Instance& inst, const SolveOptions& options = {});

/// Number of splitting combinations solve() enumerates in exhaustive mode.
std::int64_t split_combinations(const Instance& inst);

/// The degree-4 instance for combination `index` in [0, split_combinations).
/// Vertices of degree 5 or 6 take one of 10 splits; a degree-7 vertex takes
/// one of 35 (3,4) splits and its new degree-5 half one of 10 further splits.
Instance apply_split_combination(const Instance& inst, std::int64_t index);

}  // namespace bdtsp
