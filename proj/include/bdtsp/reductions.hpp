#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bdtsp/graph.hpp"
#include "bdtsp/types.hpp"
#include "bdtsp/vertex_set.hpp"

namespace bdtsp {

enum class Decision : std::uint8_t { force, remove };

const char* to_string(Decision d);

struct AssignmentStep {
  EdgeId edge = kNoEdge;  // original edge id
  Decision decision = Decision::force;
  friend bool operator==(const AssignmentStep&, const AssignmentStep&) = default;
};

/// Ordered (edge, decision) list; order is the order of assignment.
using PartialAssignment = std::vector<AssignmentStep>;

enum class EventKind : std::uint8_t {
  propagation,
  circuit_procedure,
  parallel_elimination,
  three_cut,
  four_cut,
  split,
  assignment,
};

const char* to_string(EventKind k);

/// One rule application together with every state change it caused.
struct ReductionEvent {
  EventKind kind = EventKind::propagation;
  std::vector<EdgeId> subject;   // edges the rule acted on
  std::vector<VertexId> vertices;
  std::optional<Decision> decision;
  std::vector<EdgeId> forced;    // edges that became forced, in order
  std::vector<EdgeId> deleted;   // edges that became deleted, in order
  int record = -1;               // index into contractions / constraints
  Cost scale_after = 0;          // cost scale once the event completed
  friend bool operator==(const ReductionEvent&, const ReductionEvent&) = default;
};

/// Pair index for boundary edges (i, j) of a 3-cut: (0,1) -> 0, (0,2) -> 1, (1,2) -> 2.
int pair_index(int i, int j);

/// Everything needed to undo a 3-cut contraction.
struct ThreeCutRecord {
  VertexId merged = kNoVertex;
  std::vector<VertexId> members;
  std::array<EdgeId, 3> cut{};
  std::array<VertexId, 3> inner{};
  std::array<Cost, 3> old_cost{};
  std::array<Cost, 3> alpha{};
  std::array<std::optional<Cost>, 3> path_cost;
  std::array<std::vector<EdgeId>, 3> path;  // interior edges of the best path per pair
  friend bool operator==(const ThreeCutRecord&, const ThreeCutRecord&) = default;
};

/// Pairings of the four boundary vertices of a 4-cut:
/// 0: (x1 x2 | x3 x4), 1: (x1 x3 | x2 x4), 2: (x1 x4 | x2 x3).
struct FourCutConstraint {
  VertexSet members;
  std::array<EdgeId, 4> cut{};
  std::array<bool, 3> infeasible{};
  friend bool operator==(const FourCutConstraint&, const FourCutConstraint&) = default;
};

struct FourCutResult {
  bool reducible = false;
  std::array<bool, 3> infeasible{};
};

/// Weights for contracting a 3-cut given the best boundary-pair path costs.
struct ThreeCutWeights {
  bool infeasible = false;
  bool needs_doubling = false;  // alphas are half-integral at the current scale
  std::array<Cost, 3> alpha{};
  std::array<bool, 3> force{};
  std::array<bool, 3> remove{};
};

ThreeCutWeights three_cut_weights(const std::array<std::optional<Cost>, 3>& path_cost);

/// Snapshot produced by the reduction function. Working cost of every edge
/// equals `scale` times its cost in the source instance, so tour costs can
/// be compared exactly across snapshots.
struct ReducedInstance {
  WorkGraph graph;
  std::vector<std::vector<EdgeId>> origins;  // working edge -> instance edges
  std::vector<ReductionEvent> trace;
  std::vector<ThreeCutRecord> contractions;
  std::vector<FourCutConstraint> constraints;
  Cost scale = 1;
  bool infeasible = false;
  std::string reason;

  int forced_count() const;
  friend bool operator==(const ReducedInstance&, const ReducedInstance&) = default;
};

ReducedInstance make_reduced(const Instance& inst);

// Individual rules. Each mutates the snapshot in place, appends its event to
// the trace and returns whether anything changed. Contradictions set
// `infeasible` instead of throwing.
bool propagate_forcing(ReducedInstance& r);
bool eliminate_parallel_edges(ReducedInstance& r);
void circuit_procedure(ReducedInstance& r, const Circuit& circuit, EdgeId seed, Decision decision);
bool three_cut_reduce(ReducedInstance& r, const VertexSet& x);

/// Feasibility of each boundary pairing of X. Requires cut(X) to be four
/// forced edges and |X| <= 8.
FourCutResult four_cut_reducible(const WorkGraph& g, const VertexSet& x);

bool parity_condition(const ReducedInstance& r);
bool four_cut_constraints_hold(const ReducedInstance& r);

/// Cheapest Hamiltonian s-t path through X over live edges that uses every
/// forced edge inside X. Returns interior edges and cost.
struct PathInX {
  Cost cost = 0;
  std::vector<EdgeId> edges;
};
std::optional<PathInX> min_constrained_path(const WorkGraph& g, const VertexSet& x, VertexId s,
                                            VertexId t);

/// Exhausts the rules (reducible circuits, parallel edges, 3/4-cuts on at
/// most eight vertices, forcing propagation). Returns whether anything changed.
bool apply_reduction_rules(ReducedInstance& r);

/// Applies one assignment step and runs the circuit procedure on the rest
/// of the circuit containing the edge.
void apply_assignment(ReducedInstance& r, AssignmentStep step);

/// Full replay: copy the graph, then for each step exhaust the rules, apply
/// the step and its circuit; finally exhaust the rules once more.
ReducedInstance reduce(const Instance& inst, const PartialAssignment& assignment);

/// reduce(inst, A + [step]) computed from reduce(inst, A).
ReducedInstance extend(const ReducedInstance& parent, AssignmentStep step);

/// Rebuilds the working graph from the instance by replaying only the
/// recorded effects of the trace.
WorkGraph replay_trace(const Instance& inst, const ReducedInstance& r);

/// Maps a tour of the working graph (edge ids) to instance edge ids by
/// undoing contractions in reverse order.
std::vector<EdgeId> expand_tour_edges(const ReducedInstance& r, std::vector<EdgeId> working_edges);

// Vertex splitting for degrees 5..7.

/// Side A / side B as positions into a vertex's incident-edge list.
struct SplitPartition {
  std::vector<int> side_a;
  std::vector<int> side_b;
};

/// Unordered partitions used to split a vertex: (2,3) for degree 5, (3,3)
/// for degree 6, (3,4) for degree 7.
std::vector<SplitPartition> enumerate_splits(int degree);

/// Number of partitions that put positions a and b on different sides.
int count_separating(int degree, int a, int b);

struct SplitChoice {
  VertexId vertex = kNoVertex;
  std::vector<EdgeId> side_a;  // stay on `vertex`
  std::vector<EdgeId> side_b;  // move to the new vertex
};

SplitChoice make_split_choice(const Instance& inst, VertexId v, const SplitPartition& p);

struct SplitResult {
  Instance instance;
  VertexId new_vertex = kNoVertex;
  EdgeId bridge = kNoEdge;
};

/// Moves side B to a fresh vertex joined to `vertex` by a zero-cost
/// preforced bridge.
SplitResult split_vertex(const Instance& inst, const SplitChoice& choice);

}  // namespace bdtsp
