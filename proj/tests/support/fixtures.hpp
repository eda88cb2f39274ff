#pragma once

#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

#include "bdtsp/graph.hpp"
#include "bdtsp/reductions.hpp"
#include "bdtsp/types.hpp"

namespace bdtsp::testing {

using EdgeSpec = std::tuple<VertexId, VertexId, Cost>;

/// 0-based endpoints.
Instance make_instance(int n, const std::vector<EdgeSpec>& edges, int bound = 3,
                       std::vector<EdgeId> preforced = {});

Instance cycle(int n, Cost cost);

/// K4 with c12=1, c13=2, c14=4, c23=8, c24=16, c34=32.
Instance k4_powers();

/// The forcing example: vertices a..j of the branching figure embedded in a
/// cubic host on 12 vertices, with ab and ce preforced.
struct Fig2 {
  Instance inst;
  EdgeId ab, bc, bd, ce, ci, df, dg, hi, ij;
};
Fig2 fig2_host();

Instance random_instance(std::uint64_t seed, int n, int degree, Cost cost_max = 64,
                         int max_high = -1, double fill = 1.0);

/// Random forcing pattern: a share of the edges of some Hamiltonian cycle
/// (when one exists) plus, occasionally, a random extra edge.
std::vector<EdgeState> random_states(const Instance& inst, std::uint64_t seed,
                                     double tour_share = 0.4, double stray = 0.25);

/// Snapshot of `inst` with the given edge states and no rules applied.
ReducedInstance snapshot(const Instance& inst, const std::vector<EdgeState>& states);

/// Held-Karp optimum of the live graph honouring forced edges (working units).
std::optional<Cost> working_optimum(const WorkGraph& g);

/// Every Hamiltonian cycle of the live graph that uses all forced edges, as
/// sorted working edge ids. Plain enumeration; meant for at most ~10 vertices.
std::vector<std::vector<EdgeId>> all_tours(const WorkGraph& g);

/// Which boundary pairing a tour uses through X (0, 1, 2 as in
/// FourCutConstraint), given the cut edges in the order cut_edges returns.
int induced_pairing(const WorkGraph& g, const VertexSet& x, const std::vector<EdgeId>& cut,
                    const std::vector<EdgeId>& tour);

/// All vertex subsets X of the live graph (as sets) with 1 <= |X| <= kmax and
/// X != V. Exponential; only for small graphs.
std::vector<VertexSet> all_subsets(const WorkGraph& g, int kmax);

}  // namespace bdtsp::testing
