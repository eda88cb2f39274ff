#include "fixtures.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "bdtsp/generator.hpp"
#include "bdtsp/oracle.hpp"

namespace bdtsp::testing {

Instance make_instance(int n, const std::vector<EdgeSpec>& edges, int bound,
                       std::vector<EdgeId> preforced) {
  std::vector<Edge> es;
  for (const auto& [u, v, c] : edges) es.push_back({kNoEdge, u, v, c});
  return Instance(n, std::move(es), bound, 2, std::move(preforced));
}

Instance cycle(int n, Cost cost) {
  std::vector<EdgeSpec> es;
  for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n, cost);
  return make_instance(n, es);
}

Instance k4_powers() {
  return make_instance(4, {{0, 1, 1}, {0, 2, 2}, {0, 3, 4}, {1, 2, 8}, {1, 3, 16}, {2, 3, 32}});
}

Fig2 fig2_host() {
  enum : VertexId { a, b, c, d, e, f, g, h, i, j, k, l };
  const std::vector<EdgeSpec> es{
      {a, b, 3}, {b, c, 2}, {b, d, 4}, {c, e, 5}, {c, i, 1}, {d, f, 6},  {d, g, 2},
      {h, i, 3}, {i, j, 7}, {a, h, 2}, {a, k, 5}, {e, f, 1}, {e, l, 4}, {f, k, 3},
      {g, j, 2}, {g, l, 6}, {h, k, 4}, {j, l, 1}};
  Fig2 fx{make_instance(12, es, 3, {0, 3}), 0, 1, 2, 3, 4, 5, 6, 7, 8};
  return fx;
}

Instance random_instance(std::uint64_t seed, int n, int degree, Cost cost_max, int max_high,
                         double fill) {
  return gen_random(n, degree, cost_max, seed, {max_high, fill});
}

std::vector<EdgeState> random_states(const Instance& inst, std::uint64_t seed, double tour_share,
                                     double stray) {
  std::mt19937_64 rng(seed);
  std::vector<EdgeState> states(static_cast<std::size_t>(inst.m()), EdgeState::unforced);
  for (EdgeId e : inst.preforced()) states[static_cast<std::size_t>(e)] = EdgeState::forced;
  std::bernoulli_distribution take(tour_share);
  if (const auto t = oracle::optimal_tour(inst))
    for (EdgeId e : t->edges)
      if (take(rng)) states[static_cast<std::size_t>(e)] = EdgeState::forced;
  if (std::bernoulli_distribution(stray)(rng) && inst.m() > 0) {
    std::uniform_int_distribution<EdgeId> pick(0, inst.m() - 1);
    const EdgeId e = pick(rng);
    if (!inst.is_preforced(e))
      states[static_cast<std::size_t>(e)] =
          std::bernoulli_distribution(0.5)(rng) ? EdgeState::forced : EdgeState::deleted;
  }
  return states;
}

ReducedInstance snapshot(const Instance& inst, const std::vector<EdgeState>& states) {
  ReducedInstance r = make_reduced(inst);
  for (EdgeId e = 0; e < inst.m(); ++e) r.graph.set_state(e, states[static_cast<std::size_t>(e)]);
  return r;
}

std::optional<Cost> working_optimum(const WorkGraph& g) {
  const auto sol = oracle::held_karp(oracle::from_graph(g));
  if (!sol) return std::nullopt;
  return sol->cost;
}

std::vector<std::vector<EdgeId>> all_tours(const WorkGraph& g) {
  const auto live = g.live_vertices().to_vector();
  std::set<std::vector<EdgeId>> found;
  const auto edges = g.live_edges();
  std::vector<EdgeId> forced;
  for (EdgeId e : edges)
    if (g.state(e) == EdgeState::forced) forced.push_back(e);
  auto accept = [&](std::vector<EdgeId> t) {
    std::sort(t.begin(), t.end());
    for (EdgeId f : forced)
      if (!std::binary_search(t.begin(), t.end(), f)) return;
    found.insert(std::move(t));
  };
  if (live.size() < 2) return {};
  if (live.size() == 2) {
    for (std::size_t i = 0; i < edges.size(); ++i)
      for (std::size_t k = i + 1; k < edges.size(); ++k) accept({edges[i], edges[k]});
    return {found.begin(), found.end()};
  }
  const VertexId start = live.front();
  VertexSet seen;
  seen.insert(start);
  std::vector<EdgeId> path;
  std::function<void(VertexId)> dfs = [&](VertexId v) {
    for (EdgeId e : g.incident(v)) {
      if (!g.live(e)) continue;
      const VertexId w = g.edge(e).other(v);
      if (w == start && path.size() + 1 == live.size()) {
        path.push_back(e);
        accept(path);
        path.pop_back();
        continue;
      }
      if (seen.contains(w)) continue;
      seen.insert(w);
      path.push_back(e);
      dfs(w);
      path.pop_back();
      seen.erase(w);
    }
  };
  dfs(start);
  return {found.begin(), found.end()};
}

int induced_pairing(const WorkGraph& g, const VertexSet& x, const std::vector<EdgeId>& cut,
                    const std::vector<EdgeId>& tour) {
  auto in_tour = [&](EdgeId e) { return std::binary_search(tour.begin(), tour.end(), e); };
  auto position = [&](EdgeId e) {
    return static_cast<int>(std::find(cut.begin(), cut.end(), e) - cut.begin());
  };
  auto inner = [&](EdgeId e) { return x.contains(g.edge(e).u) ? g.edge(e).u : g.edge(e).v; };
  EdgeId came = cut[0];
  VertexId v = inner(came);
  for (int guard = 0; guard < 64; ++guard) {
    EdgeId next = kNoEdge;
    for (EdgeId e : g.incident(v))
      if (e != came && g.live(e) && in_tour(e)) next = e;
    if (next == kNoEdge) return -1;
    const int p = position(next);
    if (p < 4) return p - 1;
    came = next;
    v = g.edge(next).other(v);
  }
  return -1;
}

std::vector<VertexSet> all_subsets(const WorkGraph& g, int kmax) {
  const auto live = g.live_vertices().to_vector();
  const int n = static_cast<int>(live.size());
  std::vector<VertexSet> out;
  for (std::uint32_t mask = 1; mask + 1 < (std::uint32_t{1} << n); ++mask) {
    if (std::popcount(mask) > kmax) continue;
    VertexSet s;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) s.insert(live[static_cast<std::size_t>(i)]);
    out.push_back(s);
  }
  return out;
}

}  // namespace bdtsp::testing
