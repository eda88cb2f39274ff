#include "bdtsp/generator.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace bdtsp {

Instance gen_random(int n, int degree_bound, Cost cost_max, std::uint64_t seed,
                    GenOptions options) {
  if (n < 3) throw InputError("generator needs n >= 3");
  if (degree_bound < 3 || degree_bound > 7) throw InputError("degree bound must be in 3..7");
  if (cost_max < 1) throw InputError("cost_max must be at least 1");
  if (options.fill < 0 || options.fill > 1) throw InputError("fill must lie in [0, 1]");

  std::mt19937_64 rng(seed);
  std::vector<VertexId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<int> cap(static_cast<std::size_t>(n), degree_bound);
  if (options.max_high_degree >= 0 && degree_bound > 4) {
    std::fill(cap.begin(), cap.end(), 4);
    for (int i = 0; i < std::min(options.max_high_degree, n); ++i)
      cap[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = degree_bound;
    std::shuffle(order.begin(), order.end(), rng);
  }

  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  std::set<std::pair<VertexId, VertexId>> present;
  std::vector<Edge> edges;
  std::uniform_int_distribution<Cost> cost(1, cost_max);
  auto add = [&](VertexId a, VertexId b) {
    ++deg[static_cast<std::size_t>(a)];
    ++deg[static_cast<std::size_t>(b)];
    present.insert({std::min(a, b), std::max(a, b)});
    edges.push_back({kNoEdge, a, b, 0});
  };

  for (int i = 1; i < n; ++i) {
    std::vector<VertexId> open;
    for (int j = 0; j < i; ++j) {
      const VertexId w = order[static_cast<std::size_t>(j)];
      if (deg[static_cast<std::size_t>(w)] < cap[static_cast<std::size_t>(w)]) open.push_back(w);
    }
    std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
    add(order[static_cast<std::size_t>(i)], open[pick(rng)]);
  }

  std::vector<std::pair<VertexId, VertexId>> candidates;
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b)
      if (!present.count({a, b})) candidates.emplace_back(a, b);
  std::shuffle(candidates.begin(), candidates.end(), rng);
  std::bernoulli_distribution keep(options.fill);
  for (auto [a, b] : candidates) {
    if (!keep(rng)) continue;
    if (deg[static_cast<std::size_t>(a)] < cap[static_cast<std::size_t>(a)] &&
        deg[static_cast<std::size_t>(b)] < cap[static_cast<std::size_t>(b)])
      add(a, b);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    return std::pair(std::min(x.u, x.v), std::max(x.u, x.v)) <
           std::pair(std::min(y.u, y.v), std::max(y.u, y.v));
  });
  for (auto& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
    e.cost = cost(rng);
  }
  return Instance(n, std::move(edges), degree_bound);
}

}  // namespace bdtsp
