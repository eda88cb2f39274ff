#include "bdtsp/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace bdtsp::oracle {

namespace {

// Best usable link per vertex pair plus forced-partner lists.
struct PairTable {
  int n = 0;
  std::vector<int> best;          // n*n, -1 if no link
  std::vector<int> forced_count;  // n*n
  std::vector<std::vector<VertexId>> partners;
  bool contradictory = false;

  explicit PairTable(const Problem& p)
      : n(p.n),
        best(static_cast<std::size_t>(p.n * p.n), -1),
        forced_count(static_cast<std::size_t>(p.n * p.n), 0),
        partners(static_cast<std::size_t>(p.n)) {
    for (int i = 0; i < static_cast<int>(p.links.size()); ++i) {
      const auto& l = p.links[static_cast<std::size_t>(i)];
      for (auto [a, b] : {std::pair(l.u, l.v), std::pair(l.v, l.u)}) {
        int& cur = best[idx(a, b)];
        const auto& old = cur < 0 ? l : p.links[static_cast<std::size_t>(cur)];
        const bool better = cur < 0 || (l.forced && !old.forced) ||
                            (l.forced == old.forced && l.cost < old.cost);
        if (better) cur = i;
        if (l.forced) ++forced_count[idx(a, b)];
      }
      if (l.forced) {
        partners[static_cast<std::size_t>(l.u)].push_back(l.v);
        partners[static_cast<std::size_t>(l.v)].push_back(l.u);
      }
    }
    for (const auto& pv : partners)
      if (pv.size() > 2) contradictory = true;
    if (n > 2)
      for (int c : forced_count)
        if (c > 1) contradictory = true;
  }

  std::size_t idx(VertexId a, VertexId b) const { return static_cast<std::size_t>(a * n + b); }
  int link(VertexId a, VertexId b) const { return best[idx(a, b)]; }
};

void check_problem(const Problem& p) {
  if (p.n < 2) throw InputError("tour problem needs at least two vertices");
  for (const auto& l : p.links)
    if (l.u < 0 || l.u >= p.n || l.v < 0 || l.v >= p.n || l.u == l.v)
      throw InputError("tour problem has a malformed link");
}

std::optional<Solution> two_vertex_tour(const Problem& p) {
  std::vector<int> forced, free;
  for (int i = 0; i < static_cast<int>(p.links.size()); ++i)
    (p.links[static_cast<std::size_t>(i)].forced ? forced : free).push_back(i);
  if (forced.size() > 2) return std::nullopt;
  std::sort(free.begin(), free.end(), [&](int a, int b) {
    return std::pair(p.links[static_cast<std::size_t>(a)].cost, a) <
           std::pair(p.links[static_cast<std::size_t>(b)].cost, b);
  });
  Solution s;
  s.order = {0, 1};
  s.links = forced;
  for (std::size_t i = 0; s.links.size() < 2 && i < free.size(); ++i) s.links.push_back(free[i]);
  if (s.links.size() < 2) return std::nullopt;
  for (int l : s.links) s.cost += p.links[static_cast<std::size_t>(l)].cost;
  return s;
}

Solution solution_from_order(const Problem& p, const PairTable& t, std::vector<VertexId> order) {
  Solution s;
  s.order = std::move(order);
  for (std::size_t i = 0; i < s.order.size(); ++i) {
    const int l = t.link(s.order[i], s.order[(i + 1) % s.order.size()]);
    s.links.push_back(l);
    s.cost += p.links[static_cast<std::size_t>(l)].cost;
  }
  return s;
}

}  // namespace

Problem from_instance(const Instance& inst) {
  Problem p;
  p.n = inst.n();
  for (const Edge& e : inst.edges()) {
    p.links.push_back({e.u, e.v, e.cost, inst.is_preforced(e.id)});
    p.source_ids.push_back(e.id);
  }
  return p;
}

Problem from_graph(const WorkGraph& g) {
  std::vector<VertexId> label(static_cast<std::size_t>(g.vertex_capacity()), kNoVertex);
  Problem p;
  for (VertexId v = 0; v < g.vertex_capacity(); ++v)
    if (g.alive(v)) label[static_cast<std::size_t>(v)] = p.n++;
  for (EdgeId e : g.live_edges()) {
    const auto& w = g.edge(e);
    p.links.push_back({label[static_cast<std::size_t>(w.u)], label[static_cast<std::size_t>(w.v)],
                       w.cost, w.state == EdgeState::forced});
    p.source_ids.push_back(e);
  }
  return p;
}

std::optional<Solution> held_karp(const Problem& p) {
  check_problem(p);
  if (p.n > kHeldKarpMaxN)
    throw ResourceError("Held-Karp limited to " + std::to_string(kHeldKarpMaxN) + " vertices");
  if (p.n == 2) return two_vertex_tour(p);
  const PairTable t(p);
  if (t.contradictory) return std::nullopt;

  const int bits = p.n - 1;  // vertex v >= 1 is bit v-1
  const std::size_t masks = std::size_t{1} << bits;
  const std::uint32_t full = static_cast<std::uint32_t>(masks - 1);
  std::vector<Cost> dp(masks * static_cast<std::size_t>(bits), 0);
  std::vector<std::int8_t> parent(masks * static_cast<std::size_t>(bits), -1);  // -1: absent
  auto at = [&](std::uint32_t mask, VertexId v) {
    return static_cast<std::size_t>(mask) * static_cast<std::size_t>(bits) +
           static_cast<std::size_t>(v - 1);
  };
  auto visited = [](std::uint32_t mask, VertexId x) {
    return x == 0 || ((mask >> (x - 1)) & 1u) != 0;
  };
  // Adding w after l keeps forced partners adjacent in the final cycle.
  auto allowed = [&](std::uint32_t mask, VertexId l, VertexId w) {
    const std::uint32_t next = mask | (1u << (w - 1));
    for (VertexId x : t.partners[static_cast<std::size_t>(w)])
      if (visited(mask, x) && x != l && !(x == 0 && next == full)) return false;
    if (l != 0)
      for (VertexId x : t.partners[static_cast<std::size_t>(l)])
        if (!visited(next, x)) return false;
    return true;
  };

  for (VertexId w = 1; w < p.n; ++w) {
    const int l = t.link(0, w);
    if (l < 0 || !allowed(0, 0, w)) continue;
    dp[at(1u << (w - 1), w)] = p.links[static_cast<std::size_t>(l)].cost;
    parent[at(1u << (w - 1), w)] = 0;
  }
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    for (VertexId l = 1; l < p.n; ++l) {
      if (!((mask >> (l - 1)) & 1u) || parent[at(mask, l)] < 0) continue;
      const Cost base = dp[at(mask, l)];
      for (VertexId w = 1; w < p.n; ++w) {
        if ((mask >> (w - 1)) & 1u) continue;
        const int link = t.link(l, w);
        if (link < 0 || !allowed(mask, l, w)) continue;
        const std::uint32_t next = mask | (1u << (w - 1));
        const Cost c = base + p.links[static_cast<std::size_t>(link)].cost;
        auto& par = parent[at(next, w)];
        if (par < 0 || c < dp[at(next, w)]) {
          dp[at(next, w)] = c;
          par = static_cast<std::int8_t>(l);
        }
      }
    }
  }

  VertexId last = kNoVertex;
  Cost best = 0;
  for (VertexId l = 1; l < p.n; ++l) {
    const int link = t.link(l, 0);
    if (link < 0 || parent[at(full, l)] < 0) continue;
    const Cost c = dp[at(full, l)] + p.links[static_cast<std::size_t>(link)].cost;
    if (last == kNoVertex || c < best) {
      best = c;
      last = l;
    }
  }
  if (last == kNoVertex) return std::nullopt;
  std::vector<VertexId> order;
  std::uint32_t mask = full;
  for (VertexId v = last; v != 0;) {
    order.push_back(v);
    const VertexId prev = parent[at(mask, v)];
    mask &= ~(1u << (v - 1));
    v = prev;
  }
  order.push_back(0);
  std::reverse(order.begin(), order.end());
  return solution_from_order(p, t, std::move(order));
}

std::optional<Solution> brute_force(const Problem& p) {
  check_problem(p);
  if (p.n > kBruteForceMaxN)
    throw ResourceError("brute force limited to " + std::to_string(kBruteForceMaxN) + " vertices");
  if (p.n == 2) return two_vertex_tour(p);
  const PairTable t(p);
  if (t.contradictory) return std::nullopt;
  int total_forced = 0;
  for (const auto& l : p.links) total_forced += l.forced ? 1 : 0;

  std::vector<VertexId> order(static_cast<std::size_t>(p.n));
  std::iota(order.begin(), order.end(), 0);
  std::optional<Solution> best;
  do {
    Cost c = 0;
    int forced_used = 0;
    bool ok = true;
    for (std::size_t i = 0; i < order.size() && ok; ++i) {
      const int l = t.link(order[i], order[(i + 1) % order.size()]);
      if (l < 0) {
        ok = false;
        break;
      }
      c += p.links[static_cast<std::size_t>(l)].cost;
      forced_used += p.links[static_cast<std::size_t>(l)].forced ? 1 : 0;
    }
    if (!ok || forced_used != total_forced) continue;
    if (!best || c < best->cost) best = solution_from_order(p, t, order);
  } while (std::next_permutation(order.begin() + 1, order.end()));
  return best;
}

std::optional<Tour> optimal_tour(const Instance& inst) {
  const Problem p = from_instance(inst);
  const auto sol = held_karp(p);
  if (!sol) return std::nullopt;
  std::vector<EdgeId> ids;
  for (int l : sol->links) ids.push_back(p.source_ids[static_cast<std::size_t>(l)]);
  return tour_from_edges(inst, ids);
}

std::optional<Cost> min_ham_path(const Problem& p, VertexId s, VertexId t) {
  if (p.n < 1) throw InputError("path problem needs at least one vertex");
  if (p.n > kBruteForceMaxN)
    throw ResourceError("path enumeration limited to " + std::to_string(kBruteForceMaxN) +
                        " vertices");
  if (s < 0 || s >= p.n || t < 0 || t >= p.n) throw InputError("path endpoint out of range");
  if (s == t) return p.n == 1 ? std::optional<Cost>(0) : std::nullopt;
  std::vector<Cost> pc(static_cast<std::size_t>(p.n * p.n), 0);
  std::vector<std::uint8_t> has(static_cast<std::size_t>(p.n * p.n), 0);
  for (const auto& l : p.links) {
    for (auto [a, b] : {std::pair(l.u, l.v), std::pair(l.v, l.u)}) {
      const auto i = static_cast<std::size_t>(a * p.n + b);
      if (!has[i] || l.cost < pc[i]) pc[i] = l.cost;
      has[i] = 1;
    }
  }
  std::vector<VertexId> mid;
  for (VertexId v = 0; v < p.n; ++v)
    if (v != s && v != t) mid.push_back(v);
  std::optional<Cost> best;
  do {
    Cost c = 0;
    VertexId prev = s;
    bool ok = true;
    for (std::size_t i = 0; i <= mid.size() && ok; ++i) {
      const VertexId cur = i < mid.size() ? mid[i] : t;
      const auto k = static_cast<std::size_t>(prev * p.n + cur);
      ok = has[k] != 0;
      c += pc[k];
      prev = cur;
    }
    if (ok && (!best || c < *best)) best = c;
  } while (std::next_permutation(mid.begin(), mid.end()));
  return best;
}

}  // namespace bdtsp::oracle
