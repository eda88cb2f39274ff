#include "bdtsp/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace bdtsp {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& p = parent[static_cast<std::size_t>(x)];
      p = parent[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }
};

std::vector<std::vector<VertexId>> group_by_root(UnionFind& uf, const VertexSet& members) {
  std::vector<std::vector<VertexId>> out;
  std::vector<int> slot(uf.parent.size(), -1);
  for (VertexId v = members.first(); v != kNoVertex; v = members.next(v + 1)) {
    int r = uf.find(v);
    if (slot[static_cast<std::size_t>(r)] < 0) {
      slot[static_cast<std::size_t>(r)] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])].push_back(v);
  }
  return out;
}

}  // namespace

WorkGraph::WorkGraph(const Instance& inst) {
  alive_.assign(static_cast<std::size_t>(inst.n()), 1);
  incident_.assign(static_cast<std::size_t>(inst.n()), {});
  for (const Edge& e : inst.edges())
    add_edge(e.u, e.v, e.cost,
             inst.is_preforced(e.id) ? EdgeState::forced : EdgeState::unforced);
}

WorkGraph::WorkGraph(const Instance& inst, std::span<const EdgeState> states)
    : WorkGraph(inst) {
  if (static_cast<int>(states.size()) != inst.m())
    throw InputError("state overlay size does not match edge count");
  for (EdgeId e = 0; e < inst.m(); ++e) set_state(e, states[static_cast<std::size_t>(e)]);
}

int WorkGraph::live_vertex_count() const {
  return static_cast<int>(std::count(alive_.begin(), alive_.end(), std::uint8_t{1}));
}

VertexSet WorkGraph::live_vertices() const {
  VertexSet s;
  for (VertexId v = 0; v < vertex_capacity(); ++v)
    if (alive(v)) s.insert(v);
  return s;
}

int WorkGraph::live_degree(VertexId v) const {
  int d = 0;
  for (EdgeId e : incident(v)) d += live(e) ? 1 : 0;
  return d;
}

int WorkGraph::forced_degree(VertexId v) const {
  int d = 0;
  for (EdgeId e : incident(v)) d += is_forced(e) ? 1 : 0;
  return d;
}

std::vector<EdgeId> WorkGraph::live_edges() const {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < edge_count(); ++e)
    if (live(e)) out.push_back(e);
  return out;
}

VertexId WorkGraph::add_vertex() {
  if (vertex_capacity() >= VertexSet::kCapacity)
    throw ResourceError("working graph exceeds " + std::to_string(VertexSet::kCapacity) +
                        " vertices");
  alive_.push_back(1);
  incident_.emplace_back();
  return vertex_capacity() - 1;
}

EdgeId WorkGraph::add_edge(VertexId u, VertexId v, Cost cost, EdgeState state) {
  auto id = static_cast<EdgeId>(edges_.size());
  edges_.push_back({u, v, cost, state});
  incident_[static_cast<std::size_t>(u)].push_back(id);
  incident_[static_cast<std::size_t>(v)].push_back(id);
  return id;
}

void WorkGraph::move_endpoint(EdgeId e, VertexId from, VertexId to) {
  WorkEdge& w = edges_[static_cast<std::size_t>(e)];
  if (w.u == from) {
    w.u = to;
  } else if (w.v == from) {
    w.v = to;
  } else {
    throw InternalError("move_endpoint: vertex is not an endpoint");
  }
  auto& lst = incident_[static_cast<std::size_t>(from)];
  lst.erase(std::remove(lst.begin(), lst.end(), e), lst.end());
  incident_[static_cast<std::size_t>(to)].push_back(e);
}

std::vector<EdgeId> bridges_among(const WorkGraph& g, std::span<const EdgeId> edge_ids) {
  const int cap = g.vertex_capacity();
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(static_cast<std::size_t>(cap));
  for (EdgeId e : edge_ids) {
    const auto& w = g.edge(e);
    adj[static_cast<std::size_t>(w.u)].emplace_back(w.v, e);
    adj[static_cast<std::size_t>(w.v)].emplace_back(w.u, e);
  }
  std::vector<int> tin(static_cast<std::size_t>(cap), -1), low(static_cast<std::size_t>(cap), 0);
  std::vector<EdgeId> out;
  int timer = 0;
  struct Frame {
    VertexId v;
    EdgeId via;
    std::size_t next;
  };
  for (VertexId root = 0; root < cap; ++root) {
    if (adj[static_cast<std::size_t>(root)].empty() || tin[static_cast<std::size_t>(root)] >= 0)
      continue;
    std::vector<Frame> stack{{root, kNoEdge, 0}};
    tin[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& nb = adj[static_cast<std::size_t>(f.v)];
      if (f.next < nb.size()) {
        auto [to, e] = nb[f.next++];
        if (e == f.via) continue;
        auto ti = static_cast<std::size_t>(to);
        if (tin[ti] >= 0) {
          low[static_cast<std::size_t>(f.v)] = std::min(low[static_cast<std::size_t>(f.v)], tin[ti]);
        } else {
          tin[ti] = low[ti] = timer++;
          stack.push_back({to, e, 0});
        }
      } else {
        Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          auto pv = static_cast<std::size_t>(stack.back().v);
          low[pv] = std::min(low[pv], low[static_cast<std::size_t>(done.v)]);
          if (low[static_cast<std::size_t>(done.v)] > tin[pv]) out.push_back(done.via);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool two_edge_connected(const WorkGraph& g) {
  const VertexSet verts = g.live_vertices();
  if (verts.empty()) throw InputError("empty instance");
  const auto edges = g.live_edges();
  UnionFind uf(g.vertex_capacity());
  for (EdgeId e : edges) uf.unite(g.edge(e).u, g.edge(e).v);
  const int root = uf.find(verts.first());
  for (VertexId v = verts.first(); v != kNoVertex; v = verts.next(v + 1))
    if (uf.find(v) != root) return false;
  return bridges_among(g, edges).empty();
}

bool two_edge_connected(const Instance& inst, std::span<const EdgeState> states) {
  return two_edge_connected(WorkGraph(inst, states));
}

std::vector<std::vector<VertexId>> u_components(const WorkGraph& g) {
  UnionFind uf(g.vertex_capacity());
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (g.is_unforced(e)) uf.unite(g.edge(e).u, g.edge(e).v);
  return group_by_root(uf, g.live_vertices());
}

std::vector<std::vector<VertexId>> u_components(const Instance& inst,
                                                std::span<const EdgeState> states) {
  return u_components(WorkGraph(inst, states));
}

namespace {

// Unforced live edges with both endpoints in the component, ascending.
std::vector<EdgeId> component_edges(const WorkGraph& g, std::span<const VertexId> comp) {
  std::vector<EdgeId> out;
  for (VertexId v : comp)
    for (EdgeId e : g.incident(v))
      if (g.is_unforced(e) && g.edge(e).u == v) out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool is_four_cycle_component(const WorkGraph& g, std::span<const VertexId> component) {
  if (component.size() != 4) return false;
  const auto edges = component_edges(g, component);
  if (edges.size() != 4) return false;
  for (VertexId v : component) {
    int d = 0;
    for (EdgeId e : g.incident(v)) d += g.is_unforced(e) ? 1 : 0;
    if (d != 2) return false;
  }
  return true;
}

std::vector<Circuit> circuits_of(const WorkGraph& g, std::span<const VertexId> component) {
  std::vector<Circuit> out;
  if (component.size() < 2) return out;
  const auto h_edges = component_edges(g, component);
  const auto h_bridges = bridges_among(g, h_edges);
  auto is_h_bridge = [&](EdgeId e) {
    return std::binary_search(h_bridges.begin(), h_bridges.end(), e);
  };

  // Two non-bridge edges are equivalent iff together they form a 2-edge cut,
  // i.e. one becomes a bridge once the other is removed.
  std::vector<int> cls(static_cast<std::size_t>(g.edge_count()), -1);
  std::vector<std::vector<EdgeId>> classes;
  for (EdgeId e : h_edges) {
    if (is_h_bridge(e) || cls[static_cast<std::size_t>(e)] >= 0) continue;
    std::vector<EdgeId> rest;
    rest.reserve(h_edges.size());
    for (EdgeId f : h_edges)
      if (f != e) rest.push_back(f);
    std::vector<EdgeId> members{e};
    for (EdgeId f : bridges_among(g, rest))
      if (!is_h_bridge(f)) members.push_back(f);
    std::sort(members.begin(), members.end());
    for (EdgeId f : members) cls[static_cast<std::size_t>(f)] = static_cast<int>(classes.size());
    classes.push_back(std::move(members));
  }

  const VertexSet comp_set(std::vector<VertexId>(component.begin(), component.end()));
  for (const auto& c : classes) {
    if (c.size() < 2) continue;
    UnionFind uf(g.vertex_capacity());
    for (EdgeId f : h_edges)
      if (!std::binary_search(c.begin(), c.end(), f)) uf.unite(g.edge(f).u, g.edge(f).v);
    auto blocks = group_by_root(uf, comp_set);
    if (blocks.size() != c.size()) continue;
    std::vector<int> label(static_cast<std::size_t>(g.vertex_capacity()), -1);
    for (std::size_t b = 0; b < blocks.size(); ++b)
      for (VertexId v : blocks[b]) label[static_cast<std::size_t>(v)] = static_cast<int>(b);
    std::vector<std::vector<EdgeId>> touching(blocks.size());
    bool ok = true;
    for (EdgeId f : c) {
      int a = label[static_cast<std::size_t>(g.edge(f).u)];
      int b = label[static_cast<std::size_t>(g.edge(f).v)];
      if (a == b) ok = false;
      touching[static_cast<std::size_t>(a)].push_back(f);
      touching[static_cast<std::size_t>(b)].push_back(f);
    }
    for (const auto& t : touching) ok = ok && t.size() == 2;
    if (!ok) continue;

    auto walk = [&](int start_block) {
      Circuit circ;
      EdgeId edge = c.front();
      int block = start_block;
      while (true) {
        circ.edges.push_back(edge);
        circ.blocks.push_back(blocks[static_cast<std::size_t>(block)]);
        const auto& t = touching[static_cast<std::size_t>(block)];
        EdgeId next = t[0] == edge ? t[1] : t[0];
        if (next == c.front()) break;
        int a = label[static_cast<std::size_t>(g.edge(next).u)];
        int b = label[static_cast<std::size_t>(g.edge(next).v)];
        block = a == block ? b : a;
        edge = next;
      }
      return circ;
    };
    const EdgeId c0 = c.front();
    Circuit fwd = walk(label[static_cast<std::size_t>(g.edge(c0).u)]);
    Circuit bwd = walk(label[static_cast<std::size_t>(g.edge(c0).v)]);
    out.push_back(std::tie(fwd.edges, fwd.blocks) <= std::tie(bwd.edges, bwd.blocks) ? fwd : bwd);
  }

  for (EdgeId e : h_edges) {
    const int k = cls[static_cast<std::size_t>(e)];
    if (k >= 0 && classes[static_cast<std::size_t>(k)].size() >= 2) continue;
    if (edge_disjoint_paths(g, g.edge(e).u, g.edge(e).v, 3) >= 3) out.push_back({{e}, {}});
  }
  std::sort(out.begin(), out.end(),
            [](const Circuit& a, const Circuit& b) { return a.edges.front() < b.edges.front(); });
  return out;
}

std::vector<EdgeId> cut_edges(const WorkGraph& g, const VertexSet& x) {
  const VertexSet live = g.live_vertices();
  if (x.empty()) throw InputError("cut of an empty vertex set");
  if (!x.minus(live).empty()) throw InputError("cut set contains a dead vertex");
  if (live.minus(x).empty()) throw InputError("cut set covers the whole graph");
  std::vector<EdgeId> out;
  for (VertexId v = x.first(); v != kNoVertex; v = x.next(v + 1))
    for (EdgeId e : g.incident(v))
      if (g.live(e) && !x.contains(g.edge(e).other(v))) out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EdgeId> cut_edges(const Instance& inst, std::span<const EdgeState> states,
                              std::span<const VertexId> x) {
  return cut_edges(WorkGraph(inst, states),
                   VertexSet(std::vector<VertexId>(x.begin(), x.end())));
}

int edge_disjoint_paths(const WorkGraph& g, VertexId x, VertexId y, int limit) {
  if (x == y) return limit;
  std::vector<int> flow(static_cast<std::size_t>(g.edge_count()), 0);
  int paths = 0;
  const int cap = g.vertex_capacity();
  while (paths < limit) {
    std::vector<EdgeId> via(static_cast<std::size_t>(cap), kNoEdge);
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(cap), 0);
    std::deque<VertexId> queue{x};
    seen[static_cast<std::size_t>(x)] = 1;
    while (!queue.empty() && !seen[static_cast<std::size_t>(y)]) {
      VertexId w = queue.front();
      queue.pop_front();
      for (EdgeId e : g.incident(w)) {
        if (!g.live(e)) continue;
        const auto& ed = g.edge(e);
        int f = flow[static_cast<std::size_t>(e)];
        int residual = (w == ed.u) ? 1 - f : 1 + f;
        VertexId z = ed.other(w);
        if (residual <= 0 || seen[static_cast<std::size_t>(z)]) continue;
        seen[static_cast<std::size_t>(z)] = 1;
        via[static_cast<std::size_t>(z)] = e;
        queue.push_back(z);
      }
    }
    if (!seen[static_cast<std::size_t>(y)]) break;
    for (VertexId z = y; z != x;) {
      EdgeId e = via[static_cast<std::size_t>(z)];
      const auto& ed = g.edge(e);
      VertexId from = ed.other(z);
      flow[static_cast<std::size_t>(e)] += (from == ed.u) ? 1 : -1;
      z = from;
    }
    ++paths;
  }
  return paths;
}

bool verify_tour(const Instance& inst, const Tour& tour) {
  const int n = inst.n();
  if (static_cast<int>(tour.vertices.size()) != n) return false;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
  for (VertexId v : tour.vertices) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<EdgeId> used;
  if (!tour.edges.empty()) {
    if (static_cast<int>(tour.edges.size()) != n) return false;
    for (int i = 0; i < n; ++i) {
      EdgeId e = tour.edges[static_cast<std::size_t>(i)];
      if (e < 0 || e >= inst.m()) return false;
      const Edge& ed = inst.edge(e);
      VertexId a = tour.vertices[static_cast<std::size_t>(i)];
      VertexId b = tour.vertices[static_cast<std::size_t>((i + 1) % n)];
      if (!((ed.u == a && ed.v == b) || (ed.u == b && ed.v == a))) return false;
      used.push_back(e);
    }
  } else {
    for (int i = 0; i < n; ++i) {
      VertexId a = tour.vertices[static_cast<std::size_t>(i)];
      VertexId b = tour.vertices[static_cast<std::size_t>((i + 1) % n)];
      EdgeId best = kNoEdge;
      for (EdgeId e : inst.incident(a)) {
        if (inst.edge(e).other(a) != b) continue;
        if (std::find(used.begin(), used.end(), e) != used.end()) continue;
        if (best == kNoEdge || inst.edge(e).cost < inst.edge(best).cost) best = e;
      }
      if (best == kNoEdge) return false;
      used.push_back(best);
    }
  }
  std::vector<EdgeId> sorted = used;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (EdgeId e : inst.preforced())
    if (!std::binary_search(sorted.begin(), sorted.end(), e)) return false;
  Cost total = 0;
  for (EdgeId e : used) total += inst.edge(e).cost;
  return total == tour.total_cost;
}

}  // namespace bdtsp
