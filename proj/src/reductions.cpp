#include "bdtsp/reductions.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <utility>

namespace bdtsp {

const char* to_string(Decision d) { return d == Decision::force ? "force" : "remove"; }

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::propagation: return "propagation";
    case EventKind::circuit_procedure: return "circuit-procedure";
    case EventKind::parallel_elimination: return "parallel-elimination";
    case EventKind::three_cut: return "three-cut";
    case EventKind::four_cut: return "four-cut";
    case EventKind::split: return "split";
    case EventKind::assignment: return "assignment";
  }
  return "?";
}

int pair_index(int i, int j) {
  if (i > j) std::swap(i, j);
  if (i == 0 && j == 1) return 0;
  if (i == 0 && j == 2) return 1;
  if (i == 1 && j == 2) return 2;
  throw InternalError("pair_index: bad pair");
}

int ReducedInstance::forced_count() const {
  int c = 0;
  for (EdgeId e = 0; e < graph.edge_count(); ++e) c += graph.is_forced(e) ? 1 : 0;
  return c;
}

namespace {

constexpr std::array<std::pair<int, int>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};
constexpr std::array<std::array<int, 4>, 3> kPairings{{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
constexpr int kMaxCutSet = 8;

void mark_infeasible(ReducedInstance& r, std::string why) {
  if (r.infeasible) return;
  r.infeasible = true;
  r.reason = std::move(why);
}

void force_edge(ReducedInstance& r, ReductionEvent& ev, EdgeId e) {
  const EdgeState s = r.graph.state(e);
  if (s == EdgeState::forced) return;
  if (s == EdgeState::deleted) {
    mark_infeasible(r, "edge " + std::to_string(e + 1) + " is both deleted and required");
    return;
  }
  r.graph.set_state(e, EdgeState::forced);
  ev.forced.push_back(e);
}

void delete_edge(ReducedInstance& r, ReductionEvent& ev, EdgeId e) {
  const EdgeState s = r.graph.state(e);
  if (s == EdgeState::deleted) return;
  if (s == EdgeState::forced) {
    mark_infeasible(r, "edge " + std::to_string(e + 1) + " is both forced and excluded");
    return;
  }
  r.graph.set_state(e, EdgeState::deleted);
  ev.deleted.push_back(e);
}

void set_by_decision(ReducedInstance& r, ReductionEvent& ev, EdgeId e, Decision d) {
  if (d == Decision::force)
    force_edge(r, ev, e);
  else
    delete_edge(r, ev, e);
}

void commit(ReducedInstance& r, ReductionEvent ev) {
  ev.scale_after = r.scale;
  r.trace.push_back(std::move(ev));
}

// Degree-driven forcing: a vertex with two usable edges keeps both, a vertex
// with two forced edges loses the rest.
bool propagate_into(ReducedInstance& r, ReductionEvent& ev) {
  WorkGraph& g = r.graph;
  bool changed = false;
  bool again = true;
  while (again && !r.infeasible) {
    again = false;
    for (VertexId v = 0; v < g.vertex_capacity() && !r.infeasible; ++v) {
      if (!g.alive(v)) continue;
      int live = 0;
      int forced = 0;
      for (EdgeId e : g.incident(v)) {
        if (!g.live(e)) continue;
        ++live;
        forced += g.state(e) == EdgeState::forced ? 1 : 0;
      }
      if (forced > 2) {
        mark_infeasible(r, "vertex " + std::to_string(v + 1) + " has three forced edges");
      } else if (live < 2) {
        mark_infeasible(r, "vertex " + std::to_string(v + 1) + " has fewer than two usable edges");
      } else if (forced == 2 && live > 2) {
        for (EdgeId e : g.incident(v))
          if (g.is_unforced(e)) delete_edge(r, ev, e);
        again = changed = true;
      } else if (live == 2 && forced < 2) {
        for (EdgeId e : g.incident(v))
          if (g.is_unforced(e)) force_edge(r, ev, e);
        again = changed = true;
      }
    }
  }
  return changed;
}

void double_scale(ReducedInstance& r) {
  constexpr Cost kLimit = std::numeric_limits<Cost>::max() / 8;
  WorkGraph& g = r.graph;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (g.edge(e).cost > kLimit || g.edge(e).cost < -kLimit)
      throw ResourceError("edge costs overflow while rescaling a contraction");
  for (EdgeId e = 0; e < g.edge_count(); ++e) g.set_cost(e, g.edge(e).cost * 2);
  r.scale *= 2;
}

// Depth-first enumeration of simple s-t paths inside `pool`. Every forced
// edge between pool vertices that touches the path must lie on it. With
// `cover` set only paths visiting the whole pool are reported. The callback
// returns true to stop the search.
template <class F>
class PathSearch {
 public:
  PathSearch(const WorkGraph& g, const VertexSet& pool, VertexId t, bool cover, F& f)
      : g_(g), pool_(pool), t_(t), cover_(cover), pool_size_(pool.size()), f_(f) {}

  void run(VertexId s) {
    visited_ = VertexSet{};
    visited_.insert(s);
    step(s, kNoEdge, 0);
  }

 private:
  void step(VertexId u, EdgeId arrival, Cost cost) {
    if (stop_) return;
    if (u == t_) {
      for (EdgeId e : g_.incident(u))
        if (e != arrival && g_.is_forced(e) && pool_.contains(g_.edge(e).other(u))) return;
      if (!cover_ || visited_.size() == pool_size_) stop_ = f_(visited_, path_, cost);
      return;
    }
    EdgeId must = kNoEdge;
    for (EdgeId e : g_.incident(u)) {
      if (e == arrival || !g_.is_forced(e) || !pool_.contains(g_.edge(e).other(u))) continue;
      if (must != kNoEdge) return;
      must = e;
    }
    for (EdgeId e : g_.incident(u)) {
      if (!g_.live(e) || (must != kNoEdge && e != must)) continue;
      const VertexId w = g_.edge(e).other(u);
      if (!pool_.contains(w) || visited_.contains(w)) continue;
      visited_.insert(w);
      path_.push_back(e);
      step(w, e, cost + g_.edge(e).cost);
      path_.pop_back();
      visited_.erase(w);
      if (stop_) return;
    }
  }

  const WorkGraph& g_;
  const VertexSet& pool_;
  VertexId t_;
  bool cover_;
  int pool_size_;
  F& f_;
  VertexSet visited_;
  std::vector<EdgeId> path_;
  bool stop_ = false;
};

template <class F>
void for_each_path(const WorkGraph& g, const VertexSet& pool, VertexId s, VertexId t, bool cover,
                   F&& f) {
  PathSearch<std::remove_reference_t<F>> search(g, pool, t, cover, f);
  search.run(s);
}

VertexId inner_endpoint(const WorkGraph& g, const VertexSet& x, EdgeId e) {
  return x.contains(g.edge(e).u) ? g.edge(e).u : g.edge(e).v;
}

bool pairing_feasible(const WorkGraph& g, const VertexSet& x, const std::array<VertexId, 4>& inner,
                      int pairing) {
  const auto& pr = kPairings[static_cast<std::size_t>(pairing)];
  const VertexId a = inner[static_cast<std::size_t>(pr[0])];
  const VertexId b = inner[static_cast<std::size_t>(pr[1])];
  const VertexId c = inner[static_cast<std::size_t>(pr[2])];
  const VertexId d = inner[static_cast<std::size_t>(pr[3])];
  bool feasible = false;
  for_each_path(g, x, a, b, false, [&](const VertexSet& first, const std::vector<EdgeId>&, Cost) {
    if (first.contains(c) || first.contains(d)) return false;
    const VertexSet rest = x.minus(first);
    for (VertexId v = first.first(); v != kNoVertex; v = first.next(v + 1))
      for (EdgeId e : g.incident(v))
        if (g.is_forced(e) && rest.contains(g.edge(e).other(v))) return false;
    for_each_path(g, rest, c, d, true, [&](const VertexSet&, const std::vector<EdgeId>&, Cost) {
      feasible = true;
      return true;
    });
    return feasible;
  });
  return feasible;
}

int live_cut_size(const WorkGraph& g, const VertexSet& x) {
  int c = 0;
  for (VertexId v = x.first(); v != kNoVertex; v = x.next(v + 1))
    for (EdgeId e : g.incident(v))
      if (g.live(e) && !x.contains(g.edge(e).other(v))) ++c;
  return c;
}

int forced_cut_count(const WorkGraph& g, const VertexSet& x) {
  int c = 0;
  for (VertexId v = x.first(); v != kNoVertex; v = x.next(v + 1))
    for (EdgeId e : g.incident(v))
      if (g.is_forced(e) && !x.contains(g.edge(e).other(v))) ++c;
  return c;
}

// Parity propagation around a circuit: the number of tour edges crossing
// each block boundary must be even and positive.
void run_circuit(ReducedInstance& r, ReductionEvent& ev, const Circuit& circuit, EdgeId seed,
                 Decision decision) {
  if (circuit.single_edge()) {
    set_by_decision(r, ev, seed, decision);
    return;
  }
  const WorkGraph& g = r.graph;
  const int m = static_cast<int>(circuit.edges.size());
  const int k = static_cast<int>(
      std::find(circuit.edges.begin(), circuit.edges.end(), seed) - circuit.edges.begin());
  std::vector<int> fcut(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    fcut[static_cast<std::size_t>(i)] =
        forced_cut_count(g, VertexSet(circuit.blocks[static_cast<std::size_t>(i)]));
  std::vector<int> x(static_cast<std::size_t>(m), 0);
  x[static_cast<std::size_t>(k)] = decision == Decision::force ? 1 : 0;
  for (int s = 0; s < m; ++s) {
    const int i = (k + s) % m;
    const int j = (i + 1) % m;
    const int f = fcut[static_cast<std::size_t>(i)];
    const int xi = x[static_cast<std::size_t>(i)];
    const int nx = (f + xi) % 2;
    if (f + xi + nx == 0) {
      mark_infeasible(r, "circuit assignment isolates a block");
      return;
    }
    if (j == k) {
      if (nx != x[static_cast<std::size_t>(k)]) {
        mark_infeasible(r, "circuit assignment has inconsistent parity");
        return;
      }
    } else {
      x[static_cast<std::size_t>(j)] = nx;
    }
  }
  for (int i = 0; i < m; ++i)
    set_by_decision(r, ev, circuit.edges[static_cast<std::size_t>(i)],
                    x[static_cast<std::size_t>(i)] ? Decision::force : Decision::remove);
}

bool reduce_reducible_circuit(ReducedInstance& r) {
  const WorkGraph& g = r.graph;
  for (const auto& comp : u_components(g)) {
    if (comp.size() < 2) continue;
    for (const auto& circ : circuits_of(g, comp)) {
      if (circ.single_edge()) continue;
      for (std::size_t i = 0; i < circ.blocks.size(); ++i) {
        if (live_cut_size(g, VertexSet(circ.blocks[i])) != 2) continue;
        circuit_procedure(r, circ, circ.edges[i], Decision::force);
        return true;
      }
    }
  }
  return false;
}

// ESU enumeration of connected vertex sets of size <= kmax; each set is
// produced once. The callback returns true to stop.
template <class F>
bool esu_extend(const std::vector<VertexSet>& nb, VertexSet sub, VertexSet ext,
                const VertexSet& closed, VertexId root, int kmax, F& cb) {
  if (cb(sub)) return true;
  if (sub.size() == kmax) return false;
  while (!ext.empty()) {
    const VertexId w = ext.first();
    ext.erase(w);
    const VertexSet& nw = nb[static_cast<std::size_t>(w)];
    VertexSet ext2 = ext;
    for (VertexId u = nw.next(root + 1); u != kNoVertex; u = nw.next(u + 1))
      if (!closed.contains(u)) ext2.insert(u);
    VertexSet sub2 = sub;
    sub2.insert(w);
    if (esu_extend(nb, sub2, ext2, closed | nw, root, kmax, cb)) return true;
  }
  return false;
}

template <class F>
void enumerate_connected_sets(const WorkGraph& g, int kmax, F&& cb) {
  const VertexSet live = g.live_vertices();
  std::vector<VertexSet> nb(static_cast<std::size_t>(g.vertex_capacity()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!g.live(e)) continue;
    nb[static_cast<std::size_t>(g.edge(e).u)].insert(g.edge(e).v);
    nb[static_cast<std::size_t>(g.edge(e).v)].insert(g.edge(e).u);
  }
  for (VertexId root = live.first(); root != kNoVertex; root = live.next(root + 1)) {
    VertexSet sub;
    sub.insert(root);
    const VertexSet& nr = nb[static_cast<std::size_t>(root)];
    VertexSet ext;
    for (VertexId u = nr.next(root + 1); u != kNoVertex; u = nr.next(u + 1)) ext.insert(u);
    if (esu_extend(nb, sub, ext, nr | sub, root, kmax, cb)) return;
  }
}

bool has_constraint(const ReducedInstance& r, const VertexSet& x) {
  return std::any_of(r.constraints.begin(), r.constraints.end(),
                     [&](const FourCutConstraint& c) { return c.members == x; });
}

bool reduce_small_cut(ReducedInstance& r) {
  const int live = r.graph.live_vertex_count();
  if (live < 3) return false;
  const int kmax = std::min(kMaxCutSet, live - 1);
  bool acted = false;
  enumerate_connected_sets(r.graph, kmax, [&](const VertexSet& x) {
    const WorkGraph& g = r.graph;
    const int c = live_cut_size(g, x);
    if (c == 3 && x.size() >= 2) {
      acted = three_cut_reduce(r, x);
      return acted;
    }
    if (c != 4 || forced_cut_count(g, x) != 4 || has_constraint(r, x)) return false;
    const FourCutResult res = four_cut_reducible(g, x);
    if (!res.reducible) return false;
    FourCutConstraint fc;
    fc.members = x;
    const auto cut = cut_edges(g, x);
    std::copy(cut.begin(), cut.end(), fc.cut.begin());
    fc.infeasible = res.infeasible;
    ReductionEvent ev;
    ev.kind = EventKind::four_cut;
    ev.subject = cut;
    ev.vertices = x.to_vector();
    ev.record = static_cast<int>(r.constraints.size());
    r.constraints.push_back(fc);
    if (std::all_of(fc.infeasible.begin(), fc.infeasible.end(), [](bool b) { return b; }))
      mark_infeasible(r, "no boundary pairing of a 4-cut admits a tour");
    commit(r, std::move(ev));
    acted = true;
    return true;
  });
  return acted;
}

}  // namespace

ThreeCutWeights three_cut_weights(const std::array<std::optional<Cost>, 3>& pc) {
  ThreeCutWeights w;
  int defined = 0;
  for (const auto& p : pc) defined += p ? 1 : 0;
  if (defined == 0) {
    w.infeasible = true;
    return w;
  }
  if (defined == 3) {
    const Cost a = *pc[0], b = *pc[1], c = *pc[2];
    if ((a + b + c) % 2 != 0) {
      w.needs_doubling = true;
      return w;
    }
    w.alpha = {(a + b - c) / 2, (a + c - b) / 2, (b + c - a) / 2};
    return w;
  }
  if (defined == 2) {
    // The pair avoiding edge i is unusable, so every tour crosses via e_i.
    int missing = 0;
    while (pc[static_cast<std::size_t>(missing)]) ++missing;
    const int i = 2 - missing;
    w.force[static_cast<std::size_t>(i)] = true;
    for (int j = 0; j < 3; ++j)
      if (j != i) w.alpha[static_cast<std::size_t>(j)] = *pc[static_cast<std::size_t>(pair_index(i, j))];
    return w;
  }
  int present = 0;
  while (!pc[static_cast<std::size_t>(present)]) ++present;
  const int i = 2 - present;
  const auto [j, k] = kPairs[static_cast<std::size_t>(present)];
  w.remove[static_cast<std::size_t>(i)] = true;
  w.force[static_cast<std::size_t>(j)] = true;
  w.force[static_cast<std::size_t>(k)] = true;
  w.alpha[static_cast<std::size_t>(j)] = *pc[static_cast<std::size_t>(present)];
  return w;
}

ReducedInstance make_reduced(const Instance& inst) {
  ReducedInstance r;
  r.graph = WorkGraph(inst);
  r.scale = inst.cost_scale();
  const Cost limit = std::numeric_limits<Cost>::max() / 8 / r.scale;
  for (EdgeId e = 0; e < r.graph.edge_count(); ++e) {
    if (r.graph.edge(e).cost > limit) throw ResourceError("edge cost too large");
    r.graph.set_cost(e, r.graph.edge(e).cost * r.scale);
  }
  r.origins.resize(static_cast<std::size_t>(inst.m()));
  for (EdgeId e = 0; e < inst.m(); ++e) r.origins[static_cast<std::size_t>(e)] = {e};
  if (!inst.preforced().empty()) {
    ReductionEvent ev;
    ev.kind = EventKind::split;
    ev.subject = inst.preforced();
    ev.forced = inst.preforced();
    commit(r, std::move(ev));
  }
  return r;
}

bool propagate_forcing(ReducedInstance& r) {
  ReductionEvent ev;
  ev.kind = EventKind::propagation;
  const bool was = r.infeasible;
  const bool changed = propagate_into(r, ev);
  if (changed || r.infeasible != was) commit(r, std::move(ev));
  return changed || r.infeasible != was;
}

bool eliminate_parallel_edges(ReducedInstance& r) {
  WorkGraph& g = r.graph;
  auto by_cost = [&](EdgeId a, EdgeId b) {
    return std::pair(g.edge(a).cost, a) < std::pair(g.edge(b).cost, b);
  };
  if (g.live_vertex_count() == 2) {
    const auto edges = g.live_edges();
    std::vector<EdgeId> forced, unforced;
    for (EdgeId e : edges) (g.state(e) == EdgeState::forced ? forced : unforced).push_back(e);
    if (forced.size() == 2 && unforced.empty()) return false;
    ReductionEvent ev;
    ev.kind = EventKind::parallel_elimination;
    ev.subject = edges;
    std::sort(unforced.begin(), unforced.end(), by_cost);
    const std::size_t need = forced.size() >= 2 ? 0 : 2 - forced.size();
    if (forced.size() > 2 || unforced.size() < need) {
      mark_infeasible(r, "two-vertex graph cannot hold a tour");
    } else {
      for (std::size_t i = 0; i < unforced.size(); ++i) {
        if (i < need)
          force_edge(r, ev, unforced[i]);
        else
          delete_edge(r, ev, unforced[i]);
      }
    }
    commit(r, std::move(ev));
    return true;
  }

  std::map<std::pair<VertexId, VertexId>, std::vector<EdgeId>> bundles;
  for (EdgeId e : g.live_edges()) {
    const auto& w = g.edge(e);
    bundles[{std::min(w.u, w.v), std::max(w.u, w.v)}].push_back(e);
  }
  bool changed = false;
  for (auto& [ends, bundle] : bundles) {
    if (bundle.size() < 2) continue;
    ReductionEvent ev;
    ev.kind = EventKind::parallel_elimination;
    ev.subject = bundle;
    ev.vertices = {ends.first, ends.second};
    int forced = 0;
    for (EdgeId e : bundle) forced += g.state(e) == EdgeState::forced ? 1 : 0;
    if (forced >= 2) {
      mark_infeasible(r, "two forced edges join the same pair of vertices");
    } else if (forced == 1) {
      for (EdgeId e : bundle)
        if (g.state(e) != EdgeState::forced) delete_edge(r, ev, e);
    } else {
      const EdgeId keep = *std::min_element(bundle.begin(), bundle.end(), by_cost);
      for (EdgeId e : bundle)
        if (e != keep) delete_edge(r, ev, e);
    }
    commit(r, std::move(ev));
    changed = true;
    if (r.infeasible) break;
  }
  return changed;
}

void circuit_procedure(ReducedInstance& r, const Circuit& circuit, EdgeId seed,
                       Decision decision) {
  if (std::find(circuit.edges.begin(), circuit.edges.end(), seed) == circuit.edges.end())
    throw InputError("seed edge is not part of the circuit");
  if (!r.graph.is_unforced(seed)) throw InputError("seed edge is not assignable");
  ReductionEvent ev;
  ev.kind = EventKind::circuit_procedure;
  ev.subject = circuit.edges;
  ev.decision = decision;
  run_circuit(r, ev, circuit, seed, decision);
  if (!r.infeasible) propagate_into(r, ev);
  commit(r, std::move(ev));
}

std::optional<PathInX> min_constrained_path(const WorkGraph& g, const VertexSet& x, VertexId s,
                                            VertexId t) {
  std::optional<PathInX> best;
  for_each_path(g, x, s, t, true, [&](const VertexSet&, const std::vector<EdgeId>& p, Cost c) {
    if (!best || c < best->cost) best = PathInX{c, p};
    return false;
  });
  return best;
}

bool three_cut_reduce(ReducedInstance& r, const VertexSet& x) {
  if (x.size() < 2) return false;
  if (x.size() > kMaxCutSet) throw InputError("3-cut side has more than eight vertices");
  const auto cut = cut_edges(r.graph, x);
  if (cut.size() != 3) throw InputError("vertex set is not a 3-cut");

  std::array<VertexId, 3> inner{};
  for (int i = 0; i < 3; ++i)
    inner[static_cast<std::size_t>(i)] = inner_endpoint(r.graph, x, cut[static_cast<std::size_t>(i)]);

  std::array<std::optional<Cost>, 3> pc;
  std::array<std::vector<EdgeId>, 3> paths;
  auto compute_paths = [&] {
    for (int p = 0; p < 3; ++p) {
      auto up = static_cast<std::size_t>(p);
      pc[up].reset();
      paths[up].clear();
      if (r.graph.is_forced(cut[static_cast<std::size_t>(2 - p)])) continue;
      const auto [i, j] = kPairs[up];
      auto best = min_constrained_path(r.graph, x, inner[static_cast<std::size_t>(i)],
                                       inner[static_cast<std::size_t>(j)]);
      if (!best) continue;
      pc[up] = best->cost;
      paths[up] = std::move(best->edges);
    }
  };
  compute_paths();
  ThreeCutWeights w = three_cut_weights(pc);
  if (w.needs_doubling) {
    double_scale(r);
    compute_paths();
    w = three_cut_weights(pc);
  }

  ReductionEvent ev;
  ev.kind = EventKind::three_cut;
  ev.subject = cut;
  ev.vertices = x.to_vector();
  if (w.infeasible) {
    mark_infeasible(r, "no Hamiltonian path crosses a 3-cut");
    commit(r, std::move(ev));
    return true;
  }

  ThreeCutRecord rec;
  rec.members = ev.vertices;
  rec.merged = r.graph.add_vertex();
  for (int i = 0; i < 3; ++i) {
    auto ui = static_cast<std::size_t>(i);
    rec.cut[ui] = cut[ui];
    rec.inner[ui] = inner[ui];
    rec.old_cost[ui] = r.graph.edge(cut[ui]).cost;
    rec.alpha[ui] = w.alpha[ui];
    rec.path_cost[ui] = pc[ui];
    rec.path[ui] = paths[ui];
    r.graph.move_endpoint(cut[ui], inner[ui], rec.merged);
    r.graph.set_cost(cut[ui], rec.old_cost[ui] + w.alpha[ui]);
  }
  for (VertexId v : rec.members) r.graph.kill_vertex(v);
  ev.record = static_cast<int>(r.contractions.size());
  r.contractions.push_back(std::move(rec));
  for (int i = 0; i < 3; ++i) {
    if (w.remove[static_cast<std::size_t>(i)]) delete_edge(r, ev, cut[static_cast<std::size_t>(i)]);
    if (w.force[static_cast<std::size_t>(i)]) force_edge(r, ev, cut[static_cast<std::size_t>(i)]);
  }
  if (!r.infeasible) propagate_into(r, ev);
  commit(r, std::move(ev));
  return true;
}

FourCutResult four_cut_reducible(const WorkGraph& g, const VertexSet& x) {
  if (x.empty() || x.size() > kMaxCutSet)
    throw InputError("4-cut side must have between one and eight vertices");
  const auto cut = cut_edges(g, x);
  if (cut.size() != 4 || !std::all_of(cut.begin(), cut.end(), [&](EdgeId e) { return g.is_forced(e); }))
    throw InputError("vertex set is not cut by exactly four forced edges");
  std::array<VertexId, 4> inner{};
  for (std::size_t i = 0; i < 4; ++i) inner[i] = inner_endpoint(g, x, cut[i]);
  FourCutResult res;
  for (int p = 0; p < 3; ++p) {
    res.infeasible[static_cast<std::size_t>(p)] = !pairing_feasible(g, x, inner, p);
    res.reducible = res.reducible || res.infeasible[static_cast<std::size_t>(p)];
  }
  return res;
}

bool parity_condition(const ReducedInstance& r) {
  const WorkGraph& g = r.graph;
  const int live = g.live_vertex_count();
  for (const auto& comp : u_components(g)) {
    const VertexSet h(comp);
    if (static_cast<int>(comp.size()) < live && forced_cut_count(g, h) % 2 != 0) return false;
    if (comp.size() < 2) continue;
    for (const auto& circ : circuits_of(g, comp)) {
      int odd = 0;
      for (const auto& block : circ.blocks) odd += forced_cut_count(g, VertexSet(block)) % 2;
      if (odd % 2 != 0) return false;
    }
  }
  return true;
}

bool four_cut_constraints_hold(const ReducedInstance& r) {
  const WorkGraph& g = r.graph;
  for (const auto& c : r.constraints) {
    bool intact = true;
    for (VertexId v = c.members.first(); v != kNoVertex; v = c.members.next(v + 1))
      intact = intact && g.alive(v);
    if (!intact) continue;
    std::array<VertexId, 4> inner{};
    for (std::size_t i = 0; i < 4; ++i) inner[i] = inner_endpoint(g, c.members, c.cut[i]);
    bool realizable = false;
    for (int p = 0; p < 3 && !realizable; ++p)
      realizable = !c.infeasible[static_cast<std::size_t>(p)] && pairing_feasible(g, c.members, inner, p);
    if (!realizable) return false;
  }
  return true;
}

bool apply_reduction_rules(ReducedInstance& r) {
  bool any = false;
  while (!r.infeasible) {
    if (propagate_forcing(r) || reduce_reducible_circuit(r) || eliminate_parallel_edges(r) ||
        reduce_small_cut(r)) {
      any = true;
      continue;
    }
    break;
  }
  return any;
}

void apply_assignment(ReducedInstance& r, AssignmentStep step) {
  if (r.infeasible) return;
  WorkGraph& g = r.graph;
  EdgeId w = kNoEdge;
  for (std::size_t i = 0; i < r.origins.size() && w == kNoEdge; ++i)
    if (std::find(r.origins[i].begin(), r.origins[i].end(), step.edge) != r.origins[i].end())
      w = static_cast<EdgeId>(i);
  if (w == kNoEdge) throw InputError("edge " + std::to_string(step.edge + 1) + " does not exist");
  const auto& we = g.edge(w);
  if (!g.alive(we.u) || !g.alive(we.v))
    throw InputError("edge " + std::to_string(step.edge + 1) + " was absorbed by a contraction");

  ReductionEvent ev;
  ev.kind = EventKind::assignment;
  ev.subject = {step.edge};
  ev.decision = step.decision;
  if (g.is_unforced(w)) {
    const auto comps = u_components(g);
    const auto comp = std::find_if(comps.begin(), comps.end(), [&](const auto& c) {
      return std::binary_search(c.begin(), c.end(), we.u);
    });
    std::optional<Circuit> home;
    for (auto& circ : circuits_of(g, *comp))
      if (std::find(circ.edges.begin(), circ.edges.end(), w) != circ.edges.end()) home = circ;
    if (home) {
      if (!home->single_edge()) ev.subject.insert(ev.subject.end(), home->edges.begin(), home->edges.end());
      run_circuit(r, ev, *home, w, step.decision);
    } else {
      set_by_decision(r, ev, w, step.decision);
    }
  } else {
    set_by_decision(r, ev, w, step.decision);
  }
  if (!r.infeasible) propagate_into(r, ev);
  commit(r, std::move(ev));
}

ReducedInstance reduce(const Instance& inst, const PartialAssignment& assignment) {
  ReducedInstance r = make_reduced(inst);
  for (const auto& step : assignment) {
    apply_reduction_rules(r);
    if (r.infeasible) return r;
    apply_assignment(r, step);
    if (r.infeasible) return r;
  }
  apply_reduction_rules(r);
  return r;
}

ReducedInstance extend(const ReducedInstance& parent, AssignmentStep step) {
  ReducedInstance r = parent;
  if (r.infeasible) return r;
  apply_assignment(r, step);
  if (!r.infeasible) apply_reduction_rules(r);
  return r;
}

WorkGraph replay_trace(const Instance& inst, const ReducedInstance& r) {
  ReducedInstance base = make_reduced(inst);
  WorkGraph g = base.graph;
  Cost scale = base.scale;
  for (const auto& ev : r.trace) {
    while (scale < ev.scale_after) {
      for (EdgeId e = 0; e < g.edge_count(); ++e) g.set_cost(e, g.edge(e).cost * 2);
      scale *= 2;
    }
    if (ev.kind == EventKind::three_cut && ev.record >= 0) {
      const auto& rec = r.contractions[static_cast<std::size_t>(ev.record)];
      const VertexId merged = g.add_vertex();
      if (merged != rec.merged) throw InternalError("replay created a different vertex id");
      for (std::size_t i = 0; i < 3; ++i) {
        g.move_endpoint(rec.cut[i], rec.inner[i], merged);
        g.set_cost(rec.cut[i], rec.old_cost[i] + rec.alpha[i]);
      }
      for (VertexId v : rec.members) g.kill_vertex(v);
    }
    for (EdgeId e : ev.forced) g.set_state(e, EdgeState::forced);
    for (EdgeId e : ev.deleted) g.set_state(e, EdgeState::deleted);
  }
  return g;
}

std::vector<EdgeId> expand_tour_edges(const ReducedInstance& r, std::vector<EdgeId> working_edges) {
  std::sort(working_edges.begin(), working_edges.end());
  for (auto it = r.contractions.rbegin(); it != r.contractions.rend(); ++it) {
    int mask = 0;
    for (int i = 0; i < 3; ++i)
      if (std::binary_search(working_edges.begin(), working_edges.end(), it->cut[static_cast<std::size_t>(i)]))
        mask |= 1 << i;
    int pair = -1;
    if (mask == 0b011) pair = 0;
    if (mask == 0b101) pair = 1;
    if (mask == 0b110) pair = 2;
    if (pair < 0 || !it->path_cost[static_cast<std::size_t>(pair)])
      throw InternalError("tour does not cross a contracted set through one defined pair");
    const auto& p = it->path[static_cast<std::size_t>(pair)];
    working_edges.insert(working_edges.end(), p.begin(), p.end());
    std::sort(working_edges.begin(), working_edges.end());
  }
  std::vector<EdgeId> out;
  for (EdgeId w : working_edges) {
    const auto& o = r.origins[static_cast<std::size_t>(w)];
    out.insert(out.end(), o.begin(), o.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<SplitPartition> enumerate_splits(int degree) {
  int a_size = 0;
  switch (degree) {
    case 5: a_size = 2; break;
    case 6:
    case 7: a_size = 3; break;
    default: throw InputError("only vertices of degree 5, 6 or 7 are split");
  }
  std::vector<SplitPartition> out;
  for (unsigned mask = 0; mask < (1u << degree); ++mask) {
    if (std::popcount(mask) != a_size) continue;
    if (degree == 6 && !(mask & 1u)) continue;
    SplitPartition p;
    for (int i = 0; i < degree; ++i) (mask >> i & 1u ? p.side_a : p.side_b).push_back(i);
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(),
            [](const SplitPartition& x, const SplitPartition& y) { return x.side_a < y.side_a; });
  return out;
}

int count_separating(int degree, int a, int b) {
  int c = 0;
  for (const auto& p : enumerate_splits(degree)) {
    const bool in_a = std::find(p.side_a.begin(), p.side_a.end(), a) != p.side_a.end();
    const bool in_b = std::find(p.side_a.begin(), p.side_a.end(), b) != p.side_a.end();
    c += in_a != in_b ? 1 : 0;
  }
  return c;
}

SplitChoice make_split_choice(const Instance& inst, VertexId v, const SplitPartition& p) {
  const auto& inc = inst.incident(v);
  SplitChoice c;
  c.vertex = v;
  for (int i : p.side_a) c.side_a.push_back(inc.at(static_cast<std::size_t>(i)));
  for (int i : p.side_b) c.side_b.push_back(inc.at(static_cast<std::size_t>(i)));
  return c;
}

SplitResult split_vertex(const Instance& inst, const SplitChoice& choice) {
  const VertexId v = choice.vertex;
  if (v < 0 || v >= inst.n()) throw InputError("split vertex out of range");
  const int d = inst.degree(v);
  const auto a = static_cast<int>(choice.side_a.size());
  const auto b = static_cast<int>(choice.side_b.size());
  const bool sizes_ok = (d == 5 && a == 2 && b == 3) || (d == 6 && a == 3 && b == 3) ||
                        (d == 7 && a == 3 && b == 4);
  if (!sizes_ok) throw InputError("split sides do not match the vertex degree");
  std::vector<EdgeId> all = choice.side_a;
  all.insert(all.end(), choice.side_b.begin(), choice.side_b.end());
  std::sort(all.begin(), all.end());
  std::vector<EdgeId> inc = inst.incident(v);
  std::sort(inc.begin(), inc.end());
  if (all != inc) throw InputError("split sides must partition the incident edges");

  SplitResult res;
  res.new_vertex = inst.n();
  std::vector<Edge> edges = inst.edges();
  for (EdgeId e : choice.side_b) {
    Edge& ed = edges[static_cast<std::size_t>(e)];
    (ed.u == v ? ed.u : ed.v) = res.new_vertex;
  }
  res.bridge = inst.m();
  edges.push_back({res.bridge, v, res.new_vertex, 0});
  std::vector<EdgeId> pre = inst.preforced();
  pre.push_back(res.bridge);
  int max_deg = 3;
  {
    std::vector<int> deg(static_cast<std::size_t>(inst.n() + 1), 0);
    for (const Edge& e : edges) {
      ++deg[static_cast<std::size_t>(e.u)];
      ++deg[static_cast<std::size_t>(e.v)];
    }
    for (int x : deg) max_deg = std::max(max_deg, x);
  }
  res.instance = Instance(inst.n() + 1, std::move(edges), max_deg, inst.cost_scale(), std::move(pre));
  return res;
}

}  // namespace bdtsp
