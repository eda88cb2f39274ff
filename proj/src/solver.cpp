#include "bdtsp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace bdtsp {

const char* to_string(PredicateResult p) {
  switch (p) {
    case PredicateResult::false_: return "false";
    case PredicateResult::true_: return "true";
    case PredicateResult::indeterminate: return "indeterminate";
  }
  return "?";
}

SearchStats& SearchStats::operator+=(const SearchStats& o) {
  tree_nodes += o.tree_nodes;
  max_depth = std::max(max_depth, o.max_depth);
  p_calls += o.p_calls;
  h_calls += o.h_calls;
  pruned_false += o.pruned_false;
  accepted += o.accepted;
  internal += o.internal;
  return *this;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
    return true;
  }
};

// Partial completion state for the Lemma 1 enumeration.
struct Completion {
  UnionFind uf;
  std::vector<int> deg;
  int edges = 0;
  Cost cost = 0;

  // False if the edge overloads a vertex or closes a cycle early.
  bool add(const WorkGraph& g, EdgeId e, int nv) {
    const auto& w = g.edge(e);
    if (++deg[static_cast<std::size_t>(w.u)] > 2 || ++deg[static_cast<std::size_t>(w.v)] > 2)
      return false;
    ++edges;
    cost += w.cost;
    return uf.unite(w.u, w.v) || edges == nv;
  }
};

std::array<std::array<EdgeId, 2>, 2> four_cycle_matchings(const WorkGraph& g,
                                                          const std::vector<VertexId>& comp) {
  std::array<EdgeId, 4> q{};
  VertexId v = comp.front();
  EdgeId came = kNoEdge;
  for (auto& slot : q) {
    for (EdgeId e : g.incident(v)) {
      if (g.is_unforced(e) && e != came) {
        slot = e;
        break;
      }
    }
    came = slot;
    v = g.edge(slot).other(v);
  }
  return {{{q[0], q[2]}, {q[1], q[3]}}};
}

bool all_trivial_or_four_cycles(const WorkGraph& g,
                                const std::vector<std::vector<VertexId>>& comps) {
  return std::all_of(comps.begin(), comps.end(), [&](const auto& c) {
    return c.size() == 1 || is_four_cycle_component(g, c);
  });
}

Cost scaled_threshold(Cost threshold, Cost scale) {
  if (threshold > std::numeric_limits<Cost>::max() / scale) return std::numeric_limits<Cost>::max();
  if (threshold < std::numeric_limits<Cost>::min() / scale) return std::numeric_limits<Cost>::min();
  return threshold * scale;
}

EdgeId least_unforced_at_least_vertex(const WorkGraph& g, const std::vector<VertexId>& comp) {
  for (VertexId v : comp) {
    EdgeId best = kNoEdge;
    for (EdgeId e : g.incident(v))
      if (g.is_unforced(e) && (best == kNoEdge || e < best)) best = e;
    if (best != kNoEdge) return best;
  }
  return kNoEdge;
}

EdgeId to_instance_edge(const ReducedInstance& r, EdgeId working) {
  const auto& o = r.origins[static_cast<std::size_t>(working)];
  if (o.empty()) throw InternalError("working edge has no instance edge");
  return *std::min_element(o.begin(), o.end());
}

class Explorer {
 public:
  Explorer(const Instance& inst, std::optional<Cost> threshold, bool full)
      : inst_(inst), threshold_(threshold), full_(full) {}

  void visit(const ReducedInstance& node, PartialAssignment& a) {
    ++stats.tree_nodes;
    ++stats.p_calls;
    stats.max_depth = std::max(stats.max_depth, static_cast<int>(a.size()));
    const Evaluation ev = evaluate(node, threshold_);
    if (ev.result == PredicateResult::false_) {
      ++stats.pruned_false;
      return;
    }
    if (ev.result == PredicateResult::true_) {
      ++stats.accepted;
      if (!result.tour) {
        result.assignment = a;
        result.tour = expand_tour(inst_, node, *ev.completion);
      }
      return;
    }
    ++stats.internal;
    ++stats.h_calls;
    const EdgeId e = select_branch_edge(node);
    for (Decision d : {Decision::force, Decision::remove}) {
      if (result.tour && !full_) return;
      a.push_back({e, d});
      visit(extend(node, {e, d}), a);
      a.pop_back();
    }
  }

  BacktrackResult result;
  SearchStats stats;

 private:
  const Instance& inst_;
  std::optional<Cost> threshold_;
  bool full_;
};

void require_degree_four(const Instance& inst) {
  if (inst.max_degree() > 4)
    throw InputError("backtracking needs maximum degree 4; split higher-degree vertices first");
}

}  // namespace

Lemma1Result lemma1_finish(const ReducedInstance& r, std::optional<Cost> bound) {
  const WorkGraph& g = r.graph;
  const auto comps = u_components(g);
  std::vector<std::array<std::array<EdgeId, 2>, 2>> options;
  for (const auto& c : comps) {
    if (c.size() == 1) continue;
    if (!is_four_cycle_component(g, c))
      throw InputError("completion needs every unforced component to be trivial or a 4-cycle");
    options.push_back(four_cycle_matchings(g, c));
  }
  Lemma1Result res;
  if ((std::int64_t{1} << std::min<std::size_t>(options.size(), 62)) > kLemma1Cap) {
    res.declined = true;
    return res;
  }

  const int nv = g.live_vertex_count();
  Completion base{UnionFind(g.vertex_capacity()),
                  std::vector<int>(static_cast<std::size_t>(g.vertex_capacity()), 0), 0, 0};
  std::vector<EdgeId> forced;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (g.is_forced(e)) forced.push_back(e);
  for (EdgeId e : forced)
    if (!base.add(g, e, nv)) return res;

  const VertexSet live = g.live_vertices();
  std::vector<int> choice(options.size(), 0);
  auto search = [&](auto&& self, std::size_t i, Completion cur) -> void {
    if (i == options.size()) {
      if (cur.edges != nv) return;
      const int root = cur.uf.find(live.first());
      for (VertexId v = live.first(); v != kNoVertex; v = live.next(v + 1))
        if (cur.deg[static_cast<std::size_t>(v)] != 2 ||
            cur.uf.find(v) != root)
          return;
      if (bound && cur.cost >= *bound) return;
      if (res.tour && cur.cost >= res.tour->cost) return;
      WorkTour t{forced, cur.cost};
      for (std::size_t k = 0; k < options.size(); ++k) {
        const auto& m = options[k][static_cast<std::size_t>(choice[k])];
        t.edges.insert(t.edges.end(), m.begin(), m.end());
      }
      std::sort(t.edges.begin(), t.edges.end());
      res.tour = std::move(t);
      return;
    }
    for (int o = 0; o < 2; ++o) {
      Completion next = cur;
      const auto& m = options[i][static_cast<std::size_t>(o)];
      if (!next.add(g, m[0], nv) || !next.add(g, m[1], nv)) continue;
      choice[i] = o;
      self(self, i + 1, std::move(next));
    }
  };
  search(search, 0, base);
  return res;
}

Evaluation evaluate(const ReducedInstance& r, std::optional<Cost> threshold) {
  Evaluation out;
  out.result = PredicateResult::false_;
  if (r.infeasible) return out;
  const WorkGraph& g = r.graph;
  if (!two_edge_connected(g) || !parity_condition(r) || !four_cut_constraints_hold(r)) return out;
  std::optional<Cost> bound;
  if (threshold) {
    bound = scaled_threshold(*threshold, r.scale);
    Cost lower = 0;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (g.is_forced(e)) lower += g.edge(e).cost;
      if (g.is_unforced(e)) lower += std::min<Cost>(0, g.edge(e).cost);
    }
    if (lower >= *bound) return out;
  }
  if (!all_trivial_or_four_cycles(g, u_components(g))) {
    out.result = PredicateResult::indeterminate;
    return out;
  }
  Lemma1Result fin = lemma1_finish(r, bound);
  if (fin.declined) {
    out.result = PredicateResult::indeterminate;
  } else if (fin.tour) {
    out.result = PredicateResult::true_;
    out.completion = std::move(fin.tour);
  }
  return out;
}

PredicateResult predicate(const Instance& inst, const PartialAssignment& assignment,
                          std::optional<Cost> threshold) {
  return evaluate(reduce(inst, assignment), threshold).result;
}

EdgeId select_branch_edge(const ReducedInstance& r) {
  const WorkGraph& g = r.graph;
  const auto comps = u_components(g);
  for (const auto& comp : comps) {
    if (comp.size() < 2 || is_four_cycle_component(g, comp)) continue;
    const auto circs = circuits_of(g, comp);
    if (!circs.empty()) {
      const Circuit* best = &circs.front();
      for (const auto& c : circs)
        if (c.edges.size() > best->edges.size() ||
            (c.edges.size() == best->edges.size() && c.edges < best->edges))
          best = &c;
      return to_instance_edge(r, *std::min_element(best->edges.begin(), best->edges.end()));
    }
    const EdgeId e = least_unforced_at_least_vertex(g, comp);
    if (e != kNoEdge) return to_instance_edge(r, e);
  }
  // Only reachable when the completion enumeration declined: branch inside a 4-cycle.
  for (const auto& comp : comps) {
    if (comp.size() < 2) continue;
    const EdgeId e = least_unforced_at_least_vertex(g, comp);
    if (e != kNoEdge) return to_instance_edge(r, e);
  }
  throw InputError("no unforced component left to branch on");
}

EdgeId heuristic(const Instance& inst, const PartialAssignment& assignment) {
  return select_branch_edge(reduce(inst, assignment));
}

Tour expand_tour(const Instance& inst, const ReducedInstance& r, const WorkTour& t) {
  const auto ids = expand_tour_edges(r, t.edges);
  auto tour = tour_from_edges(inst, ids);
  if (!tour) throw InternalError("expanded edges do not form a Hamiltonian cycle");
  if (tour->total_cost * r.scale != t.cost)
    throw InternalError("expanded tour cost does not match the reduced tour cost");
  if (!verify_tour(inst, *tour)) throw InternalError("expanded tour fails verification");
  return *tour;
}

BacktrackResult backtrack(const Instance& inst, std::optional<Cost> threshold,
                          BacktrackOptions options) {
  require_degree_four(inst);
  Explorer ex(inst, threshold, options.full_tree);
  PartialAssignment a;
  ex.visit(reduce(inst, {}), a);
  ex.result.stats = ex.stats;
  return ex.result;
}

int repetition_bound(Cost first_cost) {
  int bits = 0;
  while ((Cost{1} << bits) < first_cost + 1) ++bits;
  return 2 + bits;
}

OptimumResult binary_search_optimum(const Instance& inst, std::optional<Cost> cap) {
  OptimumResult res;
  BacktrackResult first = backtrack(inst, cap);
  res.runs = 1;
  res.stats += first.stats;
  if (!first.tour) return res;
  res.tour = first.tour;
  res.first_cost = first.tour->total_cost;
  Cost lo = 0;
  Cost hi = *res.first_cost;
  while (lo < hi) {
    const Cost t = lo + (hi - lo + 1) / 2;
    res.thresholds.push_back(t);
    BacktrackResult run = backtrack(inst, t);
    ++res.runs;
    res.stats += run.stats;
    if (run.tour) {
      res.tour = run.tour;
      hi = run.tour->total_cost;
    } else {
      lo = t;
    }
  }
  return res;
}

Cost compute_upper_bound(const Instance& inst) {
  Cost total = 0;
  for (VertexId v = 0; v < inst.n(); ++v) {
    Cost best = 0;
    for (EdgeId e : inst.incident(v)) best = std::max(best, inst.edge(e).cost);
    total += best;
  }
  return total;
}

Tour reconstruct_tour(const Instance& inst, const PartialAssignment& accepting) {
  const ReducedInstance r = reduce(inst, accepting);
  const Evaluation ev = evaluate(r, std::nullopt);
  if (ev.result != PredicateResult::true_ || !ev.completion)
    throw InternalError("assignment is not accepted by the predicate");
  return expand_tour(inst, r, *ev.completion);
}

namespace {

struct SplitPlan {
  VertexId vertex;
  int degree;
  int options;
};

std::vector<SplitPlan> split_plan(const Instance& inst) {
  std::vector<SplitPlan> plan;
  for (VertexId v = 0; v < inst.n(); ++v) {
    const int d = inst.degree(v);
    if (d <= 4) continue;
    if (d > 7) throw InputError("vertex degree above 7 is unsupported");
    plan.push_back({v, d, d == 7 ? 35 * 10 : 10});
  }
  return plan;
}

Instance apply_splits(const Instance& inst, const std::vector<SplitPlan>& plan,
                      std::int64_t index) {
  Instance cur = inst;
  for (const auto& p : plan) {
    const int pick = static_cast<int>(index % p.options);
    index /= p.options;
    const auto first = enumerate_splits(p.degree);
    const int idx = p.degree == 7 ? pick / 10 : pick;
    SplitResult s = split_vertex(cur, make_split_choice(cur, p.vertex, first[static_cast<std::size_t>(idx)]));
    cur = std::move(s.instance);
    if (p.degree == 7) {
      const auto second = enumerate_splits(5);
      const auto& part = second[static_cast<std::size_t>(pick % 10)];
      cur = split_vertex(cur, make_split_choice(cur, s.new_vertex, part)).instance;
    }
  }
  return cur;
}

}  // namespace

std::int64_t split_combinations(const Instance& inst) {
  std::int64_t total = 1;
  for (const auto& p : split_plan(inst)) {
    if (total > std::numeric_limits<std::int64_t>::max() / p.options)
      throw ResourceError("too many splitting combinations");
    total *= p.options;
  }
  return total;
}

Instance apply_split_combination(const Instance& inst, std::int64_t index) {
  if (index < 0 || index >= split_combinations(inst))
    throw InputError("split combination index out of range");
  return apply_splits(inst, split_plan(inst), index);
}

SolveReport solve(const Instance& inst, const SolveOptions& options) {
  const auto plan = split_plan(inst);
  SolveReport rep;
  for (const auto& p : plan) (p.degree == 7 ? rep.split7 : rep.split56) += 1;

  auto run_one = [&](const Instance& sub) {
    const std::optional<Cost> cap =
        rep.tour ? std::optional<Cost>(rep.tour->total_cost) : std::nullopt;
    OptimumResult o = binary_search_optimum(sub, cap);
    ++rep.sub_solves;
    rep.stats += o.stats;
    rep.backtrack_runs += o.runs;
    rep.max_runs_per_solve = std::max(rep.max_runs_per_solve, o.runs);
    if (o.first_cost ? o.runs > repetition_bound(*o.first_cost) : o.runs != 1)
      rep.repetition_bound_held = false;
    if (!o.tour) return;
    std::vector<EdgeId> ids;
    for (EdgeId e : o.tour->edges)
      if (e < inst.m()) ids.push_back(e);
    auto t = tour_from_edges(inst, ids);
    if (!t || t->total_cost != o.tour->total_cost || !verify_tour(inst, *t))
      throw InternalError("split tour does not map back to the original instance");
    rep.tour = std::move(t);
  };

  if (plan.empty()) {
    run_one(inst);
    return rep;
  }

  const std::int64_t total = split_combinations(inst);
  if (options.split_mode == SplitMode::exhaustive) {
    for (std::int64_t c = 0; c < total; ++c) run_one(apply_splits(inst, plan, c));
    return rep;
  }

  rep.exact = false;
  double expected = 1.0;
  for (const auto& p : plan) expected *= p.degree == 7 ? 350.0 / 120.0 : 10.0 / 6.0;
  const std::int64_t draws =
      options.sample_draws ? *options.sample_draws : static_cast<std::int64_t>(std::ceil(3.0 * expected));
  if (draws < 1) throw InputError("sample draw count must be positive");
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::int64_t> pick(0, total - 1);
  for (std::int64_t d = 0; d < draws; ++d) run_one(apply_splits(inst, plan, pick(rng)));
  return rep;
}

}  // namespace bdtsp
