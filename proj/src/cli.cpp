#include "bdtsp/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "bdtsp/generator.hpp"
#include "bdtsp/instance_io.hpp"
#include "bdtsp/oracle.hpp"
#include "bdtsp/quantum_cost.hpp"

namespace bdtsp::cli {

namespace {

using nlohmann::ordered_json;

// Ordered key/value report printed as "key=value" lines, optionally
// followed by the same data as one JSON object.
class Report {
 public:
  template <class T>
  void put(const std::string& key, const T& value) {
    data_[key] = value;
  }
  ordered_json& json() { return data_; }

  void print(std::ostream& out, bool with_json) const {
    for (const auto& [key, value] : data_.items()) out << key << '=' << flat(value) << '\n';
    if (with_json) out << data_.dump(2) << '\n';
  }

  static std::string flat(const ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      std::string s;
      for (const auto& x : v) s += (s.empty() ? "" : " ") + flat(x);
      return s;
    }
    return v.dump();
  }

 private:
  ordered_json data_ = ordered_json::object();
};

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::vector<int> one_based(const std::vector<std::int32_t>& ids) {
  std::vector<int> out;
  for (auto id : ids) out.push_back(id + 1);
  return out;
}

void put_instance(Report& r, const Instance& inst) {
  r.put("digest", hex64(instance_digest(inst)));
  r.put("n", inst.n());
  r.put("m", inst.m());
  r.put("degree_bound", inst.degree_bound());
  r.put("max_degree", inst.max_degree());
  r.put("cost_scale", inst.cost_scale());
}

void put_stats(Report& r, const SearchStats& s) {
  r.put("tree_nodes", s.tree_nodes);
  r.put("max_depth", s.max_depth);
  r.put("p_calls", s.p_calls);
  r.put("h_calls", s.h_calls);
  r.put("pruned_false", s.pruned_false);
  r.put("accepted", s.accepted);
  r.put("internal", s.internal);
}

void put_estimate(Report& r, const QuantumCostReport& q) {
  r.put("model", "unit-constant model estimate");
  r.put("T", q.tree_nodes);
  r.put("v", q.v);
  r.put("v_per_n", q.v_per_n);
  r.put("delta", q.delta_total);
  r.put("delta_per_run", q.delta_per_run);
  r.put("backtracking_calls", q.backtracking_calls);
  r.put("repetitions", q.repetitions);
  r.put("split_vertices_56", q.split56);
  r.put("split_vertices_7", q.split7);
  r.put("amplification", q.amplification);
  r.put("total_queries", q.total_queries);
  r.put("L", q.max_cost);
  r.put("L_prime", q.upper_bound);
  r.put("log2_T_per_n", q.log2_tree_per_n);
  r.put("exponent_degree", q.exponents.degree);
  if (q.exponents.classical)
    r.put("classical_base", *q.exponents.classical);
  else
    r.put("classical_base", "none");
  r.put("quantum_base", q.exponents.quantum);
  r.put("classical_source", q.exponents.classical_source);
  r.put("quantum_source", q.exponents.quantum_source);
  if (q.exponents.classical_underlying) {
    r.put("classical_underlying", *q.exponents.classical_underlying);
    r.put("quantum_underlying", *q.exponents.quantum_underlying);
  }
  if (!q.exponents.note.empty()) r.put("exponent_note", q.exponents.note);
  r.put("quantum_speedup", q.exponents.quantum_speedup);
}

void put_tour(Report& r, const std::optional<Tour>& t, Cost scale) {
  if (!t) {
    r.put("answer", "none");
    return;
  }
  r.put("answer", t->total_cost);
  r.put("cost", t->total_cost);
  r.put("cost_scaled", t->total_cost * scale);
  r.put("tour", one_based(t->vertices));
  r.put("tour_edges", one_based(t->edges));
}

std::pair<int, int> split_counts(const Instance& inst) {
  int f = 0, k = 0;
  for (VertexId v = 0; v < inst.n(); ++v) {
    const int d = inst.degree(v);
    if (d == 5 || d == 6) ++f;
    if (d == 7) ++k;
  }
  return {f, k};
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string join_ids(const std::vector<std::int32_t>& ids) {
  std::string s;
  for (auto id : ids) s += (s.empty() ? "" : ",") + std::to_string(id + 1);
  return s.empty() ? "-" : s;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size();
  return k % 2 ? v[k / 2] : (v[k / 2 - 1] + v[k / 2]) / 2.0;
}

}  // namespace

PartialAssignment parse_assignment(const std::string& text) {
  PartialAssignment a;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
               item.end());
    if (item.empty()) continue;
    const char sign = item.back();
    if ((sign != '+' && sign != '-') || item.size() < 2)
      throw InputError("assignment item '" + item + "' must look like 3+ or 5-");
    int edge = 0;
    try {
      std::size_t used = 0;
      edge = std::stoi(item.substr(0, item.size() - 1), &used);
      if (used != item.size() - 1) throw InputError("");
    } catch (const std::exception&) {
      throw InputError("assignment item '" + item + "' has a malformed edge number");
    }
    if (edge < 1) throw InputError("edge numbers are 1-indexed");
    for (const auto& s : a)
      if (s.edge == edge - 1) throw InputError("edge " + std::to_string(edge) + " assigned twice");
    a.push_back({edge - 1, sign == '+' ? Decision::force : Decision::remove});
  }
  return a;
}

SearchStats measure_tree(const Instance& inst) {
  const Instance base = inst.max_degree() > 4 ? apply_split_combination(inst, 0) : inst;
  return backtrack(base, std::nullopt, {true}).stats;
}

int cmd_solve(const SolveArgs& args, std::ostream& out) {
  const Instance inst = load_instance(args.path, args.degree);
  const auto t0 = std::chrono::steady_clock::now();
  Report r;
  put_instance(r, inst);
  std::optional<Tour> tour;
  SearchStats stats;
  if (args.threshold) {
    if (inst.max_degree() > 4) throw InputError("--threshold needs an instance of maximum degree 4");
    BacktrackResult b = backtrack(inst, *args.threshold);
    tour = b.tour;
    stats = b.stats;
    r.put("mode", "threshold");
    r.put("threshold", *args.threshold);
    put_tour(r, tour, inst.cost_scale());
    put_stats(r, stats);
  } else {
    SolveReport s = solve(inst, {args.split_mode, args.seed, std::nullopt});
    tour = s.tour;
    r.put("mode", "optimum");
    put_tour(r, tour, inst.cost_scale());
    put_stats(r, s.stats);
    r.put("backtrack_runs", s.backtrack_runs);
    r.put("max_runs_per_solve", s.max_runs_per_solve);
    r.put("repetition_bound_held", s.repetition_bound_held);
    r.put("sub_solves", s.sub_solves);
    r.put("exact", s.exact);
  }
  bool agrees = true;
  if (args.oracle) {
    const auto o = oracle::optimal_tour(inst);
    r.put("oracle_answer", o ? ordered_json(o->total_cost) : ordered_json("none"));
    if (args.threshold)
      agrees = tour.has_value() == (o && o->total_cost < *args.threshold);
    else
      agrees = o.has_value() == tour.has_value() && (!o || o->total_cost == tour->total_cost);
    r.put("oracle_agrees", agrees);
  }
  const auto [f, k] = split_counts(inst);
  put_estimate(r, tsp_estimate(measure_tree(inst), inst, args.delta, f, k));
  r.put("wall_ms", elapsed_ms(t0));
  r.print(out, args.json);
  return agrees ? kOk : kMismatch;
}

int cmd_reduce(const ReduceArgs& args, std::ostream& out) {
  const Instance inst = load_instance(args.path, args.degree);
  const PartialAssignment a = parse_assignment(args.assign);
  for (const auto& s : a)
    if (s.edge >= inst.m()) throw InputError("edge " + std::to_string(s.edge + 1) + " does not exist");
  const ReducedInstance red = reduce(inst, a);
  ordered_json events = ordered_json::array();
  for (std::size_t i = 0; i < red.trace.size(); ++i) {
    const auto& ev = red.trace[i];
    out << "event=" << i + 1 << " kind=" << to_string(ev.kind) << " edges=" << join_ids(ev.subject)
        << " vertices=" << join_ids(ev.vertices);
    if (ev.decision) out << " decision=" << to_string(*ev.decision);
    out << " forced=" << join_ids(ev.forced) << " deleted=" << join_ids(ev.deleted)
        << " scale=" << ev.scale_after << '\n';
    ordered_json j;
    j["kind"] = to_string(ev.kind);
    j["edges"] = one_based(ev.subject);
    j["vertices"] = one_based(ev.vertices);
    if (ev.decision) j["decision"] = to_string(*ev.decision);
    j["forced"] = one_based(ev.forced);
    j["deleted"] = one_based(ev.deleted);
    j["scale"] = ev.scale_after;
    events.push_back(std::move(j));
  }
  Report r;
  put_instance(r, inst);
  r.put("events", red.trace.size());
  r.put("infeasible", red.infeasible);
  if (red.infeasible) r.put("reason", red.reason);
  r.put("live_vertices", red.graph.live_vertex_count());
  std::vector<EdgeId> forced, unforced, deleted;
  for (EdgeId e = 0; e < red.graph.edge_count(); ++e) {
    if (red.graph.is_forced(e)) forced.push_back(e);
    if (red.graph.is_unforced(e)) unforced.push_back(e);
    if (red.graph.state(e) == EdgeState::deleted) deleted.push_back(e);
  }
  r.put("forced_edges", join_ids(forced));
  r.put("unforced_edges", join_ids(unforced));
  r.put("deleted_edges", join_ids(deleted));
  r.put("contractions", red.contractions.size());
  r.put("four_cut_constraints", red.constraints.size());
  r.put("working_scale", red.scale);
  r.put("predicate", to_string(evaluate(red, std::nullopt).result));
  if (args.json) r.json()["trace"] = events;
  r.print(out, args.json);
  return kOk;
}

int cmd_estimate(const EstimateArgs& args, std::ostream& out) {
  const Instance inst = load_instance(args.path, args.degree);
  const auto [f, k] = split_counts(inst);
  const SearchStats stats = measure_tree(inst);
  Report r;
  put_instance(r, inst);
  put_estimate(r, tsp_estimate(stats, inst, args.delta, f, k));
  r.print(out, args.json);
  return kOk;
}

int cmd_bench(const BenchArgs& args, std::ostream& out) {
  if (args.count < 1) throw InputError("bench needs at least one instance per size");
  ordered_json rows = ordered_json::array();
  for (int n : args.sizes) {
    std::vector<double> ratio;
    std::vector<double> sizes;
    int hamiltonian = 0;
    for (int i = 0; i < args.count; ++i) {
      const Instance inst = gen_random(n, args.degree, args.cost_max, args.seed + static_cast<std::uint64_t>(i),
                                       {args.degree > 4 ? 1 : -1, 1.0});
      const SearchStats s = measure_tree(inst);
      hamiltonian += s.accepted > 0 ? 1 : 0;
      sizes.push_back(static_cast<double>(s.tree_nodes));
      ratio.push_back(std::log2(static_cast<double>(s.tree_nodes)) / n);
    }
    const double med = median(ratio);
    const double worst = *std::max_element(ratio.begin(), ratio.end());
    out << "n=" << n << " instances=" << args.count << " hamiltonian=" << hamiltonian
        << " median_T=" << median(sizes) << " median_log2T_per_n=" << med
        << " max_log2T_per_n=" << worst << '\n';
    rows.push_back({{"n", n},
                    {"instances", args.count},
                    {"hamiltonian", hamiltonian},
                    {"median_T", median(sizes)},
                    {"median_log2T_per_n", med},
                    {"max_log2T_per_n", worst}});
  }
  if (args.json) out << rows.dump(2) << '\n';
  return kOk;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  if (args.count < 1) throw InputError("verify needs at least one instance");
  int agree = 0, hamiltonian = 0, mismatches = 0;
  const int high = args.degree == 7 ? 1 : 2;
  for (int i = 0; i < args.count; ++i) {
    const std::uint64_t seed = args.seed + static_cast<std::uint64_t>(i);
    const Instance inst = gen_random(args.n, args.degree, args.cost_max, seed,
                                     {args.degree > 4 ? high : -1, 1.0});
    const auto o = oracle::optimal_tour(inst);
    const SolveReport s = solve(inst, {args.split_mode, seed, std::nullopt});
    const bool same = o.has_value() == s.tour.has_value() && (!o || o->total_cost == s.tour->total_cost);
    hamiltonian += o ? 1 : 0;
    if (same) {
      ++agree;
    } else {
      ++mismatches;
      out << "mismatch seed=" << seed << " oracle=" << (o ? std::to_string(o->total_cost) : "none")
          << " solver=" << (s.tour ? std::to_string(s.tour->total_cost) : "none") << '\n';
    }
  }
  Report r;
  r.put("degree", args.degree);
  r.put("n", args.n);
  r.put("instances", args.count);
  r.put("hamiltonian", hamiltonian);
  r.put("agree", agree);
  r.put("mismatches", mismatches);
  r.print(out, args.json);
  return mismatches == 0 ? kOk : kMismatch;
}

int cmd_gen(const GenArgs& args, std::ostream& out) {
  out << serialize_instance(
      gen_random(args.n, args.degree, args.cost_max, args.seed, {args.max_high_degree, args.fill}));
  return kOk;
}

}  // namespace bdtsp::cli
