#include "bdtsp/quantum_cost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bdtsp {

ExponentRow exponent_table(int degree) {
  ExponentRow r;
  r.degree = degree;
  switch (degree) {
    case 3:
      r.classical = 1.232;
      r.quantum = 1.110;
      r.classical_source = "O*(1.232^n) Xiao-Nagamochi degree-3 backtracking";
      r.quantum_source = "O*(1.110^n polylog L): quantum backtracking over a 2^(3n/10) tree";
      r.classical_underlying = std::pow(2.0, 0.3);
      r.quantum_underlying = std::pow(2.0, 0.15);
      break;
    case 4:
      r.classical = 1.692;
      r.quantum = 1.301;
      r.classical_source = "O*(1.692^n) Xiao-Nagamochi degree-4 backtracking";
      r.quantum_source = "O*(1.301^n polylog L): quantum backtracking";
      r.note = "O*(1.657^n L) Bjorklund is faster when L is subexponential";
      break;
    case 5:
    case 6:
      r.classical = 1.657;
      r.quantum = 1.680;
      r.classical_source = "O*(1.657^n L) Bjorklund, randomised";
      r.quantum_source = "O*(1.680^n polylog L): (10/6)^(f/2) split repetitions of the degree-4 algorithm";
      r.note = "classical bound depends on the maximum edge cost L";
      break;
    case 7:
      r.classical = 2.0;
      r.quantum = 2.222;
      r.classical_source = "O*(2^n) Held-Karp";
      r.quantum_source = "O*(2.222^n polylog L): (35/20)^(k/2) split repetitions";
      r.note = "no quantum speedup over O*(2^n) Held-Karp or O*(1.984^n) Bjorklund et al.";
      r.quantum_speedup = false;
      break;
    default:
      throw InputError("exponent table covers degrees 3 to 7, got " + std::to_string(degree));
  }
  return r;
}

double backtracking_calls_model(double tree_nodes, double v, double delta) {
  if (!(tree_nodes >= 1)) throw InputError("tree size must be at least 1");
  if (!(v >= 2)) throw InputError("variable count must be at least 2");
  if (!(delta > 0 && delta < 1)) throw InputError("failure probability must lie in (0, 1)");
  return std::sqrt(tree_nodes) * std::pow(v, 1.5) * std::log2(v) * std::log2(1.0 / delta);
}

std::int64_t backtracking_calls(std::int64_t tree_nodes, std::int64_t v, double delta) {
  const double x = std::ceil(backtracking_calls_model(static_cast<double>(tree_nodes),
                                                      static_cast<double>(v), delta));
  if (x >= static_cast<double>(std::numeric_limits<std::int64_t>::max()))
    throw ResourceError("predicted call count overflows");
  return static_cast<std::int64_t>(x);
}

double split_amplification(int split56, int split7) {
  if (split56 < 0 || split7 < 0) throw InputError("split counts must be nonnegative");
  return std::pow(10.0 / 6.0, (split56 + split7) / 2.0) * std::pow(35.0 / 20.0, split7 / 2.0);
}

QuantumCostReport tsp_estimate(const SearchStats& stats, const Instance& inst, double delta_total,
                               int split56, int split7) {
  QuantumCostReport q;
  q.tree_nodes = std::max<std::int64_t>(1, stats.tree_nodes);
  q.v = std::max(2, inst.m());
  q.n = inst.n();
  q.v_per_n = static_cast<double>(inst.m()) / inst.n();
  q.max_cost = inst.max_cost();
  q.upper_bound = compute_upper_bound(inst);
  q.repetitions = repetition_bound(q.upper_bound);
  q.delta_total = delta_total;
  if (!(delta_total > 0 && delta_total < 1))
    throw InputError("failure probability must lie in (0, 1)");
  q.delta_per_run = delta_total / q.repetitions;
  q.backtracking_calls = backtracking_calls(q.tree_nodes, q.v, q.delta_per_run);
  q.split56 = split56;
  q.split7 = split7;
  q.amplification = split_amplification(split56, split7);
  q.total_queries = q.amplification * q.repetitions * static_cast<double>(q.backtracking_calls);
  q.degree = std::clamp(inst.max_degree(), 3, 7);
  q.log2_tree_per_n = std::log2(static_cast<double>(q.tree_nodes)) / inst.n();
  q.exponents = exponent_table(q.degree);
  return q;
}

}  // namespace bdtsp
