#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "bdtsp/solver.hpp"
#include "bdtsp/types.hpp"

namespace bdtsp {

/// Per-degree growth rates (base of n) of the best classical algorithm and
/// of the quantum backtracking algorithm.
struct ExponentRow {
  int degree = 0;
  std::optional<double> classical;
  double quantum = 0;
  std::string classical_source;
  std::string quantum_source;
  std::string note;
  // Degree 3 only: 2^(3/10) and 2^(3/20).
  std::optional<double> classical_underlying;
  std::optional<double> quantum_underlying;
  bool quantum_speedup = true;
};

ExponentRow exponent_table(int degree);

/// sqrt(T) * v^1.5 * log2(v) * log2(1/delta), unit constant.
double backtracking_calls_model(double tree_nodes, double v, double delta);

/// Ceiling of the model. Requires T >= 1, v >= 2, 0 < delta < 1.
std::int64_t backtracking_calls(std::int64_t tree_nodes, std::int64_t v, double delta);

/// Overhead of repeating the degree-4 algorithm over random splits:
/// (10/6)^((f + k)/2) * (35/20)^(k/2), where the k degree-7 vertices each
/// leave a degree-5 vertex that is split again.
double split_amplification(int split56, int split7);

struct QuantumCostReport {
  std::int64_t tree_nodes = 0;  // T
  int v = 0;                    // variables = edges
  int n = 0;
  double v_per_n = 0;
  double delta_total = 0;
  double delta_per_run = 0;
  std::int64_t backtracking_calls = 0;
  int repetitions = 0;
  double amplification = 1;
  double total_queries = 0;
  int degree = 0;
  int split56 = 0;
  int split7 = 0;
  Cost max_cost = 0;     // L
  Cost upper_bound = 0;  // L'
  double log2_tree_per_n = 0;
  ExponentRow exponents;
};

/// Model estimate for a completed solve. `stats.tree_nodes` is T.
QuantumCostReport tsp_estimate(const SearchStats& stats, const Instance& inst, double delta_total,
                               int split56 = 0, int split7 = 0);

}  // namespace bdtsp
