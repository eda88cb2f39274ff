#pragma once

#include <cstdint>

#include "bdtsp/types.hpp"

namespace bdtsp {

struct GenOptions {
  /// How many vertices may exceed degree 4; negative means no limit.
  int max_high_degree = -1;
  /// Probability of keeping each candidate edge once the spanning tree is
  /// in place; 1.0 saturates the degree bound.
  double fill = 1.0;
};

/// Connected simple random graph with maximum degree <= degree_bound and
/// costs uniform in [1, cost_max]. Deterministic per seed.
Instance gen_random(int n, int degree_bound, Cost cost_max, std::uint64_t seed,
                    GenOptions options = {});

}  // namespace bdtsp
