#pragma once

#include <optional>
#include <vector>

#include "bdtsp/graph.hpp"
#include "bdtsp/types.hpp"

namespace bdtsp::oracle {

inline constexpr int kHeldKarpMaxN = 24;
inline constexpr int kBruteForceMaxN = 10;

/// Plain TSP input for the exact reference solvers. Parallel edges and
/// negative costs are allowed; every edge with `forced` set must be used.
struct Problem {
  struct Link {
    VertexId u = kNoVertex;
    VertexId v = kNoVertex;
    Cost cost = 0;
    bool forced = false;
  };
  int n = 0;
  std::vector<Link> links;
  std::vector<EdgeId> source_ids;  // link index -> edge id in the source graph
};

struct Solution {
  Cost cost = 0;
  std::vector<VertexId> order;
  std::vector<int> links;  // link index per consecutive pair, closing pair last
};

Problem from_instance(const Instance& inst);

/// Live part of a working graph; live vertices are relabelled 0..k-1 in
/// ascending order and deleted edges are dropped.
Problem from_graph(const WorkGraph& g);

/// Minimum-cost Hamiltonian cycle by subset dynamic programming.
/// Throws ResourceError above kHeldKarpMaxN vertices.
std::optional<Solution> held_karp(const Problem& p);

/// Minimum-cost Hamiltonian cycle by enumerating vertex orders.
/// Throws ResourceError above kBruteForceMaxN vertices.
std::optional<Solution> brute_force(const Problem& p);

/// Convenience: optimal tour of an instance, in instance terms.
std::optional<Tour> optimal_tour(const Instance& inst);

/// Cheapest Hamiltonian s-t path over all n vertices by enumeration
/// (forced flags ignored). For s == t only n == 1 has a path.
std::optional<Cost> min_ham_path(const Problem& p, VertexId s, VertexId t);

}  // namespace bdtsp::oracle
