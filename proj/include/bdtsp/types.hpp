#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bdtsp {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using Cost = std::int64_t;

inline constexpr VertexId kNoVertex = -1;
inline constexpr EdgeId kNoEdge = -1;

// Malformed or out-of-contract input (exit code 1 at the command line).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Problem too large for the exact routines (exit code 3).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A broken internal invariant. Never raised by well-formed input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class EdgeState : std::uint8_t { unforced, forced, deleted };

const char* to_string(EdgeState s);

struct Edge {
  EdgeId id = kNoEdge;
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;
  Cost cost = 0;

  VertexId other(VertexId w) const { return w == u ? v : u; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Weighted undirected multigraph with a degree bound.
///
/// Vertices are 0-based. Edge ids equal their index in edges() and never
/// change. Edges listed in `preforced` must appear in every tour; they are
/// the zero-cost bridges created by vertex splitting, and are the only edges
/// allowed a cost of 0.
class Instance {
 public:
  Instance() = default;
  Instance(int n, std::vector<Edge> edges, int degree_bound,
           Cost cost_scale = 2, std::vector<EdgeId> preforced = {});

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  int degree_bound() const { return degree_bound_; }
  Cost cost_scale() const { return cost_scale_; }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
  const std::vector<EdgeId>& incident(VertexId v) const {
    return incident_.at(static_cast<std::size_t>(v));
  }
  int degree(VertexId v) const { return static_cast<int>(incident(v).size()); }
  int max_degree() const;

  const std::vector<EdgeId>& preforced() const { return preforced_; }
  bool is_preforced(EdgeId e) const;

  /// Largest edge cost (L).
  Cost max_cost() const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ &&
           a.degree_bound_ == b.degree_bound_ &&
           a.cost_scale_ == b.cost_scale_ && a.preforced_ == b.preforced_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  int degree_bound_ = 3;
  Cost cost_scale_ = 2;
  std::vector<EdgeId> preforced_;
  std::vector<std::vector<EdgeId>> incident_;
};

/// Hamiltonian cycle given as a cyclic vertex sequence. `edges[i]` joins
/// vertices[i] and vertices[(i + 1) % n]; the edge list disambiguates
/// parallel edges and may be left empty, in which case the cheapest edge
/// between each consecutive pair is assumed.
struct Tour {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
  Cost total_cost = 0;
};

/// Builds a tour from an unordered edge set that forms one Hamiltonian cycle
/// of `inst`. Returns nullopt if the edges do not form such a cycle.
std::optional<Tour> tour_from_edges(const Instance& inst,
                                    std::span<const EdgeId> edge_ids);

}  // namespace bdtsp
