#pragma once

#include <span>
#include <vector>

#include "bdtsp/types.hpp"
#include "bdtsp/vertex_set.hpp"

namespace bdtsp {

struct WorkEdge {
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;
  Cost cost = 0;
  EdgeState state = EdgeState::unforced;

  VertexId other(VertexId w) const { return w == u ? v : u; }
  friend bool operator==(const WorkEdge&, const WorkEdge&) = default;
};

/// Mutable multigraph with a per-edge state overlay.
///
/// Edge ids are stable: an edge is never erased, only marked deleted or
/// left dangling on a dead vertex. An edge is live iff it is not deleted
/// and both endpoints are alive. Vertices created by contraction or
/// splitting are appended, so ids also stay unique.
class WorkGraph {
 public:
  WorkGraph() = default;
  /// All edges unforced except the instance's preforced edges.
  explicit WorkGraph(const Instance& inst);
  WorkGraph(const Instance& inst, std::span<const EdgeState> states);

  int vertex_capacity() const { return static_cast<int>(alive_.size()); }
  bool alive(VertexId v) const { return alive_[static_cast<std::size_t>(v)] != 0; }
  int live_vertex_count() const;
  VertexSet live_vertices() const;

  int edge_count() const { return static_cast<int>(edges_.size()); }
  const WorkEdge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  EdgeState state(EdgeId e) const { return edge(e).state; }
  bool live(EdgeId e) const {
    const auto& w = edge(e);
    return w.state != EdgeState::deleted && alive(w.u) && alive(w.v);
  }
  bool is_forced(EdgeId e) const { return live(e) && state(e) == EdgeState::forced; }
  bool is_unforced(EdgeId e) const { return live(e) && state(e) == EdgeState::unforced; }

  /// Every edge ever attached to v, live or not.
  const std::vector<EdgeId>& incident(VertexId v) const {
    return incident_[static_cast<std::size_t>(v)];
  }
  int live_degree(VertexId v) const;
  int forced_degree(VertexId v) const;
  std::vector<EdgeId> live_edges() const;

  void set_state(EdgeId e, EdgeState s) { edges_[static_cast<std::size_t>(e)].state = s; }
  void set_cost(EdgeId e, Cost c) { edges_[static_cast<std::size_t>(e)].cost = c; }
  VertexId add_vertex();
  EdgeId add_edge(VertexId u, VertexId v, Cost cost, EdgeState state);
  void kill_vertex(VertexId v) { alive_[static_cast<std::size_t>(v)] = 0; }
  void revive_vertex(VertexId v) { alive_[static_cast<std::size_t>(v)] = 1; }
  /// Re-attach the `from` end of edge e to vertex `to`.
  void move_endpoint(EdgeId e, VertexId from, VertexId to);

  friend bool operator==(const WorkGraph&, const WorkGraph&) = default;

 private:
  std::vector<std::uint8_t> alive_;
  std::vector<WorkEdge> edges_;
  std::vector<std::vector<EdgeId>> incident_;
};

/// A circuit inside a U-component. For a cyclic circuit, blocks[i] is the
/// vertex set lying between edges[i] and edges[(i + 1) % size]. A
/// single-edge circuit has no blocks.
struct Circuit {
  std::vector<EdgeId> edges;
  std::vector<std::vector<VertexId>> blocks;

  bool single_edge() const { return blocks.empty(); }
  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// True iff the non-deleted part of the graph is connected and bridgeless.
/// Throws InputError("empty instance") when no vertex is alive.
bool two_edge_connected(const WorkGraph& g);
bool two_edge_connected(const Instance& inst, std::span<const EdgeState> states);

/// Maximal connected pieces of the unforced subgraph, including singleton
/// (trivial) components. Sorted by smallest member; members ascending.
std::vector<std::vector<VertexId>> u_components(const WorkGraph& g);
std::vector<std::vector<VertexId>> u_components(const Instance& inst,
                                                std::span<const EdgeState> states);

bool is_four_cycle_component(const WorkGraph& g, std::span<const VertexId> component);

std::vector<Circuit> circuits_of(const WorkGraph& g, std::span<const VertexId> component);

/// Live edges with exactly one endpoint in X. X must be a nonempty proper
/// subset of the live vertices.
std::vector<EdgeId> cut_edges(const WorkGraph& g, const VertexSet& x);
std::vector<EdgeId> cut_edges(const Instance& inst, std::span<const EdgeState> states,
                              std::span<const VertexId> x);

/// Number of pairwise edge-disjoint x-y paths over live edges, capped at limit.
int edge_disjoint_paths(const WorkGraph& g, VertexId x, VertexId y, int limit);

/// Bridges among the given edge ids (multigraph aware).
std::vector<EdgeId> bridges_among(const WorkGraph& g, std::span<const EdgeId> edge_ids);

bool verify_tour(const Instance& inst, const Tour& tour);

}  // namespace bdtsp
