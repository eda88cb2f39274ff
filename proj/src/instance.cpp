#include <algorithm>
#include <string>

#include "bdtsp/types.hpp"

namespace bdtsp {

const char* to_string(EdgeState s) {
  switch (s) {
    case EdgeState::unforced: return "unforced";
    case EdgeState::forced: return "forced";
    case EdgeState::deleted: return "deleted";
  }
  return "?";
}

Instance::Instance(int n, std::vector<Edge> edges, int degree_bound, Cost cost_scale,
                   std::vector<EdgeId> preforced)
    : n_(n),
      edges_(std::move(edges)),
      degree_bound_(degree_bound),
      cost_scale_(cost_scale),
      preforced_(std::move(preforced)) {
  if (n_ < 2) throw InputError("instance needs at least 2 vertices");
  if (degree_bound_ < 3 || degree_bound_ > 7)
    throw InputError("degree bound must be in 3..7, got " + std::to_string(degree_bound_));
  if (cost_scale_ < 1) throw InputError("cost scale must be positive");
  std::sort(preforced_.begin(), preforced_.end());
  preforced_.erase(std::unique(preforced_.begin(), preforced_.end()), preforced_.end());
  for (EdgeId e : preforced_)
    if (e < 0 || e >= m()) throw InputError("preforced edge id out of range");

  incident_.assign(static_cast<std::size_t>(n_), {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    Edge& e = edges_[i];
    e.id = static_cast<EdgeId>(i);
    if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
      throw InputError("edge " + std::to_string(i + 1) + " has an out-of-range endpoint");
    if (e.u == e.v) throw InputError("edge " + std::to_string(i + 1) + " is a self-loop");
    if (is_preforced(e.id) ? e.cost < 0 : e.cost < 1)
      throw InputError("edge " + std::to_string(i + 1) + " has non-positive cost " +
                       std::to_string(e.cost));
    incident_[static_cast<std::size_t>(e.u)].push_back(e.id);
    incident_[static_cast<std::size_t>(e.v)].push_back(e.id);
  }
  for (VertexId v = 0; v < n_; ++v)
    if (degree(v) > degree_bound_)
      throw InputError("vertex " + std::to_string(v + 1) + " has degree " +
                       std::to_string(degree(v)) + " above the bound " +
                       std::to_string(degree_bound_));
}

int Instance::max_degree() const {
  int d = 0;
  for (VertexId v = 0; v < n_; ++v) d = std::max(d, degree(v));
  return d;
}

bool Instance::is_preforced(EdgeId e) const {
  return std::binary_search(preforced_.begin(), preforced_.end(), e);
}

Cost Instance::max_cost() const {
  Cost best = 0;
  for (const auto& e : edges_) best = std::max(best, e.cost);
  return best;
}

std::optional<Tour> tour_from_edges(const Instance& inst, std::span<const EdgeId> edge_ids) {
  const int n = inst.n();
  if (static_cast<int>(edge_ids.size()) != n) return std::nullopt;
  std::vector<std::vector<EdgeId>> at(static_cast<std::size_t>(n));
  std::vector<EdgeId> sorted(edge_ids.begin(), edge_ids.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return std::nullopt;
  for (EdgeId e : sorted) {
    if (e < 0 || e >= inst.m()) return std::nullopt;
    const Edge& ed = inst.edge(e);
    at[static_cast<std::size_t>(ed.u)].push_back(e);
    at[static_cast<std::size_t>(ed.v)].push_back(e);
  }
  for (const auto& a : at)
    if (a.size() != 2) return std::nullopt;

  Tour t;
  VertexId cur = 0;
  EdgeId came = kNoEdge;
  for (int step = 0; step < n; ++step) {
    t.vertices.push_back(cur);
    const auto& a = at[static_cast<std::size_t>(cur)];
    EdgeId next = a[0] != came ? a[0] : a[1];
    t.edges.push_back(next);
    t.total_cost += inst.edge(next).cost;
    came = next;
    cur = inst.edge(next).other(cur);
  }
  if (cur != 0) return std::nullopt;
  std::vector<VertexId> seen = t.vertices;
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return std::nullopt;
  return t;
}

}  // namespace bdtsp
