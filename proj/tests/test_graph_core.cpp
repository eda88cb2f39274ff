#include <catch_amalgamated.hpp>

#include <algorithm>
#include <functional>
#include <random>

#include "bdtsp/graph.hpp"
#include "fixtures.hpp"

using namespace bdtsp;
using namespace bdtsp::testing;

namespace {

std::vector<EdgeState> all(const Instance& inst, EdgeState s) {
  return std::vector<EdgeState>(static_cast<std::size_t>(inst.m()), s);
}

// Connected and no edge whose removal disconnects: delete each edge in turn.
bool naive_two_edge_connected(const WorkGraph& g) {
  const auto live = g.live_vertices().to_vector();
  auto connected_without = [&](EdgeId skip) {
    VertexSet seen;
    std::vector<VertexId> stack{live.front()};
    seen.insert(live.front());
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (EdgeId e : g.incident(v)) {
        if (e == skip || !g.live(e)) continue;
        const VertexId w = g.edge(e).other(v);
        if (!seen.contains(w)) {
          seen.insert(w);
          stack.push_back(w);
        }
      }
    }
    return seen.size() == static_cast<int>(live.size());
  };
  if (!connected_without(kNoEdge)) return false;
  for (EdgeId e : g.live_edges())
    if (!connected_without(e)) return false;
  return true;
}

}  // namespace

TEST_CASE("two_edge_connected small cases", "[graph_core]") {
  const Instance path = make_instance(3, {{0, 1, 1}, {1, 2, 1}});
  CHECK_FALSE(two_edge_connected(path, all(path, EdgeState::unforced)));

  const Instance c5 = cycle(5, 2);
  CHECK(two_edge_connected(c5, all(c5, EdgeState::unforced)));

  const Instance bowtie =
      make_instance(5, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {2, 3, 1}, {3, 4, 1}, {2, 4, 1}}, 4);
  CHECK(two_edge_connected(bowtie, all(bowtie, EdgeState::unforced)));

  // Deleted edges do not count.
  auto states = all(c5, EdgeState::unforced);
  states[0] = EdgeState::deleted;
  CHECK_FALSE(two_edge_connected(c5, states));
}

TEST_CASE("two_edge_connected rejects an empty graph", "[graph_core]") {
  WorkGraph g(cycle(3, 1));
  for (VertexId v = 0; v < 3; ++v) g.kill_vertex(v);
  CHECK_THROWS_AS(two_edge_connected(g), InputError);
}

TEST_CASE("two_edge_connected matches the delete-each-edge check", "[graph_core]") {
  std::mt19937_64 rng(11);
  int tested = 0;
  for (std::uint64_t seed = 1; tested < 300; ++seed) {
    const int n = 3 + static_cast<int>(seed % 8);
    const Instance inst = random_instance(seed, n, 3 + static_cast<int>(seed % 2), 9, -1, 0.5);
    if (inst.m() > 15) continue;
    WorkGraph g(inst);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (std::bernoulli_distribution(0.15)(rng)) g.set_state(e, EdgeState::deleted);
    ++tested;
    CHECK(two_edge_connected(g) == naive_two_edge_connected(g));
  }
}

TEST_CASE("u_components", "[graph_core]") {
  const Instance c4 = cycle(4, 1);
  auto comps = u_components(c4, all(c4, EdgeState::unforced));
  REQUIRE(comps.size() == 1);
  CHECK(comps[0] == std::vector<VertexId>{0, 1, 2, 3});

  comps = u_components(c4, all(c4, EdgeState::forced));
  CHECK(comps.size() == 4);
  for (const auto& c : comps) CHECK(c.size() == 1);

  const Instance c6 = cycle(6, 1);
  auto states = all(c6, EdgeState::unforced);
  for (EdgeId e = 0; e < 6; e += 2) states[static_cast<std::size_t>(e)] = EdgeState::forced;
  comps = u_components(c6, states);
  REQUIRE(comps.size() == 3);
  for (const auto& c : comps) CHECK(c.size() == 2);
}

TEST_CASE("u_components partition the vertices", "[graph_core]") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Instance inst = random_instance(seed, 4 + static_cast<int>(seed % 9), 3);
    const auto states = random_states(inst, seed, 0.5, 0.5);
    std::vector<int> hits(static_cast<std::size_t>(inst.n()), 0);
    for (const auto& c : u_components(inst, states))
      for (VertexId v : c) ++hits[static_cast<std::size_t>(v)];
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  }
}

TEST_CASE("cut_edges", "[graph_core]") {
  const Instance k4 = k4_powers();
  const auto states = all(k4, EdgeState::unforced);
  const std::vector<VertexId> single{0};
  CHECK(cut_edges(k4, states, single) == std::vector<EdgeId>{0, 1, 2});
  const std::vector<VertexId> triangle{0, 1, 2};
  CHECK(cut_edges(k4, states, triangle) == std::vector<EdgeId>{2, 4, 5});

  const Instance bundle = make_instance(2, {{0, 1, 1}, {0, 1, 2}, {0, 1, 3}, {0, 1, 4}}, 4);
  CHECK(cut_edges(bundle, all(bundle, EdgeState::unforced), std::vector<VertexId>{1}).size() == 4);

  const std::vector<VertexId> none;
  CHECK_THROWS_AS(cut_edges(k4, states, none), InputError);
  const std::vector<VertexId> every{0, 1, 2, 3};
  CHECK_THROWS_AS(cut_edges(k4, states, every), InputError);
}

TEST_CASE("cut of X equals cut of its complement", "[graph_core]") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Instance inst = random_instance(seed, 4 + static_cast<int>(seed % 7), 3 + static_cast<int>(seed % 2));
    const WorkGraph g(inst);
    for (const auto& x : all_subsets(g, inst.n())) {
      const VertexSet rest = g.live_vertices().minus(x);
      REQUIRE(cut_edges(g, x) == cut_edges(g, rest));
    }
  }
}

TEST_CASE("circuits_of on a 4-cycle of single-vertex blocks", "[graph_core]") {
  // Square 0-1-2-3 where every corner also carries a forced edge to a
  // second square 4-5-6-7 that is fully forced.
  const Instance cube = make_instance(8, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}, {0, 4, 1}, {1, 5, 1},
                                          {2, 6, 1}, {3, 7, 1}, {4, 5, 1}, {5, 6, 1}, {6, 7, 1}, {7, 4, 1}});
  std::vector<EdgeState> states(12, EdgeState::unforced);
  for (EdgeId e = 4; e < 8; ++e) states[static_cast<std::size_t>(e)] = EdgeState::forced;
  const WorkGraph g(cube, states);
  const std::vector<VertexId> comp{0, 1, 2, 3};
  const auto circs = circuits_of(g, comp);
  REQUIRE(circs.size() == 1);
  CHECK(circs[0].edges.size() == 4);
  REQUIRE(circs[0].blocks.size() == 4);
  for (const auto& b : circs[0].blocks) CHECK(b.size() == 1);
}

TEST_CASE("single-edge circuit needs three edge-disjoint paths", "[graph_core]") {
  // K4: every edge has three edge-disjoint paths between its ends.
  const WorkGraph g(k4_powers());
  const std::vector<VertexId> comp{0, 1, 2, 3};
  const auto circs = circuits_of(g, comp);
  std::vector<EdgeId> seen;
  for (const auto& c : circs) seen.insert(seen.end(), c.edges.begin(), c.edges.end());
  std::sort(seen.begin(), seen.end());
  CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
  for (const auto& c : circs)
    if (c.single_edge()) {
      const auto& e = g.edge(c.edges[0]);
      CHECK(edge_disjoint_paths(g, e.u, e.v, 3) == 3);
    }
}

TEST_CASE("circuits are edge-disjoint", "[graph_core]") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const Instance inst = random_instance(seed, 6 + static_cast<int>(seed % 7), 3);
    const WorkGraph g(inst, random_states(inst, seed, 0.4, 0.3));
    for (const auto& comp : u_components(g)) {
      if (comp.size() < 2) continue;
      std::vector<EdgeId> seen;
      for (const auto& c : circuits_of(g, comp)) {
        for (EdgeId e : c.edges) CHECK(g.is_unforced(e));
        seen.insert(seen.end(), c.edges.begin(), c.edges.end());
        if (!c.single_edge()) {
          // Each block is touched by exactly its two circuit edges among unforced edges.
          for (std::size_t i = 0; i < c.blocks.size(); ++i) {
            int unforced = 0;
            for (EdgeId e : cut_edges(g, VertexSet(c.blocks[i]))) unforced += g.is_unforced(e) ? 1 : 0;
            CHECK(unforced == 2);
          }
        }
      }
      std::sort(seen.begin(), seen.end());
      CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
    }
  }
}

TEST_CASE("verify_tour", "[graph_core]") {
  const Instance k3 = make_instance(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  CHECK(verify_tour(k3, Tour{{0, 1, 2}, {}, 3}));
  CHECK_FALSE(verify_tour(k3, Tour{{0, 1, 2}, {}, 4}));
  CHECK_FALSE(verify_tour(k3, Tour{{0, 1, 1}, {}, 3}));

  const Instance k4 = k4_powers();
  CHECK(verify_tour(k4, Tour{{0, 2, 1, 3}, {}, 30}));
  CHECK_FALSE(verify_tour(k4, Tour{{0, 2, 1}, {}, 11}));
}

TEST_CASE("instance validation", "[graph_core]") {
  CHECK_THROWS_AS(make_instance(3, {{0, 1, 0}, {1, 2, 1}, {0, 2, 1}}), InputError);
  CHECK_THROWS_AS(make_instance(3, {{0, 0, 1}}), InputError);
  CHECK_THROWS_AS(make_instance(5, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}}, 3), InputError);
  CHECK_THROWS_AS(make_instance(3, {{0, 1, 1}}, 8), InputError);
  // A zero-cost edge is allowed only when preforced.
  CHECK_NOTHROW(make_instance(3, {{0, 1, 0}, {1, 2, 1}, {0, 2, 1}}, 3, {0}));
}
