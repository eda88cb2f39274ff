#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>

#include "bdtsp/oracle.hpp"
#include "bdtsp/reductions.hpp"
#include "checks.hpp"
#include "fixtures.hpp"

using namespace bdtsp;
using namespace bdtsp::testing;

TEST_CASE("held_karp small instances", "[oracle]") {
  const Instance k3 = make_instance(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  auto hk = oracle::held_karp(oracle::from_instance(k3));
  REQUIRE(hk);
  CHECK(hk->cost == 3);

  hk = oracle::held_karp(oracle::from_instance(k4_powers()));
  REQUIRE(hk);
  CHECK(hk->cost == 30);
  const auto t = oracle::optimal_tour(k4_powers());
  REQUIRE(t);
  CHECK(verify_tour(k4_powers(), *t));
  CHECK(t->total_cost == 30);
}

TEST_CASE("held_karp base case is the direct edge", "[oracle]") {
  // A triangle has one tour, so the optimum equals c01 + c12 + c20.
  for (Cost c = 1; c <= 5; ++c) {
    const Instance tri = make_instance(3, {{0, 1, c}, {1, 2, 2 * c}, {0, 2, 3 * c}});
    CHECK(oracle::held_karp(oracle::from_instance(tri))->cost == 6 * c);
  }
}

TEST_CASE("brute_force small instances", "[oracle]") {
  CHECK(oracle::brute_force(oracle::from_instance(cycle(5, 2)))->cost == 10);
  const Instance split = make_instance(4, {{0, 1, 1}, {2, 3, 1}});
  CHECK_FALSE(oracle::brute_force(oracle::from_instance(split)));
  CHECK_FALSE(oracle::held_karp(oracle::from_instance(split)));
}

TEST_CASE("oracle size guards", "[oracle]") {
  oracle::Problem big;
  big.n = 25;
  CHECK_THROWS_AS(oracle::held_karp(big), ResourceError);
  big.n = 11;
  CHECK_THROWS_AS(oracle::brute_force(big), ResourceError);
}

TEST_CASE("held_karp agrees with brute_force", "[oracle]") {
  const CheckResult r = check_oracles_agree(500, 17);
  INFO(r.first_failure);
  CHECK(r.cases == 500);
  CHECK(r.failures == 0);
}

TEST_CASE("held_karp honours forced links", "[oracle]") {
  // Forcing the cost-32 edge leaves tours 0-1-2-3 (45) and 0-1-3-2 (51).
  oracle::Problem p = oracle::from_instance(k4_powers());
  p.links[5].forced = true;
  const auto hk = oracle::held_karp(p);
  const auto bf = oracle::brute_force(p);
  REQUIRE(hk);
  REQUIRE(bf);
  CHECK(hk->cost == bf->cost);
  CHECK(std::find(hk->links.begin(), hk->links.end(), 5) != hk->links.end());
  CHECK(hk->cost == 45);
}

TEST_CASE("held_karp is invariant under relabelling", "[oracle]") {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Instance inst = random_instance(seed, 4 + static_cast<int>(seed % 9), 3 + static_cast<int>(seed % 2));
    std::vector<VertexId> perm(static_cast<std::size_t>(inst.n()));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<EdgeSpec> es;
    for (const auto& e : inst.edges())
      es.emplace_back(perm[static_cast<std::size_t>(e.u)], perm[static_cast<std::size_t>(e.v)], e.cost);
    const Instance moved = make_instance(inst.n(), es, inst.degree_bound());
    const auto a = oracle::optimal_tour(inst);
    const auto b = oracle::optimal_tour(moved);
    REQUIRE(a.has_value() == b.has_value());
    if (a) CHECK(a->total_cost == b->total_cost);
  }
}

TEST_CASE("a zero-cost forced bridge split leaves the optimum unchanged", "[oracle]") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Instance inst = random_instance(seed, 4 + static_cast<int>(seed % 7), 4);
    // Vertex 0 keeps edge i, a new vertex takes edge j, and a zero-cost
    // forced bridge joins them. The best over all pairs (i, j) is the optimum.
    const auto base = oracle::optimal_tour(inst);
    std::optional<Cost> best;
    const auto& inc = inst.incident(0);
    for (std::size_t i = 0; i < inc.size(); ++i) {
      for (std::size_t j = i + 1; j < inc.size(); ++j) {
        std::vector<EdgeSpec> es;
        for (const auto& e : inst.edges()) {
          VertexId u = e.u, v = e.v;
          if (e.id == inc[j]) (u == 0 ? u : v) = inst.n();
          es.emplace_back(u, v, e.cost);
        }
        // Keep exactly edges inc[i] on vertex 0 plus inc[j] on the new vertex.
        std::vector<EdgeSpec> kept;
        for (std::size_t k = 0; k < es.size(); ++k) {
          const EdgeId id = static_cast<EdgeId>(k);
          const bool at0 = inst.edge(id).u == 0 || inst.edge(id).v == 0;
          if (at0 && id != inc[i] && id != inc[j]) continue;
          kept.push_back(es[k]);
        }
        kept.emplace_back(0, inst.n(), 0);
        const Instance s = make_instance(inst.n() + 1, kept, 4, {static_cast<EdgeId>(kept.size() - 1)});
        if (const auto t = oracle::optimal_tour(s)) {
          if (!best || t->total_cost < *best) best = t->total_cost;
        }
      }
    }
    const std::optional<Cost> want = base ? std::optional(base->total_cost) : std::nullopt;
    CHECK(best == want);
  }
}

TEST_CASE("min_ham_path", "[oracle]") {
  oracle::Problem tri;
  tri.n = 3;
  tri.links = {{0, 1, 1}, {0, 2, 2}, {1, 2, 3}};
  CHECK(oracle::min_ham_path(tri, 0, 1) == 5);
  CHECK(oracle::min_ham_path(tri, 0, 2) == 4);
  CHECK(oracle::min_ham_path(tri, 1, 2) == 3);

  oracle::Problem one;
  one.n = 1;
  CHECK(oracle::min_ham_path(one, 0, 0) == 0);

  oracle::Problem two;
  two.n = 2;
  two.links = {{0, 1, 7}};
  CHECK(oracle::min_ham_path(two, 0, 1) == 7);
  CHECK_FALSE(oracle::min_ham_path(tri, 1, 1));
}
