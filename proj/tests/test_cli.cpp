#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bdtsp/cli.hpp"
#include "bdtsp/generator.hpp"
#include "bdtsp/instance_io.hpp"
#include "bdtsp/oracle.hpp"
#include "fixtures.hpp"

using namespace bdtsp;
using namespace bdtsp::cli;
using namespace bdtsp::testing;

namespace {

const std::string kData = BDTSP_DATA_DIR;

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("bdtsp_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

template <class F>
std::pair<int, std::string> run(F&& f) {
  std::ostringstream out, err;
  const int code = guarded([&] { return f(out); }, err);
  return {code, out.str() + err.str()};
}

}  // namespace

TEST_CASE("parse_instance native format", "[cli]") {
  const Instance k3 = parse_instance("3 3 3\n1 2 1\n2 3 1\n1 3 1\n");
  CHECK(k3.n() == 3);
  CHECK(k3.m() == 3);
  CHECK(k3.edge(1).u == 1);
  CHECK(k3.edge(1).v == 2);
  CHECK(k3.cost_scale() == 2);

  const Instance commented = parse_instance("# header next\n3 3 3  # n m k\n1 2 1\n\n2 3 1\n1 3 1 # last\n");
  CHECK(commented == k3);
}

TEST_CASE("parse_instance rejects bad input", "[cli]") {
  auto message = [](const std::string& text) {
    try {
      parse_instance(text);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string("accepted");
  };
  CHECK(message("3 3 3\n1 2 1\n2 3 0\n1 3 1\n").find("line 3") != std::string::npos);
  CHECK(message("3 3 3\n1 2 1\n2 x 1\n1 3 1\n").find("line 3") != std::string::npos);
  CHECK(message("3 3 3\n1 2 1\n2 4 1\n1 3 1\n").find("line 3") != std::string::npos);
  CHECK(message("3 3 3\n1 2 1\n2 3 1\n") != "accepted");
  CHECK(message("") != "accepted");
  // Degree-4 file with a degree-5 vertex names the vertex.
  CHECK(message("6 5 4\n1 2 1\n1 3 1\n1 4 1\n1 5 1\n1 6 1\n").find("vertex 1") != std::string::npos);
}

TEST_CASE("parse_instance TSPLIB full matrix", "[cli]") {
  const std::string text =
      "NAME: square\nTYPE: TSP\nDIMENSION: 4\nEDGE_WEIGHT_TYPE: EXPLICIT\n"
      "EDGE_WEIGHT_FORMAT: FULL_MATRIX\nEDGE_WEIGHT_SECTION\n"
      "0 1 0 4\n1 0 2 0\n0 2 0 3\n4 0 3 0\nEOF\n";
  const Instance sq = parse_instance(text);
  CHECK(sq.n() == 4);
  CHECK(sq.m() == 4);
  CHECK(sq.degree_bound() == 3);
  CHECK(parse_instance(text, 5).degree_bound() == 5);

  CHECK_THROWS_AS(parse_instance("DIMENSION: 2\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: FULL_MATRIX\n"
                                 "EDGE_WEIGHT_SECTION\n0 1\n2 0\n"),
                  InputError);
}

TEST_CASE("serialize round trip", "[cli]") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Instance inst = gen_random(3 + static_cast<int>(seed % 20), 3 + static_cast<int>(seed % 5), 64, seed);
    CHECK(parse_instance(serialize_instance(inst)) == inst);
  }
  CHECK(instance_digest(k4_powers()) == instance_digest(parse_instance(serialize_instance(k4_powers()))));
  CHECK(instance_digest(k4_powers()) != instance_digest(cycle(4, 1)));
}

TEST_CASE("generator", "[cli]") {
  CHECK(gen_random(8, 3, 64, 1) == gen_random(8, 3, 64, 1));
  CHECK_FALSE(gen_random(8, 3, 64, 1) == gen_random(8, 3, 64, 2));
  int hamiltonian = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const int degree = 3 + static_cast<int>(seed % 5);
    const Instance inst = gen_random(4 + static_cast<int>(seed % 9), degree, 20, seed, {-1, seed % 2 ? 1.0 : 0.5});
    CHECK(inst.max_degree() <= degree);
    for (const auto& e : inst.edges()) {
      CHECK(e.cost >= 1);
      CHECK(e.cost <= 20);
    }
    CHECK(u_components(WorkGraph(inst)).size() == 1);  // connected
    if (inst.n() <= 10) hamiltonian += oracle::optimal_tour(inst) ? 1 : 0;
  }
  CHECK(hamiltonian > 0);
  CHECK(gen_random(3, 3, 1, 1).m() == 3);
  CHECK_THROWS_AS(gen_random(2, 3, 1, 1), InputError);
  CHECK_THROWS_AS(gen_random(5, 8, 1, 1), InputError);
  CHECK_THROWS_AS(gen_random(5, 3, 0, 1), InputError);
}

TEST_CASE("parse_assignment", "[cli]") {
  const PartialAssignment a = parse_assignment("3+, 5-");
  REQUIRE(a.size() == 2);
  CHECK(a[0] == AssignmentStep{2, Decision::force});
  CHECK(a[1] == AssignmentStep{4, Decision::remove});
  CHECK(parse_assignment("").empty());
  CHECK_THROWS_AS(parse_assignment("3"), InputError);
  CHECK_THROWS_AS(parse_assignment("0+"), InputError);
  CHECK_THROWS_AS(parse_assignment("x+"), InputError);
  CHECK_THROWS_AS(parse_assignment("2+,2-"), InputError);
}

TEST_CASE("solve command", "[cli]") {
  SolveArgs args;
  args.path = kData + "/k4.txt";
  args.oracle = true;
  auto [code, text] = run([&](std::ostream& o) { return cmd_solve(args, o); });
  CHECK(code == kOk);
  CHECK(text.find("answer=30\n") != std::string::npos);
  CHECK(text.find("cost_scaled=60\n") != std::string::npos);
  CHECK(text.find("oracle_agrees=true\n") != std::string::npos);
  CHECK(text.find("L_prime=84\n") != std::string::npos);
  CHECK(text.find("tour=1 3 2 4\n") != std::string::npos);

  args.json = true;
  std::tie(code, text) = run([&](std::ostream& o) { return cmd_solve(args, o); });
  CHECK(text.find("\"answer\": 30") != std::string::npos);

  SolveArgs none;
  none.path = kData + "/bowtie.txt";
  std::tie(code, text) = run([&](std::ostream& o) { return cmd_solve(none, o); });
  CHECK(code == kOk);
  CHECK(text.find("answer=none\n") != std::string::npos);

  SolveArgs threshold;
  threshold.path = kData + "/k4.txt";
  threshold.threshold = 30;
  std::tie(code, text) = run([&](std::ostream& o) { return cmd_solve(threshold, o); });
  CHECK(text.find("answer=none\n") != std::string::npos);
  threshold.threshold = 31;
  std::tie(code, text) = run([&](std::ostream& o) { return cmd_solve(threshold, o); });
  CHECK(text.find("answer=30\n") != std::string::npos);
}

TEST_CASE("command exit codes", "[cli]") {
  SolveArgs missing;
  missing.path = "/nonexistent/instance.txt";
  CHECK(run([&](std::ostream& o) { return cmd_solve(missing, o); }).first == kInputError);

  SolveArgs bad;
  bad.path = kData + "/zero_cost.txt";
  const auto [code, text] = run([&](std::ostream& o) { return cmd_solve(bad, o); });
  CHECK(code == kInputError);
  CHECK(text.find("line 3") != std::string::npos);

  ReduceArgs red;
  red.path = kData + "/k4.txt";
  red.assign = "99+";
  CHECK(run([&](std::ostream& o) { return cmd_reduce(red, o); }).first == kInputError);

  const std::string big = temp_file("big.txt", serialize_instance(gen_random(30, 3, 10, 1)));
  SolveArgs huge;
  huge.path = big;
  huge.oracle = true;
  CHECK(run([&](std::ostream& o) { return cmd_solve(huge, o); }).first == kResourceError);
}

TEST_CASE("reduce command prints the trace", "[cli]") {
  ReduceArgs args;
  args.path = kData + "/prism.txt";
  auto [code, text] = run([&](std::ostream& o) { return cmd_reduce(args, o); });
  CHECK(code == kOk);
  CHECK(text.find("kind=three-cut") != std::string::npos);
  CHECK(text.find("predicate=") != std::string::npos);

  // Cut edges keep their ids through the contractions.
  args.assign = "8+";
  std::tie(code, text) = run([&](std::ostream& o) { return cmd_reduce(args, o); });
  CHECK(code == kOk);
  CHECK(text.find("kind=assignment") != std::string::npos);
}

TEST_CASE("estimate command", "[cli]") {
  EstimateArgs args;
  args.path = kData + "/prism.txt";
  const auto [code, text] = run([&](std::ostream& o) { return cmd_estimate(args, o); });
  CHECK(code == kOk);
  CHECK(text.find("quantum_base=1.11\n") != std::string::npos);
  CHECK(text.find("model=unit-constant model estimate\n") != std::string::npos);
}

TEST_CASE("verify and bench commands", "[cli]") {
  VerifyArgs v;
  v.count = 40;
  auto [code, text] = run([&](std::ostream& o) { return cmd_verify(v, o); });
  CHECK(code == kOk);
  CHECK(text.find("mismatches=0\n") != std::string::npos);

  BenchArgs b;
  b.sizes = {8, 10};
  b.count = 3;
  std::tie(code, text) = run([&](std::ostream& o) { return cmd_bench(b, o); });
  CHECK(code == kOk);
  CHECK(text.find("n=8 ") != std::string::npos);
  CHECK(text.find("median_log2T_per_n=") != std::string::npos);

  GenArgs g;
  g.n = 9;
  std::ostringstream out;
  CHECK(cmd_gen(g, out) == kOk);
  CHECK(parse_instance(out.str()) == gen_random(9, 3, 64, 1));
}
