#include <doctest.h>

#include "dpbb/bnb.hpp"
#include "dpbb/generator.hpp"
#include "oracles.hpp"

using namespace dpbb;

TEST_CASE("generators are deterministic in the seed") {
  for (const char* family : {"knapsack", "setcover", "gap"}) {
    CAPTURE(family);
    Problem a = generate_instance(family, GenParams{10, 4}, 5);
    Problem b = generate_instance(family, GenParams{10, 4}, 5);
    Problem c = generate_instance(family, GenParams{10, 4}, 6);
    CHECK(a.canonical_dump() == b.canonical_dump());
    CHECK(a.canonical_dump() != c.canonical_dump());
    CHECK_NOTHROW(a.validate());
  }
  CHECK_THROWS(generate_instance("nope", GenParams{}, 1));
}

TEST_CASE("knapsack structure") {
  Problem p = generate_knapsack(12, 3);
  CHECK(p.sense == Sense::Maximize);
  CHECK(p.num_vars() == 12);
  REQUIRE(p.num_rows() == 1);
  CHECK(p.constraints[0].relation == Relation::LessEqual);
  for (const auto& v : p.variables) {
    CHECK(v.integrality == Integrality::Binary);
    CHECK(v.obj_coeff >= 1.0);
  }
  // Capacity is half the total weight: all-ones is infeasible,
  // all-zeros is feasible.
  double total = 0.0;
  for (auto [_, w] : p.constraints[0].coeffs) total += w;
  CHECK(p.constraints[0].rhs <= total / 2.0 + 1.0);
  CHECK(p.constraints[0].rhs >= 1.0);
}

TEST_CASE("set cover structure") {
  Problem p = generate_setcover(9, 15, 2);
  CHECK(p.sense == Sense::Minimize);
  CHECK(p.num_vars() == 15);
  REQUIRE(p.num_rows() == 9);
  for (const auto& c : p.constraints) {
    CHECK(c.relation == Relation::GreaterEqual);
    CHECK(c.rhs == 1.0);
    CHECK(!c.coeffs.empty());  // every element is coverable
  }
  // The all-ones vector is a cover.
  std::vector<double> ones(p.num_vars(), 1.0);
  for (const auto& c : p.constraints) {
    double act = 0.0;
    for (auto [idx, w] : c.coeffs) act += w * ones[idx];
    CHECK(act >= c.rhs);
  }
}

TEST_CASE("gap structure") {
  Problem p = generate_gap(3, 7, 4);
  CHECK(p.sense == Sense::Minimize);
  CHECK(p.num_vars() == 3 * 7);
  REQUIRE(p.num_rows() == 7 + 3);
  int eq = 0, le = 0;
  for (const auto& c : p.constraints) {
    if (c.relation == Relation::Equal) ++eq;
    if (c.relation == Relation::LessEqual) ++le;
  }
  CHECK(eq == 7);  // one assignment row per job
  CHECK(le == 3);  // one capacity row per agent
  // Feasible by construction: the solver must find an optimum.
  SolveConfig cfg;
  cfg.time_limit = 30.0;
  auto res = solve(p, cfg);
  CHECK(res.status == SolveResult::Status::Optimal);
}

TEST_CASE("small generated instances solve to the enumerated optimum") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    Problem kp = generate_knapsack(10, seed);
    auto oracle = dpbb::testing::oracle_enumerate_binary(kp);
    REQUIRE(oracle.feasible);
    auto res = solve(kp, {});
    REQUIRE(res.status == SolveResult::Status::Optimal);
    CHECK(*res.objective == oracle.objective);

    Problem sc = generate_setcover(6, 10, seed);
    auto sc_oracle = dpbb::testing::oracle_enumerate_binary(sc);
    REQUIRE(sc_oracle.feasible);
    auto sc_res = solve(sc, {});
    REQUIRE(sc_res.status == SolveResult::Status::Optimal);
    CHECK(*sc_res.objective == sc_oracle.objective);
  }
}
