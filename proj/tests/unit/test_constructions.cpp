#include <doctest.h>

#include "coevo/constructions.hpp"
#include "coevo/refute.hpp"
#include "oracles.hpp"

using namespace coevo;

namespace {

const SymmetricGame rps = games::rock_paper_scissors();

Environment rps_linear(const Rational& slope) {
  return Environment{rps, CostSchedule::linear(slope), DeceptionTable::always(1)};
}

}  // namespace

TEST_CASE("RPS construction with k_n = 0.3(n-1)") {
  auto c = construct_rps_nsc(rps_linear(rat(3, 10)));
  REQUIRE(c.size() == 7);
  Vec expect{rat(1, 10), rat(2, 10), rat(1, 10), rat(2, 10), rat(1, 10), rat(2, 10), rat(1, 10)};
  CHECK(c.dist.frequency == expect);
  CHECK(validate(c).valid);
  CHECK(is_balanced(c, 0));
  CHECK(check_highest_type_conditions(c).status == Status::inconclusive);
  const Action p = rps.action_index("P"), r = rps.action_index("R");
  for (size_t i = 0; i < 7; ++i)
    for (size_t j = 0; j < i; ++j) {
      CHECK(c.policy.deception.at({i, j}) == MixedStrategy::pure(3, p));
      CHECK(c.policy.deception.at({j, i}) == MixedStrategy::pure(3, r));
    }
  Rational avg = average_fitness(c);
  for (size_t i = 0; i < 7; ++i) CHECK(expected_fitness(c, i) == avg);
}

TEST_CASE("RPS construction preconditions") {
  try {
    construct_rps_nsc(rps_linear(rat(6, 5)));
    FAIL("expected a construction error");
  } catch (const ConstructionError& e) {
    CHECK(e.condition() == "marginal cost condition violated");
  }
  Environment pd{games::prisoners_dilemma(3, 0, 4, 1), CostSchedule::linear(rat(3, 10)),
                 DeceptionTable::always(1)};
  CHECK_THROWS_AS(construct_rps_nsc(pd), ConstructionError);
  Environment partial{rps, CostSchedule::linear(rat(3, 10)), DeceptionTable::always(rat(1, 2))};
  CHECK_THROWS_AS(construct_rps_nsc(partial), ConstructionError);
}

TEST_CASE("RPS constructions across cost slopes stay balanced") {
  for (int tenths = 1; tenths <= 9; ++tenths) {
    Rational slope = rat(tenths, 10);
    Configuration c;
    try {
      c = construct_rps_nsc(rps_linear(slope));
    } catch (const ConstructionError&) {
      continue;
    }
    CHECK(validate(c).valid);
    CHECK(is_balanced(c, 0));
    for (size_t n = 0; n + 1 < c.size(); ++n)
      CHECK(c.dist.frequency[n] + c.dist.frequency[n + 1] == slope);
  }
}

TEST_CASE("Hawk-Dove construction, g > l") {
  CostSchedule cost = CostSchedule::linear(rat(35, 100));
  const Rational g = rat(1, 2), l = rat(2, 5);
  auto r = construct_hawkdove_esc(g, l, cost);
  CHECK(r.kind == HawkDoveCase::esc);
  REQUIRE(r.configuration);
  const auto& c = *r.configuration;
  REQUIRE(c.size() == 3);
  // Independent solve of g μ_n + l μ_{n+1} = k_{n+1} − k_n, Σμ = 1.
  Mat a{{g, l, 0}, {0, g, l}, {1, 1, 1}};
  Vec b{rat(35, 100), rat(35, 100), 1}, mu;
  REQUIRE(solve_linear(a, b, mu));
  CHECK(c.dist.frequency == mu);
  CHECK(mu == Vec{rat(11, 42), rat(23, 42), rat(4, 21)});
  CHECK(validate(c).valid);
  CHECK(is_balanced(c, 0));
  Rational below = 0;
  for (size_t n = 0; n < 3; ++n) {
    Rational above = 1 - below - mu[n];
    CHECK(expected_fitness(c, n) == 1 + g * below - l * above - cost(int(n) + 1));
    below += mu[n];
  }
  for (size_t i = 0; i < 3; ++i) {
    CHECK(c.policy.nash.at({i, i}) == MixedStrategy::pure(2, 1));
    for (size_t j = 0; j < i; ++j) {
      CHECK(c.policy.deception.at({i, j}) == MixedStrategy::pure(2, 0));
      CHECK(c.policy.deception.at({j, i}) == MixedStrategy::pure(2, 1));
    }
  }
}

TEST_CASE("Hawk-Dove construction, g = l and g < l") {
  CostSchedule cost = CostSchedule::linear(rat(35, 100));
  auto eq = construct_hawkdove_esc(rat(2, 5), rat(2, 5), cost);
  CHECK(eq.kind == HawkDoveCase::nsc);
  REQUIRE(eq.configuration);
  CHECK(is_balanced(*eq.configuration, 0));
  auto lo = construct_hawkdove_esc(rat(3, 10), rat(2, 5), cost);
  CHECK(lo.kind == HawkDoveCase::none);
  CHECK(lo.verdict.status == Status::refuted);
  CHECK_FALSE(lo.configuration);
}

TEST_CASE("Hawk-Dove mixed within-level variant") {
  auto r = construct_hawkdove_esc(rat(1, 2), rat(2, 5), CostSchedule::linear(rat(35, 100)), true);
  REQUIRE(r.configuration);
  CHECK(validate(*r.configuration).valid);
  CHECK(is_balanced(*r.configuration, 0));
  CHECK(r.configuration->policy.nash.at({0, 0}) == MixedStrategy(Vec{rat(5, 11), rat(6, 11)}));
}

TEST_CASE("Hawk-Dove marginal cost violation names the condition") {
  try {
    construct_hawkdove_esc(rat(1, 2), rat(2, 5), CostSchedule(Vec{0, rat(3, 5)}, rat(3, 10)));
    FAIL("expected a construction error");
  } catch (const ConstructionError& e) {
    CHECK(e.condition() == "marginal cost condition violated");
  }
}
