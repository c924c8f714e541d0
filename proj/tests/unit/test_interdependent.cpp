#include <doctest.h>

#include "coevo/constructions.hpp"
#include "coevo/interdependent.hpp"
#include "oracles.hpp"

using namespace coevo;

namespace {

const SymmetricGame pd = games::prisoners_dilemma(3, 0, 4, 1);

Environment pd_env(Vec costs, const Rational& increment) {
  return Environment{pd, CostSchedule(std::move(costs), increment), DeceptionTable::always(1)};
}

}  // namespace

TEST_CASE("undominated actions of interdependent types") {
  auto d = discriminating_type("x", 3, 0, 2, 1);
  CHECK(id_undominated(d) == std::vector<Action>{0, 2});
  CognitiveType plain("m", UtilityFunction::materialistic(pd), 1);
  CHECK(id_undominated(plain) == std::vector<Action>{1});
  CHECK(id_undominated(discriminating_type("level-1", 2, 1, 0, 1)) == std::vector<Action>{0, 1});
}

TEST_CASE("discriminating type plays its own-kind action against itself") {
  for (Action own = 0; own < 3; ++own)
    for (Action other = 0; other < 3; ++other) {
      if (own == other) continue;
      auto t = discriminating_type("self", 3, own, other, 2);
      const auto& u = t.utility_against(t);
      UtilityFunction ui = u;
      for (const auto& e : nash_equilibria(ui, ui).equilibria)
        CHECK(e.row == MixedStrategy::pure(3, own));
    }
}

TEST_CASE("pure NSC necessity") {
  auto coop = discriminating_type("c", 2, 0, 1, 1);

  Configuration mixed = pure_configuration(pd_env({0, 2}, 1), coop, 0);
  mixed.dist.support.push_back(discriminating_type("c2", 2, 0, 1, 2));
  mixed.dist.frequency = {rat(1, 2), rat(1, 2)};
  mixed.policy.nash[{1, 1}] = MixedStrategy::pure(2, 0);
  auto v1 = id_pure_nsc_necessary(mixed);
  CHECK(v1.status == Status::refuted);
  CHECK_FALSE(v1.conditions[0].passed);

  auto level2 = pure_configuration(pd_env({0, rat(5, 2)}, 1),
                                   discriminating_type("c", 2, 0, 1, 2), 0);
  auto v2 = id_pure_nsc_necessary(level2);
  CHECK(v2.status == Status::refuted);
  CHECK_FALSE(v2.conditions[1].passed);
  CHECK(v2.conditions[1].margin == rat(-1, 2));

  auto ok = pure_configuration(pd_env({0, 2}, 1), coop, 0);
  auto v3 = id_pure_nsc_necessary(ok);
  CHECK(v3.status == Status::inconclusive);
  for (const auto& c : v3.conditions) CHECK(c.passed);
}

TEST_CASE("pure ESC sufficiency") {
  auto yes = id_pure_esc_sufficient(pd_env({0, 2}, 1), 0, 1);
  CHECK(yes.status == Status::certified_stable);
  REQUIRE(yes.configuration);
  CHECK(validate(*yes.configuration).valid);
  CHECK(id_pure_nsc_necessary(*yes.configuration).status == Status::inconclusive);

  auto no = id_pure_esc_sufficient(pd_env({0, rat(1, 2)}, 1), 0, 1);
  CHECK(no.status == Status::refuted);
  bool found = false;
  for (const auto& c : no.conditions)
    if (c.name == "necessary:deviation-gain-within-level-cost") {
      found = true;
      CHECK_FALSE(c.passed);
      CHECK(c.margin == rat(-1, 2));
    }
  CHECK(found);

  // (D,D) is Nash but earns only the minmax.
  CHECK(id_pure_esc_sufficient(pd_env({0, rat(1, 100)}, 1), 1, 1).status !=
        Status::certified_stable);
  SymmetricGame stag({"S", "H"}, Mat{{4, 0}, {3, 2}});
  for (Rational k : {rat(1, 100), rat(1), rat(10)}) {
    Environment env{stag, CostSchedule(Vec{0, k}, 1), DeceptionTable::always(1)};
    CHECK(id_pure_esc_sufficient(env, 0, 1).status == Status::certified_stable);
  }
}

TEST_CASE("label universe must contain the witness type") {
  auto env = pd_env({0, 2}, 1);
  std::vector<std::string> universe{"someone-else"};
  auto v = id_pure_esc_sufficient(env, 0, 1, universe);
  CHECK(v.status == Status::inconclusive);
  CHECK(v.reason.rfind("not representable", 0) == 0);
  universe.push_back(discriminating_label(pd, 0, 1, 1));
  CHECK(id_pure_esc_sufficient(env, 0, 1, universe).status == Status::certified_stable);
}

TEST_CASE("sufficiency implies necessity on random games") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> d(1, 8);
  int certified = 0;
  for (int k = 0; k < 40; ++k) {
    auto g = oracle::random_game(rng, 3);
    Environment env{g, CostSchedule(Vec{0, rat(d(rng), 2)}, 1), DeceptionTable::always(1)};
    for (Action a = 0; a < 3; ++a) {
      auto v = id_pure_esc_sufficient(env, a, 1);
      if (v.status != Status::certified_stable) continue;
      ++certified;
      CHECK(id_pure_nsc_necessary(*v.configuration).status == Status::inconclusive);
    }
  }
  CHECK(certified > 0);
}
