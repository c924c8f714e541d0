#include <doctest.h>

#include "coevo/constructions.hpp"
#include "coevo/refute.hpp"
#include "coevo/stability.hpp"
#include "oracles.hpp"

using namespace coevo;

namespace {

const SymmetricGame pd = games::prisoners_dilemma(3, 0, 4, 1);
const SymmetricGame rps = games::rock_paper_scissors();

Environment pd_env(const Rational& k2) {
  return Environment{pd, CostSchedule(Vec{0, k2}, 1), DeceptionTable::always(1)};
}

std::vector<MixedStrategy> candidates(const Mat& b) {
  const size_t m = b.size();
  std::vector<MixedStrategy> out;
  UtilityFunction u(b);
  for (const auto& e : nash_equilibria(u, u).equilibria)
    if (e.row == e.col) out.push_back(e.row);
  for (size_t a = 0; a < m; ++a) out.push_back(MixedStrategy::pure(m, a));
  out.push_back(MixedStrategy::uniform(m));
  return out;
}

struct Tally {
  int checked = 0;
  int inconclusive = 0;
  int disagreements = 0;
};

void compare_with_sweep(const Mat& b, Tally& t) {
  for (const auto& x : candidates(b))
    for (bool strict : {false, true}) {
      auto v = strict ? is_ess(b, x) : is_nss(b, x);
      ++t.checked;
      std::vector<Vec> extra;
      if (v.witness && !v.witness->mutant.empty()) extra.push_back(v.witness->mutant);
      auto sweep = oracle::epsilon_sweep(b, x.weights(), strict, extra);
      if (v.status == Status::inconclusive) ++t.inconclusive;
      if (v.status == Status::certified_stable && sweep.invaded) ++t.disagreements;
      if (v.status == Status::refuted && !sweep.invaded) ++t.disagreements;
    }
}

}  // namespace

TEST_CASE("NSS and ESS frozen examples") {
  Mat r = rps.payoff();
  auto u3 = MixedStrategy::uniform(3);
  CHECK(is_nss(r, u3).status == Status::certified_stable);
  CHECK(is_ess(r, u3).status == Status::refuted);

  Mat two{{0, -1}, {0, -1}};
  for (auto x : {MixedStrategy::pure(2, 0), MixedStrategy(Vec{1, 3}), MixedStrategy::pure(2, 1)})
    CHECK(is_nss(two, x).status == Status::certified_stable);

  Mat coord{{1, 0}, {0, 1}};
  auto v = is_nss(coord, MixedStrategy::uniform(2));
  CHECK(v.status == Status::refuted);
  REQUIRE(v.witness);
  CHECK(v.witness->value == rat(1, 2));

  CHECK(is_ess(pd.payoff(), MixedStrategy::pure(2, 1)).status == Status::certified_stable);
  auto non_nash = is_ess(pd.payoff(), MixedStrategy::pure(2, 0));
  CHECK(non_nash.status == Status::refuted);
  CHECK(non_nash.witness->kind == "non-nash");
}

TEST_CASE("NSS and ESS agree with the epsilon-sweep oracle") {
  std::mt19937_64 rng(99);
  Tally t;
  int games = 0;
  for (size_t m = 2; m <= 4; ++m)
    for (int k = 0; k < 20; ++k) {
      compare_with_sweep(oracle::random_matrix(rng, m), t);
      ++games;
    }
  compare_with_sweep(rps.payoff(), t);
  compare_with_sweep(pd.payoff(), t);
  CHECK(games >= 50);
  CHECK(t.disagreements == 0);
  CHECK(t.inconclusive * 10 <= t.checked);
}

TEST_CASE("antisymmetric games: every symmetric Nash point is NSS") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> d(-5, 5);
  for (size_t m = 2; m <= 4; ++m)
    for (int k = 0; k < 10; ++k) {
      Mat b(m, Vec(m, 0));
      for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j) {
          b[i][j] = d(rng);
          b[j][i] = -b[i][j];
        }
      UtilityFunction u(b);
      for (const auto& e : nash_equilibria(u, u).equilibria)
        if (e.row == e.col) CHECK(is_nss(b, e.row).status == Status::certified_stable);
    }
}

TEST_CASE("positive semidefiniteness counterexamples") {
  CHECK_FALSE(psd_counterexample(Mat{{2, 1}, {1, 2}}, true));
  auto w = psd_counterexample(Mat{{1, 2}, {2, 1}}, false);
  REQUIRE(w);
  CHECK(oracle::quad(*w, Mat{{1, 2}, {2, 1}}, *w) < 0);
  CHECK(psd_counterexample(Mat{{1, 1}, {1, 1}}, true));
  CHECK_FALSE(psd_counterexample(Mat{{1, 1}, {1, 1}}, false));
}

TEST_CASE("effective cost examples") {
  Environment a{pd, CostSchedule(Vec{0, 1, 3, 7}, 8), DeceptionTable::always(1)};
  CHECK(effective_cost(a).value == 1);
  Environment b{pd, CostSchedule(Vec{0, 1, 3}, 10),
                DeceptionTable({{{2, 1}, rat(1, 2)}, {{3, 1}, rat(4, 5)}, {{3, 2}, rat(1, 2)}}, 1)};
  CHECK(effective_cost(b).value == 2);
  CHECK(effective_cost_at_level(b, 2).value == 4);
  CHECK(effective_cost_at_level(b, 1).value == effective_cost(b).value);
  Environment cheap{pd, CostSchedule(Vec{0, rat(1, 1000)}, 1), DeceptionTable::always(1)};
  CHECK(effective_cost(cheap).value == rat(1, 1000));
  Environment never{pd, CostSchedule::linear(1), DeceptionTable({}, rat(1, 1000000000))};
  CHECK(effective_cost(never, 1000).infinite);
}

TEST_CASE("effective cost is monotone in the cost schedule") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> d(1, 9);
  for (int k = 0; k < 30; ++k) {
    Vec costs{0};
    for (int n = 0; n < 4; ++n) costs.push_back(costs.back() + rat(d(rng), 4));
    Vec raised = costs;
    Rational bump = 0;
    for (size_t n = 1; n < raised.size(); ++n) raised[n] += bump += rat(d(rng), 10);
    DeceptionTable q({{{2, 1}, rat(d(rng), 10)}, {{3, 1}, rat(d(rng), 10)}}, rat(1, 2));
    Environment lo{pd, CostSchedule(costs, 1), q}, hi{pd, CostSchedule(raised, 2), q};
    CHECK(effective_cost(lo).value <= effective_cost(hi).value);
  }
}

TEST_CASE("type game assembly") {
  auto c = rps_deception_configuration(
      Environment{rps, CostSchedule(Vec{0, 1}, 3), DeceptionTable::always(1)}, {1, 2},
      Vec{rat(1, 2), rat(1, 2)});
  CHECK(build_type_game(c).payoff == Mat{{0, -1}, {0, -1}});

  Environment env{rps, CostSchedule::linear(rat(3, 10)), DeceptionTable::always(1)};
  auto big = construct_rps_nsc(env);
  auto tg = build_type_game(big);
  for (size_t i = 0; i < 7; ++i)
    for (size_t j = 0; j < 7; ++j) {
      Rational sign = i > j ? 1 : i < j ? -1 : 0;
      CHECK(tg.payoff[i][j] == sign - rat(3 * int(i), 10));
    }
}

TEST_CASE("pure NSC certification on the prisoner's dilemma") {
  auto cheap = certify_pure_nsc(pd_env(rat(1, 2)), 0);
  CHECK(cheap.status == Status::refuted);
  REQUIRE(cheap.witness);
  REQUIRE(cheap.witness->scenario);
  CHECK(cheap.witness->scenario->recipe == "indifferent-deceiver");

  auto dear = certify_pure_nsc(pd_env(2), 0);
  CHECK(dear.status == Status::certified_stable);
  REQUIRE(dear.configuration);
  CHECK(validate(*dear.configuration).valid);
  CHECK(refute_nsc(*dear.configuration).status == Status::inconclusive);
  CHECK(check_highest_type_conditions(*dear.configuration).status == Status::inconclusive);

  // Efficient strict Nash: stable whatever the cost.
  SymmetricGame stag({"S", "H"}, Mat{{4, 0}, {3, 2}});
  for (Rational k : {rat(1, 100), rat(1), rat(50)})
    CHECK(certify_pure_nsc(Environment{stag, CostSchedule(Vec{0, k}, 1), DeceptionTable::always(1)},
                           0)
              .status == Status::certified_stable);
}

TEST_CASE("certified pure configurations resist every recipe") {
  std::mt19937_64 rng(2718);
  int certified = 0;
  for (int k = 0; k < 40; ++k) {
    auto g = oracle::random_game(rng, 3);
    std::uniform_int_distribution<int> d(1, 12);
    Environment env{g, CostSchedule(Vec{0, rat(d(rng), 2)}, 2), DeceptionTable::always(1)};
    for (Action a = 0; a < 3; ++a) {
      auto v = certify_pure_nsc(env, a);
      if (v.status != Status::certified_stable) continue;
      // The boundary g(a*) = c is a knife edge for the indifferent deceiver.
      if (deviation_gain(g, a) == effective_cost(env).value) continue;
      ++certified;
      auto r = refute_nsc(*v.configuration);
      CHECK(r.status != Status::refuted);
      CHECK(average_fitness(*v.configuration) >= maxmin_minmax(g).maxmin);
      CHECK(is_balanced(*v.configuration, 0));
    }
  }
  CHECK(certified > 0);
}

TEST_CASE("highest-type conditions") {
  Environment env{rps, CostSchedule::linear(rat(3, 10)), DeceptionTable::always(1)};
  CHECK(check_highest_type_conditions(construct_rps_nsc(env)).status == Status::inconclusive);

  auto defect = pure_configuration(
      pd_env(2), CognitiveType("m", UtilityFunction::materialistic(pd), 1), 1);
  auto v = check_highest_type_conditions(defect);
  CHECK(v.status == Status::refuted);
  CHECK(v.conditions[0].name == "efficient-self-play[m]");
  CHECK(v.conditions[0].margin == -2);
}

TEST_CASE("generic efficiency check") {
  SymmetricGame g({"a", "b", "c"}, Mat{{10, 0, 2}, {1, 7, 3}, {4, 5, 8}});
  Environment env{g, CostSchedule::linear(1), DeceptionTable::always(1)};
  Mat u{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  auto pure = pure_configuration(env, CognitiveType("p", UtilityFunction(u), 1), 0);
  CHECK(check_generic_efficiency(pure).status == Status::inconclusive);

  auto rv = check_generic_efficiency(
      rps_deception_configuration(Environment{rps, CostSchedule::linear(1), DeceptionTable::always(1)},
                                  {1, 2}, Vec{rat(1, 2), rat(1, 2)}));
  CHECK(rv.status == Status::inconclusive);
  CHECK(rv.reason == "game not generic");
}

TEST_CASE("pair quadratic form agrees with the payoff sums") {
  SymmetricGame g({"a", "b", "c"}, Mat{{10, 0, 2}, {1, 7, 3}, {4, 5, 8}});
  Environment env{g, CostSchedule::linear(1), DeceptionTable::always(1)};
  for (Action x = 0; x < 3; ++x)
    for (Action y = 0; y < 3; ++y) {
      if (x == y) continue;
      Configuration c;
      c.env = env;
      Mat ux(3, Vec(3, 0)), uy(3, Vec(3, 0));
      ux[0][0] = 2;
      ux[x][y] += 1;
      uy[0][0] = 2;
      uy[y][x] += 1;
      c.dist.support = {CognitiveType("s", UtilityFunction(ux), 1),
                        CognitiveType("t", UtilityFunction(uy), 1)};
      c.dist.frequency = {rat(1, 2), rat(1, 2)};
      auto a0 = MixedStrategy::pure(3, 0);
      c.policy.nash[{0, 0}] = a0;
      c.policy.nash[{1, 1}] = a0;
      c.policy.nash[{0, 1}] = MixedStrategy::pure(3, x);
      c.policy.nash[{1, 0}] = MixedStrategy::pure(3, y);
      if (!validate(c).valid) continue;
      auto v = check_generic_efficiency(c);
      Rational sign = 2 * g(0, 0) - g(x, y) - g(y, x);
      CHECK((v.witness && v.witness->kind == "direction") == (sign > 0));
    }
}

TEST_CASE("maxmin bound: cost-inflated population is refuted by the maxmin mutant") {
  Environment env{rps, CostSchedule(Vec{0, rat(3, 2)}, 1), DeceptionTable::always(1)};
  auto c = rps_deception_configuration(env, {2}, Vec{1});
  CHECK(average_fitness(c) < maxmin_minmax(rps).maxmin);
  auto v = refute_nsc(c);
  REQUIRE(v.status == Status::refuted);
  REQUIRE(v.witness->scenario);
  CHECK(v.witness->scenario->recipe == "maxmin-dominant");
  const auto& mutant = v.witness->scenario->post_entry.dist.support.back();
  CHECK(mutant.level == 1);
}
