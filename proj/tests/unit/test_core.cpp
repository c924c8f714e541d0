#include <doctest.h>

#include "coevo/game.hpp"
#include "coevo/lp.hpp"
#include "oracles.hpp"

using namespace coevo;

TEST_CASE("rational literals") {
  CHECK(parse_rational("3/2") == rat(3, 2));
  CHECK(parse_rational("-1") == -1);
  CHECK(parse_rational("0.25") == rat(1, 4));
  CHECK(parse_rational("1e-3") == rat(1, 1000));
  CHECK(parse_rational("-2.5E+2") == -250);
  CHECK(from_json_double(0.1) == rat(1, 10));
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("linear solve") {
  Vec x;
  REQUIRE(solve_linear({{2, 1}, {1, 3}}, {3, 5}, x));
  CHECK(x[0] == rat(4, 5));
  CHECK(x[1] == rat(7, 5));
  CHECK_FALSE(solve_linear({{1, 2}, {2, 4}}, {1, 2}, x));
}

TEST_CASE("simplex") {
  // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3
  lp::Problem p{{3, 2}, {{1, 1}, {1, 3}, {1, 0}}, {4, 6, 3}, {}, {}};
  auto r = lp::solve(p);
  REQUIRE(r.status == lp::Status::optimal);
  CHECK(r.value == 11);
  CHECK(r.x[0] == 3);
  CHECK(r.x[1] == 1);

  lp::Problem unb{{1, 0}, {{-1, 1}}, {1}, {}, {}};
  CHECK(lp::solve(unb).status == lp::Status::unbounded);
  lp::Problem inf{{1}, {{1}}, {1}, {{1}}, {2}};
  CHECK(lp::solve(inf).status == lp::Status::infeasible);

  SUBCASE("degenerate vertex terminates") {
    lp::Problem d{{10, -57, -9, -24},
                  {{rat(1, 2), rat(-11, 2), rat(-5, 2), 9}, {rat(1, 2), rat(-3, 2), rat(-1, 2), 1}, {1, 0, 0, 0}},
                  {0, 0, 1},
                  {},
                  {}};
    auto rd = lp::solve(d);
    REQUIRE(rd.status == lp::Status::optimal);
    CHECK(rd.value == 1);
  }
}

TEST_CASE("mixed strategies") {
  MixedStrategy s(Vec{1, 3});
  CHECK(s[0] == rat(1, 4));
  CHECK_FALSE(s.is_pure());
  CHECK(MixedStrategy::pure(3, 2).pure_action() == 2);
  CHECK(MixedStrategy::uniform(4)[3] == rat(1, 4));
  CHECK_THROWS_AS(MixedStrategy(Vec{1, -1}), std::invalid_argument);
  CHECK_THROWS_AS(MixedStrategy(Vec{0, 0}), std::invalid_argument);
}

TEST_CASE("prisoner's dilemma diagnostics") {
  auto pd = games::prisoners_dilemma(3, 0, 4, 1);
  auto d = diagnose(pd, 0);
  CHECK(d.efficiency.efficient_payoff == 3);
  REQUIRE(d.efficiency.efficient_profiles.size() == 1);
  CHECK(d.efficiency.efficient_profiles[0] == ActionPair{0, 0});
  CHECK(d.punishment == std::vector<Action>{1});
  CHECK(d.generic);
  CHECK(d.bounds.maxmin == 1);
  CHECK(d.bounds.minmax == 1);
  CHECK(d.deviation_gains[0] == 1);
  CHECK(d.deviation_gains[1] == 0);
}

TEST_CASE("rock-paper-scissors diagnostics") {
  auto d = diagnose(games::rock_paper_scissors(), 0);
  CHECK(d.efficiency.efficient_payoff == 0);
  CHECK(d.efficiency.efficient_profiles.size() == 9);
  CHECK(d.punishment.empty());
  CHECK_FALSE(d.generic);
  CHECK(d.bounds.maxmin == -1);
  CHECK(d.bounds.minmax == 1);
}

TEST_CASE("deviation gain is zero exactly at symmetric pure Nash profiles") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 40; ++k) {
    auto g = oracle::random_game(rng, 3, -5, 5);
    for (Action a = 0; a < 3; ++a) {
      bool nash = true;
      for (Action b = 0; b < 3; ++b)
        if (g(b, a) > g(a, a)) nash = false;
      CHECK((deviation_gain(g, a) == 0) == nash);
      CHECK(deviation_gain(g, a) >= 0);
    }
  }
}

TEST_CASE("efficiency over pure pairs matches brute force") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 40; ++k) {
    auto g = oracle::random_game(rng, 4, -3, 9);
    Rational best = g(0, 0) + g(0, 0);
    for (Action a = 0; a < 4; ++a)
      for (Action b = 0; b < 4; ++b) best = std::max(best, Rational(g(a, b) + g(b, a)));
    auto e = efficiency_analysis(g);
    CHECK(e.efficient_payoff * 2 == best);
    for (auto [a, b] : e.efficient_profiles) CHECK(g(a, b) + g(b, a) == best);
    for (Action p : punishment_actions(g))
      for (Action a = 0; a < 4; ++a) CHECK(g(a, p) < e.efficient_payoff);
  }
}

TEST_CASE("genericity") {
  SymmetricGame coord({"a", "b", "c"}, {{10, 0, 2}, {1, 7, 3}, {4, 5, 8}});
  CHECK(is_generic(coord, 0));
  SymmetricGame tie({"a", "b"}, {{1, 2}, {3, 1}});
  CHECK_FALSE(is_generic(tie, 0));
  CHECK(is_generic(SymmetricGame({"a", "b"}, {{1, rat(2) + rat(1, 100)}, {rat(11, 10), 3}}), 0));
  CHECK_FALSE(is_generic(SymmetricGame({"a", "b"}, {{1, rat(2) + rat(1, 100)}, {rat(11, 10), 3}}),
                         rat(1, 10)));
}

TEST_CASE("symmetrizing a game with an asymmetric efficient profile") {
  const Mat pi = {{1, 20, 2}, {3, 4, 5}, {9, 7, 8}};
  SymmetricGame g({"a", "b", "c"}, pi);
  auto e = efficiency_analysis(g);
  CHECK(e.symmetric_efficient_actions.empty());
  Mat col(3, Vec(3));
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) col[i][j] = pi[j][i];
  auto s = symmetrize(g.actions(), g.actions(), pi, col);
  CHECK(s.size() == 9);
  auto es = efficiency_analysis(s);
  CHECK(es.efficient_payoff == rat(23, 2));
  REQUIRE_FALSE(es.symmetric_efficient_actions.empty());
  CHECK(s.actions()[es.symmetric_efficient_actions[0]] == "a|b");
}

TEST_CASE("payoff dimension mismatch") {
  auto pd = games::prisoners_dilemma(3, 0, 4, 1);
  CHECK_THROWS_AS(payoff(pd, MixedStrategy::uniform(3), MixedStrategy::uniform(2)),
                  std::invalid_argument);
  CHECK_THROWS(SymmetricGame({"a", "b"}, {{1, 2}, {3}}));
}
