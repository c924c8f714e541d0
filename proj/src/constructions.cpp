#include "coevo/constructions.hpp"

namespace coevo {

Vec balanced_shares(const Configuration& shape) {
  const size_t t = shape.size();
  Mat a(t, Vec(t, 0));
  Vec b(t, 0);
  for (size_t i = 0; i + 1 < t; ++i) {
    for (size_t j = 0; j < t; ++j)
      a[i][j] = match_fitness(shape, i, j) - match_fitness(shape, i + 1, j);
    b[i] = shape.env.cost(shape.type(i).level) - shape.env.cost(shape.type(i + 1).level);
  }
  for (size_t j = 0; j < t; ++j) a[t - 1][j] = 1;
  b[t - 1] = 1;
  Vec mu;
  if (!solve_linear(a, b, mu))
    throw ConstructionError("balance system singular", "no unique equal-fitness distribution");
  for (size_t i = 0; i < t; ++i)
    if (mu[i] <= 0)
      throw ConstructionError("balance system infeasible",
                              "share of " + shape.type(i).label + " is " + to_string(mu[i]));
  return mu;
}

Configuration rps_deception_configuration(const Environment& env, const std::vector<int>& levels,
                                          const Vec& shares) {
  const size_t m = env.game.size();
  const Action rock = env.game.action_index("R"), paper = env.game.action_index("P");
  Configuration c{env, {}, {}};
  for (size_t i = 0; i < levels.size(); ++i) {
    c.dist.support.emplace_back("level-" + std::to_string(levels[i]),
                                UtilityFunction::materialistic(env.game), levels[i]);
    c.dist.frequency.push_back(shares.empty() ? Rational(1, int(levels.size())) : shares[i]);
  }
  const auto uniform = MixedStrategy::uniform(m);
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < c.size(); ++j) {
      if (needs_nash(c, i, j)) c.policy.nash[{i, j}] = uniform;
      if (needs_deception(c, i, j))
        c.policy.deception[{i, j}] =
            MixedStrategy::pure(m, c.type(i).level > c.type(j).level ? paper : rock);
    }
  return c;
}

Configuration construct_rps_nsc(const Environment& env) {
  if (!(env.game.payoff() == games::rock_paper_scissors().payoff()) ||
      !(env.game.actions() == games::rock_paper_scissors().actions()))
    throw ConstructionError("not the rock-paper-scissors game",
                            "expected actions R P S with win 1, loss -1, tie 0");
  int n_top = 1;
  while (env.cost(n_top + 1) <= 2) {
    if (++n_top > 10000)
      throw ConstructionError("cost window", "k_n never exceeds 2");
  }
  for (int n = 1; n <= n_top; ++n) {
    const Rational step = env.cost(n + 1) - env.cost(n);
    if (step >= 1)
      throw ConstructionError("marginal cost condition violated",
                              "k_" + std::to_string(n + 1) + " - k_" + std::to_string(n) + " = " +
                                  to_string(step) + " is not below 1");
  }
  for (int n = 2; n <= n_top; ++n)
    for (int n2 = 1; n2 < n; ++n2)
      if (env.q(n, n2) != 1)
        throw ConstructionError("deception must always succeed",
                                "q(" + std::to_string(n) + "," + std::to_string(n2) + ") = " +
                                    to_string(env.q(n, n2)));
  std::vector<int> levels;
  for (int n = 1; n <= n_top; ++n) levels.push_back(n);
  Configuration c = rps_deception_configuration(env, levels, {});
  c.dist.frequency = balanced_shares(c);
  return c;
}

std::string to_string(HawkDoveCase c) {
  switch (c) {
    case HawkDoveCase::esc:
      return "ESC (g > l)";
    case HawkDoveCase::nsc:
      return "NSC, not ESC (g = l)";
    case HawkDoveCase::none:
      return "no NSC in this family (g < l)";
  }
  return "?";
}

HawkDoveResult construct_hawkdove_esc(const Rational& gain, const Rational& loss,
                                      const CostSchedule& cost, bool mixed_within_level,
                                      NumberMode mode) {
  if (gain <= 0) throw ConstructionError("gain must be positive", "g = " + to_string(gain));
  if (loss <= 0 || loss >= 1)
    throw ConstructionError("loss must lie in (0,1)", "l = " + to_string(loss));
  HawkDoveResult r;
  auto& v = r.verdict;
  v.conditions.push_back({"gain-at-least-loss", gain >= loss, gain - loss,
                          "g = " + to_string(gain) + ", l = " + to_string(loss)});
  if (gain < loss) {
    r.kind = HawkDoveCase::none;
    v.status = Status::refuted;
    v.reason = to_string(r.kind);
    return r;
  }

  const Rational window = gain + loss;
  int n_top = 1;
  while (cost(n_top + 1) <= window)
    if (++n_top > 10000) throw ConstructionError("cost window", "k_n never exceeds l + g");
  v.conditions.push_back({"cost-window", true, cost(n_top + 1) - window,
                          "k_" + std::to_string(n_top) + " <= l + g < k_" +
                              std::to_string(n_top + 1)});
  for (int n = 1; n <= n_top; ++n) {
    const Rational step = cost(n + 1) - cost(n);
    const bool ok = gain > step;
    v.conditions.push_back({"marginal-cost-below-gain[" + std::to_string(n) + "]", ok,
                            gain - step, "k_" + std::to_string(n + 1) + " - k_" +
                                             std::to_string(n) + " = " + to_string(step)});
    if (!ok)
      throw ConstructionError("marginal cost condition violated",
                              "k_" + std::to_string(n + 1) + " - k_" + std::to_string(n) + " = " +
                                  to_string(step) + " is not below g");
  }

  const SymmetricGame game = games::hawk_dove(gain, loss);
  const Action hawk = 0, dove = 1;
  Environment env{game, cost, DeceptionTable::always(1), mode};
  Configuration c{env, {}, {}};
  Mat aggressive(2, Vec(2, 0));
  aggressive[hawk] = {1, 1};
  for (int n = 1; n <= n_top; ++n) {
    const std::string label = "level-" + std::to_string(n);
    if (mixed_within_level) {
      std::map<std::string, UtilityFunction> in{{label, UtilityFunction::materialistic(game)}};
      c.dist.support.emplace_back(label, InterdependentUtility(in, UtilityFunction(aggressive)), n);
    } else {
      c.dist.support.push_back(discriminating_type(label, 2, dove, hawk, n));
    }
    c.dist.frequency.push_back(Rational(1, n_top));
  }
  const Rational p_hawk = gain / (1 + gain - loss);
  const MixedStrategy equal_play =
      mixed_within_level ? MixedStrategy(Vec{p_hawk, 1 - p_hawk}) : MixedStrategy::pure(2, dove);
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < c.size(); ++j) {
      if (i == j)
        c.policy.nash[{i, i}] = equal_play;
      else
        c.policy.deception[{i, j}] = MixedStrategy::pure(2, i > j ? hawk : dove);
    }
  c.dist.frequency = balanced_shares(c);
  r.kind = gain > loss ? HawkDoveCase::esc : HawkDoveCase::nsc;
  v.status = Status::certified_stable;
  v.reason = to_string(r.kind);
  v.configuration = c;
  r.configuration = std::move(c);
  return r;
}

}  // namespace coevo
