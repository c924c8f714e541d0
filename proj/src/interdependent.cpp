#include "coevo/interdependent.hpp"

#include <algorithm>
#include <stdexcept>

namespace coevo {

std::vector<Action> id_undominated(const CognitiveType& theta, const Tolerance& tol) {
  return undominated_actions(theta, tol);
}

Action pure_action_of(const Configuration& config) {
  std::optional<Action> a;
  for (const auto& [pair, s] : config.policy.nash) {
    if (!s.is_pure() || (a && *a != s.pure_action()))
      throw std::invalid_argument("configuration is not pure: " + config.type(pair.first).label +
                                  " against " + config.type(pair.second).label);
    a = s.pure_action();
  }
  if (!a) throw std::invalid_argument("configuration has no non-deception play");
  return *a;
}

StabilityVerdict id_pure_nsc_necessary(const Configuration& config) {
  StabilityVerdict v;
  v.configuration = config;
  const auto& env = config.env;
  const auto& game = env.game;
  const Tolerance tol = env.tolerance();
  const Action a = pure_action_of(config);

  int lo = config.type(0).level, hi = lo;
  for (const auto& t : config.dist.support) {
    lo = std::min(lo, t.level);
    hi = std::max(hi, t.level);
  }
  v.conditions.push_back({"uniform-level", lo == hi, Rational(lo - hi),
                          "levels range from " + std::to_string(lo) + " to " + std::to_string(hi)});
  const int n = hi;
  const Rational mm = maxmin_minmax(game).maxmin;
  const Rational k = env.cost(n);
  const Rational slack = game(a, a) - mm - k;
  v.conditions.push_back({"payoff-covers-cost-over-maxmin", tol.ge(slack, 0), slack,
                          "π(a*,a*) − M̲ − k_n with n = " + std::to_string(n)});
  const Rational g = deviation_gain(game, a);
  const EffectiveCost c = effective_cost_at_level(env, n);
  const bool cheap = c.infinite || tol.le(g, c.value);
  v.conditions.push_back({"deviation-gain-within-level-cost", cheap,
                          c.infinite ? Rational(0) : Rational(c.value - g),
                          "c(n) − g(a*) with n = " + std::to_string(n)});

  auto failed = std::find_if(v.conditions.begin(), v.conditions.end(),
                             [](const Condition& x) { return !x.passed; });
  if (failed != v.conditions.end()) {
    v.status = Status::refuted;
    v.reason = "necessary condition failed: " + failed->name;
    Witness w;
    w.kind = "necessary-condition";
    w.value = failed->margin;
    v.witness = w;
  } else {
    v.status = Status::inconclusive;
    v.reason = "necessary conditions hold";
  }
  return v;
}

std::string discriminating_label(const SymmetricGame& game, Action a_star, Action others,
                                 int level) {
  return "discriminating-" + game.actions()[a_star] + "-" + game.actions()[others] + "-" +
         std::to_string(level);
}

StabilityVerdict id_pure_esc_sufficient(const Environment& env, Action a_star, int level,
                                        const std::optional<std::vector<std::string>>& universe) {
  const auto& game = env.game;
  if (a_star >= game.size()) throw std::invalid_argument("invalid action");
  if (level < 1) throw std::invalid_argument("level must be at least 1");
  const Tolerance tol = env.tolerance();
  const MaxminMinmax bounds = maxmin_minmax(game);
  const Action others = bounds.minmax_action;
  const std::string label = discriminating_label(game, a_star, others, level);

  StabilityVerdict v;
  if (universe && std::find(universe->begin(), universe->end(), label) == universe->end()) {
    v.status = Status::inconclusive;
    v.reason = "not representable: '" + label + "' is not in the declared label universe";
    return v;
  }
  CognitiveType theta = discriminating_type(label, game.size(), a_star, others, level);
  Configuration config = pure_configuration(env, theta, a_star);
  v.configuration = config;

  const Rational slack = game(a_star, a_star) - bounds.minmax - env.cost(level);
  v.conditions.push_back({"payoff-exceeds-cost-over-minmax", tol.gt(slack, 0), slack,
                          "π(a*,a*) − M̄ − k_n"});
  const Rational g = deviation_gain(game, a_star);
  const EffectiveCost c = effective_cost_at_level(env, level);
  const bool cheap = c.infinite || tol.lt(g, c.value);
  v.conditions.push_back({"deviation-gain-below-level-cost", cheap,
                          c.infinite ? Rational(0) : Rational(c.value - g), "c(n) − g(a*)"});
  if (v.conditions[0].passed && v.conditions[1].passed) {
    v.status = Status::certified_stable;
    v.reason = "ESC: incumbents play " + game.actions()[a_star] + " among themselves and " +
               game.actions()[others] + " against anyone else";
    return v;
  }
  StabilityVerdict nec = id_pure_nsc_necessary(config);
  for (auto& cnd : nec.conditions) {
    cnd.name = "necessary:" + cnd.name;
    v.conditions.push_back(cnd);
  }
  v.status = nec.status;
  v.witness = nec.witness;
  v.reason = nec.status == Status::refuted
                 ? "sufficient conditions fail and " + nec.reason
                 : "sufficient conditions fail; necessary conditions hold";
  return v;
}

}  // namespace coevo
