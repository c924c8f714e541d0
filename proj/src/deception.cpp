#include "coevo/deception.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace coevo {

std::vector<Action> undominated_actions(const CognitiveType& theta, const Tolerance& tol) {
  std::set<Action> all;
  for (const UtilityFunction* u : theta.branches())
    for (Action a : undominated_pure_actions(*u, tol).undominated) all.insert(a);
  return {all.begin(), all.end()};
}

Rational undominated_regret(const CognitiveType& theta, const std::vector<Action>& support) {
  std::optional<Rational> best;
  for (const UtilityFunction* u : theta.branches()) {
    Rational r = common_belief_regret(*u, support);
    if (!best || r < *best) best = r;
  }
  return *best;
}

namespace {

void check_levels(const Environment& env, const CognitiveType& deceiver,
                  const CognitiveType& deceived) {
  if (deceiver.level <= deceived.level)
    throw std::invalid_argument("deception requires the deceiver's level (" +
                                std::to_string(deceiver.level) + ") to exceed the deceived's (" +
                                std::to_string(deceived.level) + ")");
  if (deceiver.size() != env.game.size() || deceived.size() != env.game.size())
    throw std::invalid_argument("type dimension does not match the game");
}

}  // namespace

DeceptionResult deception_equilibria(const Environment& env, const CognitiveType& deceiver,
                                     const CognitiveType& deceived) {
  check_levels(env, deceiver, deceived);
  const Tolerance tol = env.tolerance();
  DeceptionResult r;
  r.feasible = undominated_actions(deceived, tol);
  const UtilityFunction& u = deceiver.utility_against(deceived);
  bool first = true;
  for (Action b : r.feasible)
    for (Action a = 0; a < env.game.size(); ++a)
      if (first || u(a, b) > r.value) {
        r.value = u(a, b);
        first = false;
      }
  for (Action a = 0; a < env.game.size(); ++a)
    for (Action b : r.feasible)
      if (tol.ge(u(a, b), r.value)) r.optima.emplace_back(a, b);
  return r;
}

FmdeResult fmde(const Environment& env, const CognitiveType& deceiver,
                const CognitiveType& deceived) {
  DeceptionResult de = deception_equilibria(env, deceiver, deceived);
  const Tolerance tol = env.tolerance();
  FmdeResult r;
  bool first = true;
  for (Action b : de.feasible)
    for (Action a = 0; a < env.game.size(); ++a)
      if (first || env.game(a, b) > r.fitness_value) {
        r.fitness_value = env.game(a, b);
        first = false;
      }
  for (Action a = 0; a < env.game.size(); ++a)
    for (Action b : de.feasible)
      if (tol.ge(env.game(a, b), r.fitness_value)) {
        r.fitness_maximizers.emplace_back(a, b);
        if (std::find(de.optima.begin(), de.optima.end(), ActionPair{a, b}) != de.optima.end())
          r.profiles.emplace_back(a, b);
      }
  return r;
}

Rational deception_violation(const Environment& env, const CognitiveType& deceiver,
                             const CognitiveType& deceived, const MixedStrategy& sigma,
                             const MixedStrategy& sigma_prime) {
  DeceptionResult de = deception_equilibria(env, deceiver, deceived);
  const UtilityFunction& u = deceiver.utility_against(deceived);
  Rational achieved = bilinear(sigma.weights(), u.matrix(), sigma_prime.weights());
  Rational shortfall = de.value - achieved;
  Rational regret = undominated_regret(deceived, sigma_prime.support());
  return std::max({Rational(0), shortfall, regret});
}

}  // namespace coevo
