#pragma once

#include <vector>

#include "coevo/environment.hpp"
#include "coevo/types.hpp"

namespace coevo {

/// Pure generators of Σ(θ): actions that are a best reply to some opponent
/// strategy under some branch of θ's preferences.
std::vector<Action> undominated_actions(const CognitiveType& theta,
                                        const Tolerance& tol = Tolerance::exact());

/// Smallest worst-case regret of playing all of `support` at once, over the
/// branches of θ and beliefs about the opponent's play; ≤ 0 iff a strategy
/// with this support lies in Σ(θ).
Rational undominated_regret(const CognitiveType& theta, const std::vector<Action>& support);

struct DeceptionResult {
  /// Deceiver's optimal subjective utility.
  Rational value;
  /// All optimal pure profiles (deceiver action, deceived action).
  std::vector<ActionPair> optima;
  /// Pure undominated actions of the deceived type.
  std::vector<Action> feasible;
};

/// Throws std::invalid_argument unless deceiver.level > deceived.level.
DeceptionResult deception_equilibria(const Environment& env, const CognitiveType& deceiver,
                                     const CognitiveType& deceived);

struct FmdeResult {
  /// max π(σ, σ′) over σ ∈ Δ(A), σ′ ∈ Σ(deceived).
  Rational fitness_value;
  std::vector<ActionPair> fitness_maximizers;
  /// Fitness maximizers that are also deception equilibria; may be empty.
  std::vector<ActionPair> profiles;
};

FmdeResult fmde(const Environment& env, const CognitiveType& deceiver,
                const CognitiveType& deceived);

/// How far (σ, σ′) is from being a deception equilibrium: the larger of the
/// deceiver's subjective shortfall and the deceived side's undominatedness regret.
Rational deception_violation(const Environment& env, const CognitiveType& deceiver,
                             const CognitiveType& deceived, const MixedStrategy& sigma,
                             const MixedStrategy& sigma_prime);

}  // namespace coevo
