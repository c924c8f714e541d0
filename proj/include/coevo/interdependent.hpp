#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coevo/stability.hpp"

namespace coevo {

/// Pure actions that are best replies to some belief about the opponent's
/// play and type: the union of the per-branch undominated sets.
std::vector<Action> id_undominated(const CognitiveType& theta, const Tolerance& tol = {});

/// The action every non-deception match of a pure configuration plays.
/// Throws std::invalid_argument when the configuration is not pure.
Action pure_action_of(const Configuration& config);

/// Necessary conditions for a pure configuration to be stable when
/// preferences may depend on the opponent's type: (1) all incumbents share
/// one level n, (2) π(a*,a*) − M̲ ≥ k_n, (3) g(a*) ≤ c(n). Refuted when any
/// fails, inconclusive otherwise.
StabilityVerdict id_pure_nsc_necessary(const Configuration& config);

/// Sufficient conditions for (θ̂, a*) to be an ESC, θ̂ the discriminating type
/// playing a* against its own kind and the minmax action against others:
/// π(a*,a*) − M̄ > k_n and g(a*) < c(n). When they fail the necessity check
/// decides between refuted and inconclusive. With a declared label
/// `universe` that omits θ̂'s label the result is inconclusive, "not
/// representable".
StabilityVerdict id_pure_esc_sufficient(const Environment& env, Action a_star, int level,
                                        const std::optional<std::vector<std::string>>& universe =
                                            std::nullopt);

/// Label given to the discriminating witness type.
std::string discriminating_label(const SymmetricGame& game, Action a_star, Action others, int level);

}  // namespace coevo
