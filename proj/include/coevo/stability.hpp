#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coevo/population.hpp"

namespace coevo {

/// Symmetric game over incumbent types: B(i,j) = match fitness − k_{n_i}.
struct TypeGame {
  std::vector<std::string> labels;
  Mat payoff;

  size_t size() const { return labels.size(); }
};

TypeGame build_type_game(const Configuration& config);
/// The fitness game itself viewed as a type game (for NSS/ESS tests on π).
TypeGame as_type_game(const SymmetricGame& game);

enum class Status { certified_stable, refuted, inconclusive };
std::string to_string(Status s);

struct Condition {
  std::string name;
  bool passed = false;
  /// Signed slack: nonnegative when the condition holds.
  Rational margin;
  std::string detail;
};

/// μ′ entering at share ε with the focal post-entry policy. The post-entry
/// configuration lists the incumbents first, then the mutants.
struct InvasionScenario {
  std::string recipe;
  std::string description;
  Configuration post_entry;
  size_t incumbents = 0;
  /// μ′ over the mutant types (post_entry.dist.support[incumbents + k]).
  Vec mutant_shares;
  /// A share at which the mutants strictly outperform.
  Rational epsilon;
  /// y·Bx − x·Bx and y·By − x·By in the post-entry type game.
  Rational first_order;
  Rational second_order;
};

struct Witness {
  /// "direction", "non-nash", "invasion" or "necessary-condition".
  std::string kind;
  Vec direction;
  Vec mutant;
  Rational value;
  std::optional<InvasionScenario> scenario;
};

struct StabilityVerdict {
  Status status = Status::inconclusive;
  std::vector<Condition> conditions;
  std::optional<Witness> witness;
  std::string reason;
  /// Certified configuration (certify) or the configuration that was examined.
  std::optional<Configuration> configuration;
};

struct NssOptions {
  size_t samples = 10000;
  std::uint64_t seed = 1;
  Tolerance tol;
};

StabilityVerdict is_nss(const Mat& payoff, const MixedStrategy& x, const NssOptions& opt = {});
StabilityVerdict is_ess(const Mat& payoff, const MixedStrategy& x, const NssOptions& opt = {});

/// Looks for w with wᵀSw < 0 (or ≤ 0 with w ≠ 0 when `strict`), i.e. a
/// certificate that the symmetric matrix S is not positive semidefinite
/// (definite). Exact symmetric elimination with diagonal pivoting.
std::optional<Vec> psd_counterexample(const Mat& s, bool strict, const Rational& tol = 0);

struct EffectiveCost {
  Rational value;
  /// Level attaining the minimum.
  int level = 0;
  /// The minimum exceeds the cap (vanishing deception probabilities).
  bool infinite = false;
};

/// c = min_{n≥2} k_n / q(n,1).
EffectiveCost effective_cost(const Environment& env, const Rational& cap = Rational(1000000000));
/// c(n) = min_{m>n} (k_m − k_n) / q(m,n); c(1) = c.
EffectiveCost effective_cost_at_level(const Environment& env, int n,
                                      const Rational& cap = Rational(1000000000));

/// The incumbent preference that makes every action other than a* and the
/// punishment action ã strictly dominated: 1 for ã against a′ ≠ a*, 0 for a*
/// or for ã against a*, −1 otherwise.
UtilityFunction punishing_utility(size_t m, Action a_star, Action punish);

struct RefuteOptions {
  /// Highest level tried by the indifferent-deceiver recipe.
  int budget = 10;
  NssOptions nss;
};

/// Pure NSC test for a*: certified iff π(a*,a*) = π̂ and g(a*) ≤ c.
StabilityVerdict certify_pure_nsc(const Environment& env, Action a_star,
                                  const RefuteOptions& opt = {});

/// Necessary conditions on every highest-level type θ̄: efficient self-play,
/// fitness-maximizing deception of every lower type, and no lower type
/// earning more than π̂ against θ̄.
StabilityVerdict check_highest_type_conditions(const Configuration& config);

/// Generic games with a unique symmetric efficient profile (ā,ā): every match
/// must play ā, and x = e_j − e_k must satisfy xᵀBx ≤ 0 for every type pair.
StabilityVerdict check_generic_efficiency(const Configuration& config);

}  // namespace coevo
