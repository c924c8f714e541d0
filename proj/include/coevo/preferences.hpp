#pragma once

#include <vector>

#include "coevo/game.hpp"
#include "coevo/rational.hpp"

namespace coevo {

/// Subjective utility u(a_i, a_j), stored modulo positive affine
/// transformations: a non-constant matrix is rescaled so that its minimum is
/// 0 and its maximum 1, and a constant matrix becomes all zeros.
class UtilityFunction {
 public:
  UtilityFunction() = default;
  explicit UtilityFunction(const Mat& raw);

  static UtilityFunction materialistic(const SymmetricGame& game);
  static UtilityFunction constant(size_t m);
  /// u(a, a') = w(a'): indifferent over one's own actions.
  static UtilityFunction opponent_only(const Vec& w);

  size_t size() const { return matrix_.size(); }
  const Mat& matrix() const { return matrix_; }
  const Rational& operator()(Action a, Action b) const { return matrix_[a][b]; }
  bool is_constant() const;
  /// Utility of every own action against `opponent`.
  Vec against(const MixedStrategy& opponent) const;

  friend bool operator==(const UtilityFunction&, const UtilityFunction&) = default;

 private:
  Mat matrix_;
};

/// Pure generators of BR_u(σ'); every mixture over them is also a best reply.
std::vector<Action> best_replies(const UtilityFunction& u, const MixedStrategy& opponent,
                                 const Tolerance& tol = Tolerance::exact());

struct DominanceResult {
  std::vector<Action> undominated;
  /// Float mode only: actions whose optimal dominance margin is within tol of zero.
  std::vector<Action> boundary;
  /// Optimal ε of the dominance LP, per action.
  Vec margins;
};

/// Pure actions that are best replies to some belief. Action a qualifies iff
/// the LP "maximize ε: Σ_b y_b u(b,c) ≥ u(a,c) + ε for every column c, y a
/// mixture over the other actions" has optimum ≤ 0 (in two-player games an
/// action is never a best reply exactly when a mixture strictly dominates it).
DominanceResult undominated_pure_actions(const UtilityFunction& u,
                                         const Tolerance& tol = Tolerance::exact());

/// Smallest achievable worst-case regret of playing every action in `support`
/// simultaneously: min over beliefs p of max_{a∈support, b} u(b,p) − u(a,p).
/// A strategy with that support is undominated iff this is ≤ 0.
Rational common_belief_regret(const UtilityFunction& u, const std::vector<Action>& support);

struct Equilibrium {
  MixedStrategy row;
  MixedStrategy col;
  /// Extreme point that shares a strategy with another extreme equilibrium,
  /// i.e. it lies on a nontrivial equilibrium component.
  bool in_component = false;
};

struct EquilibriumSet {
  std::vector<Equilibrium> equilibria;
  /// Some best-response polytope vertex has more tight constraints than its dimension.
  bool degenerate = false;
};

/// All extreme Nash equilibria of the game in which the row player maximizes
/// `u` and the column player `u_prime` (each indexed own action first).
/// Computed by enumerating vertices of the two best-response polytopes and
/// pairing completely labelled ones; sorted by total support size, then
/// lexicographically.
EquilibriumSet nash_equilibria(const UtilityFunction& u, const UtilityFunction& u_prime);

/// Largest subjective gain of a unilateral pure deviation, over both players.
Rational nash_violation(const UtilityFunction& u, const UtilityFunction& u_prime,
                        const MixedStrategy& sigma, const MixedStrategy& sigma_prime);

}  // namespace coevo
