#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coevo/rational.hpp"

namespace coevo {

using Action = size_t;

/// Probability vector over a game's actions, stored normalized.
class MixedStrategy {
 public:
  MixedStrategy() = default;
  /// Throws std::invalid_argument on negative weights or a zero sum;
  /// the weights are rescaled to sum to one.
  explicit MixedStrategy(Vec weights);

  static MixedStrategy pure(size_t m, Action a);
  static MixedStrategy uniform(size_t m);

  size_t size() const { return weights_.size(); }
  const Vec& weights() const { return weights_; }
  const Rational& operator[](size_t i) const { return weights_[i]; }
  std::vector<Action> support() const;
  bool is_pure() const;
  /// The action of a pure strategy.
  Action pure_action() const;

  friend bool operator==(const MixedStrategy&, const MixedStrategy&) = default;

 private:
  Vec weights_;
};

/// Symmetric two-player game with fitness payoffs π(a_i, a_j) for the row player.
class SymmetricGame {
 public:
  SymmetricGame() = default;
  SymmetricGame(std::vector<std::string> actions, Mat payoff);

  size_t size() const { return actions_.size(); }
  const std::vector<std::string>& actions() const { return actions_; }
  const Mat& payoff() const { return payoff_; }
  const Rational& operator()(Action a, Action b) const { return payoff_[a][b]; }

  /// Index of an action label; throws std::out_of_range when absent.
  Action action_index(const std::string& label) const;

  friend bool operator==(const SymmetricGame&, const SymmetricGame&) = default;

 private:
  std::vector<std::string> actions_;
  Mat payoff_;
};

/// σᵀ π σ′. Throws std::invalid_argument on a dimension mismatch.
Rational payoff(const SymmetricGame& game, const MixedStrategy& sigma,
                const MixedStrategy& sigma_prime);

/// max_{a'} π(a', a) − π(a, a).
Rational deviation_gain(const SymmetricGame& game, Action a);

using ActionPair = std::pair<Action, Action>;

struct EfficiencyReport {
  /// Half the maximal payoff sum over pure pairs.
  Rational efficient_payoff;
  std::vector<ActionPair> efficient_profiles;
  std::vector<Action> symmetric_efficient_actions;
};

/// Searches pure pairs only. A mixed profile's payoff sum is a convex
/// combination of pure-pair sums, so some pure pair always attains the
/// maximum; mixed maximizers that tie it are not listed.
EfficiencyReport efficiency_analysis(const SymmetricGame& game);

/// All a with max_{a'} π(a', a) < π̂.
std::vector<Action> punishment_actions(const SymmetricGame& game);

/// Distinct unordered profiles must differ by more than `tol` both in the
/// row player's payoff and in the payoff sum.
bool is_generic(const SymmetricGame& game, const Rational& tol);

struct MaxminMinmax {
  Rational maxmin;
  Action maxmin_action = 0;
  Rational minmax;
  Action minmax_action = 0;
};

/// Pure maxmin max_a min_b π(a,b) and minmax min_b max_a π(a,b);
/// witnesses break ties by lowest index.
MaxminMinmax maxmin_minmax(const SymmetricGame& game);

struct GameDiagnostics {
  EfficiencyReport efficiency;
  std::vector<Action> punishment;
  bool generic = false;
  MaxminMinmax bounds;
  Vec deviation_gains;
};

GameDiagnostics diagnose(const SymmetricGame& game, const Rational& generic_tol);

/// Role-symmetrization of an asymmetric game given the row-role payoffs
/// `row` and the column-role payoffs `col` (both m1×m2). Action (i, j) means
/// "play i as the row player and j as the column player"; payoffs average
/// the two equally likely role assignments.
SymmetricGame symmetrize(const std::vector<std::string>& row_actions,
                         const std::vector<std::string>& col_actions, const Mat& row,
                         const Mat& col);

/// Standard games used throughout the tests and the CLI.
namespace games {
SymmetricGame rock_paper_scissors();
SymmetricGame prisoners_dilemma(const Rational& reward, const Rational& sucker,
                                const Rational& temptation, const Rational& punishment);
/// Rows/columns H, D: (H,H)=0, (H,D)=1+g, (D,H)=1−l, (D,D)=1.
SymmetricGame hawk_dove(const Rational& gain, const Rational& loss);
}  // namespace games

}  // namespace coevo
