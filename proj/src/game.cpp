#include "coevo/game.hpp"

#include <algorithm>
#include <stdexcept>

namespace coevo {

MixedStrategy::MixedStrategy(Vec weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw std::invalid_argument("mixed strategy: empty");
  Rational total = 0;
  for (const auto& w : weights_) {
    if (w < 0) throw std::invalid_argument("mixed strategy: negative weight");
    total += w;
  }
  if (total == 0) throw std::invalid_argument("mixed strategy: weights sum to zero");
  if (total != 1)
    for (auto& w : weights_) w /= total;
}

MixedStrategy MixedStrategy::pure(size_t m, Action a) {
  if (a >= m) throw std::invalid_argument("pure strategy: action out of range");
  Vec w(m, 0);
  w[a] = 1;
  return MixedStrategy(std::move(w));
}

MixedStrategy MixedStrategy::uniform(size_t m) { return MixedStrategy(Vec(m, Rational(1))); }

std::vector<Action> MixedStrategy::support() const {
  std::vector<Action> s;
  for (size_t i = 0; i < weights_.size(); ++i)
    if (weights_[i] > 0) s.push_back(i);
  return s;
}

bool MixedStrategy::is_pure() const { return support().size() == 1; }

Action MixedStrategy::pure_action() const {
  auto s = support();
  if (s.size() != 1) throw std::logic_error("strategy is not pure");
  return s.front();
}

SymmetricGame::SymmetricGame(std::vector<std::string> actions, Mat payoff)
    : actions_(std::move(actions)), payoff_(std::move(payoff)) {
  const size_t m = actions_.size();
  if (m < 2) throw std::invalid_argument("game needs at least two actions");
  if (payoff_.size() != m)
    throw std::invalid_argument("payoff matrix has " + std::to_string(payoff_.size()) +
                                " rows for " + std::to_string(m) + " actions");
  for (size_t i = 0; i < m; ++i)
    if (payoff_[i].size() != m)
      throw std::invalid_argument("payoff row " + std::to_string(i + 1) + " has " +
                                  std::to_string(payoff_[i].size()) + " entries, expected " +
                                  std::to_string(m));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j)
      if (actions_[i] == actions_[j])
        throw std::invalid_argument("duplicate action label '" + actions_[i] + "'");
}

Action SymmetricGame::action_index(const std::string& label) const {
  auto it = std::find(actions_.begin(), actions_.end(), label);
  if (it == actions_.end()) throw std::out_of_range("unknown action '" + label + "'");
  return static_cast<Action>(it - actions_.begin());
}

Rational payoff(const SymmetricGame& game, const MixedStrategy& sigma,
                const MixedStrategy& sigma_prime) {
  if (sigma.size() != game.size() || sigma_prime.size() != game.size())
    throw std::invalid_argument("payoff: strategy dimension does not match the game");
  return bilinear(sigma.weights(), game.payoff(), sigma_prime.weights());
}

Rational deviation_gain(const SymmetricGame& game, Action a) {
  if (a >= game.size()) throw std::invalid_argument("deviation_gain: invalid action");
  Rational best = game(0, a);
  for (Action b = 1; b < game.size(); ++b) best = std::max(best, Rational(game(b, a)));
  return best - game(a, a);
}

EfficiencyReport efficiency_analysis(const SymmetricGame& game) {
  EfficiencyReport r;
  const size_t m = game.size();
  Rational best_sum = game(0, 0) + game(0, 0);
  for (Action a = 0; a < m; ++a)
    for (Action b = 0; b < m; ++b) best_sum = std::max(best_sum, Rational(game(a, b) + game(b, a)));
  r.efficient_payoff = best_sum / 2;
  for (Action a = 0; a < m; ++a)
    for (Action b = 0; b < m; ++b)
      if (game(a, b) + game(b, a) == best_sum) {
        r.efficient_profiles.emplace_back(a, b);
        if (a == b) r.symmetric_efficient_actions.push_back(a);
      }
  return r;
}

std::vector<Action> punishment_actions(const SymmetricGame& game) {
  const Rational hat = efficiency_analysis(game).efficient_payoff;
  std::vector<Action> out;
  for (Action a = 0; a < game.size(); ++a) {
    Rational col_max = game(0, a);
    for (Action b = 1; b < game.size(); ++b) col_max = std::max(col_max, Rational(game(b, a)));
    if (col_max < hat) out.push_back(a);
  }
  return out;
}

bool is_generic(const SymmetricGame& game, const Rational& tol) {
  if (tol < 0) throw std::invalid_argument("is_generic: negative tolerance");
  const size_t m = game.size();
  std::vector<ActionPair> unordered;
  for (Action a = 0; a < m; ++a)
    for (Action b = a; b < m; ++b) unordered.emplace_back(a, b);
  // Row payoffs are compared over ordered profiles whose unordered sets differ.
  for (Action a = 0; a < m; ++a)
    for (Action a2 = 0; a2 < m; ++a2)
      for (Action b = 0; b < m; ++b)
        for (Action b2 = 0; b2 < m; ++b2) {
          if (std::minmax(a, a2) == std::minmax(b, b2)) continue;
          if (abs(game(a, a2) - game(b, b2)) <= tol) return false;
        }
  for (size_t i = 0; i < unordered.size(); ++i)
    for (size_t j = i + 1; j < unordered.size(); ++j) {
      auto [a, a2] = unordered[i];
      auto [b, b2] = unordered[j];
      if (abs(game(a, a2) + game(a2, a) - game(b, b2) - game(b2, b)) <= tol) return false;
    }
  return true;
}

MaxminMinmax maxmin_minmax(const SymmetricGame& game) {
  const size_t m = game.size();
  MaxminMinmax r;
  for (Action a = 0; a < m; ++a) {
    Rational row_min = *std::min_element(game.payoff()[a].begin(), game.payoff()[a].end());
    if (a == 0 || row_min > r.maxmin) {
      r.maxmin = row_min;
      r.maxmin_action = a;
    }
  }
  for (Action b = 0; b < m; ++b) {
    Rational col_max = game(0, b);
    for (Action a = 1; a < m; ++a) col_max = std::max(col_max, Rational(game(a, b)));
    if (b == 0 || col_max < r.minmax) {
      r.minmax = col_max;
      r.minmax_action = b;
    }
  }
  return r;
}

GameDiagnostics diagnose(const SymmetricGame& game, const Rational& generic_tol) {
  GameDiagnostics d;
  d.efficiency = efficiency_analysis(game);
  d.punishment = punishment_actions(game);
  d.generic = is_generic(game, generic_tol);
  d.bounds = maxmin_minmax(game);
  for (Action a = 0; a < game.size(); ++a) d.deviation_gains.push_back(deviation_gain(game, a));
  return d;
}

SymmetricGame symmetrize(const std::vector<std::string>& row_actions,
                         const std::vector<std::string>& col_actions, const Mat& row,
                         const Mat& col) {
  const size_t m1 = row_actions.size(), m2 = col_actions.size();
  auto check = [&](const Mat& x, const char* what) {
    if (x.size() != m1) throw std::invalid_argument(std::string(what) + ": wrong row count");
    for (const auto& r : x)
      if (r.size() != m2) throw std::invalid_argument(std::string(what) + ": wrong column count");
  };
  check(row, "row-role payoffs");
  check(col, "column-role payoffs");
  std::vector<std::string> labels;
  std::vector<ActionPair> pairs;
  for (size_t i = 0; i < m1; ++i)
    for (size_t j = 0; j < m2; ++j) {
      labels.push_back(row_actions[i] + "|" + col_actions[j]);
      pairs.emplace_back(i, j);
    }
  const size_t m = labels.size();
  Mat p(m, Vec(m));
  for (size_t s = 0; s < m; ++s)
    for (size_t t = 0; t < m; ++t) {
      auto [i, j] = pairs[s];
      auto [k, l] = pairs[t];
      // I am the row player (i vs the opponent's column action l), or the
      // column player (j vs the opponent's row action k).
      p[s][t] = (row[i][l] + col[k][j]) / 2;
    }
  return SymmetricGame(std::move(labels), std::move(p));
}

namespace games {

SymmetricGame rock_paper_scissors() {
  return SymmetricGame({"R", "P", "S"}, {{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}});
}

SymmetricGame prisoners_dilemma(const Rational& reward, const Rational& sucker,
                                const Rational& temptation, const Rational& punishment) {
  return SymmetricGame({"C", "D"}, {{reward, sucker}, {temptation, punishment}});
}

SymmetricGame hawk_dove(const Rational& gain, const Rational& loss) {
  return SymmetricGame({"H", "D"}, {{0, 1 + gain}, {1 - loss, 1}});
}

}  // namespace games

}  // namespace coevo
