#include "coevo/population.hpp"

#include <algorithm>
#include <stdexcept>

namespace coevo {

size_t TypeDistribution::index_of(const std::string& label) const {
  for (size_t i = 0; i < support.size(); ++i)
    if (support[i].label == label) return i;
  throw std::out_of_range("type '" + label + "' is not in the support");
}

int TypeDistribution::top_level() const {
  int top = 0;
  for (const auto& t : support) top = std::max(top, t.level);
  return top;
}

bool needs_nash(const Configuration& c, size_t i, size_t j) {
  const int n = c.type(i).level, n2 = c.type(j).level;
  return c.env.q(n, n2) + c.env.q(n2, n) < 1;
}

bool needs_deception(const Configuration& c, size_t i, size_t j) {
  return c.type(i).level != c.type(j).level;
}

ValidationReport validate(const Configuration& config) {
  ValidationReport r;
  const auto& d = config.dist;
  const size_t m = config.env.game.size();
  const Tolerance tol = config.env.tolerance();
  if (d.support.empty()) r.errors.push_back("type distribution is empty");
  if (d.frequency.size() != d.support.size())
    r.errors.push_back("frequency list and support differ in length");
  Rational total = 0;
  for (size_t i = 0; i < d.frequency.size(); ++i) {
    if (d.frequency[i] <= 0)
      r.errors.push_back("type '" + d.support[i].label + "' has nonpositive frequency");
    total += d.frequency[i];
  }
  if (!d.frequency.empty() && !tol.eq(total, 1) && abs(total - 1) > Rational(1, 1000000000000))
    r.errors.push_back("frequencies sum to " + to_string(total) + ", not 1");
  for (size_t i = 0; i < d.size(); ++i) {
    if (d.support[i].size() != m)
      r.errors.push_back("type '" + d.support[i].label + "' has the wrong dimension");
    for (size_t j = i + 1; j < d.size(); ++j) {
      if (d.support[i].label == d.support[j].label)
        r.errors.push_back("duplicate type label '" + d.support[i].label + "'");
      else if (d.support[i].same_type(d.support[j]))
        r.errors.push_back("types '" + d.support[i].label + "' and '" + d.support[j].label +
                           "' have identical preferences and level");
    }
  }
  if (!r.errors.empty()) {
    r.valid = false;
    return r;
  }

  auto report = [&](size_t i, size_t j, std::string what, Rational mag) {
    r.violations.push_back({i, j, std::move(what), std::move(mag)});
  };
  const auto& pol = config.policy;
  for (size_t i = 0; i < d.size(); ++i)
    for (size_t j = 0; j < d.size(); ++j) {
      const bool need_n = needs_nash(config, i, j), need_d = needs_deception(config, i, j);
      if (need_n && !pol.nash.count({i, j})) report(i, j, "missing non-deception play", 0);
      if (!need_n && pol.nash.count({i, j})) report(i, j, "superfluous non-deception play", 0);
      if (need_d && !pol.deception.count({i, j})) report(i, j, "missing deception play", 0);
      if (!need_d && pol.deception.count({i, j})) report(i, j, "superfluous deception play", 0);
      for (const auto* table : {&pol.nash, &pol.deception}) {
        auto it = table->find({i, j});
        if (it != table->end() && it->second.size() != m)
          report(i, j, "strategy has the wrong dimension", 0);
      }
    }
  if (!r.violations.empty()) {
    r.valid = false;
    return r;
  }

  for (size_t i = 0; i < d.size(); ++i)
    for (size_t j = i; j < d.size(); ++j) {
      const auto& ti = d.support[i];
      const auto& tj = d.support[j];
      if (needs_nash(config, i, j)) {
        const auto& s = pol.nash.at({i, j});
        const auto& s2 = pol.nash.at({j, i});
        Rational v = nash_violation(ti.utility_against(tj), tj.utility_against(ti), s, s2);
        if (!tol.is_zero(v)) report(i, j, "non-deception play is not a Nash equilibrium", v);
      }
      if (needs_deception(config, i, j)) {
        size_t hi = ti.level > tj.level ? i : j, lo = hi == i ? j : i;
        Rational v = deception_violation(config.env, d.support[hi], d.support[lo],
                                         pol.deception.at({hi, lo}), pol.deception.at({lo, hi}));
        if (!tol.is_zero(v)) report(hi, lo, "deception play is not a deception equilibrium", v);
      }
    }
  r.valid = r.violations.empty();
  return r;
}

void complete_policy(Configuration& config) {
  const auto& d = config.dist;
  auto& pol = config.policy;
  const size_t m = config.env.game.size();
  for (size_t i = 0; i < d.size(); ++i)
    for (size_t j = i; j < d.size(); ++j) {
      const auto& ti = d.support[i];
      const auto& tj = d.support[j];
      if (needs_nash(config, i, j) && (!pol.nash.count({i, j}) || !pol.nash.count({j, i}))) {
        auto eqs = nash_equilibria(ti.utility_against(tj), tj.utility_against(ti)).equilibria;
        const Equilibrium* pick = nullptr;
        for (const auto& e : eqs) {
          if (i == j && !(e.row == e.col)) continue;
          if (pol.nash.count({i, j}) && !(pol.nash.at({i, j}) == e.row)) continue;
          if (pol.nash.count({j, i}) && !(pol.nash.at({j, i}) == e.col)) continue;
          pick = &e;
          break;
        }
        if (!pick)
          for (const auto& e : eqs)
            if (i != j || e.row == e.col) {
              pick = &e;
              break;
            }
        if (!pick)
          throw std::runtime_error("no symmetric extreme equilibrium for type '" + ti.label +
                                   "' against itself");
        if (!pol.nash.count({i, j})) {
          pol.nash[{i, j}] = pick->row;
          pol.auto_nash.insert({i, j});
        }
        if (!pol.nash.count({j, i})) {
          pol.nash[{j, i}] = pick->col;
          pol.auto_nash.insert({j, i});
        }
      }
      if (needs_deception(config, i, j)) {
        size_t hi = ti.level > tj.level ? i : j, lo = hi == i ? j : i;
        if (pol.deception.count({hi, lo}) && pol.deception.count({lo, hi})) continue;
        auto de = deception_equilibria(config.env, d.support[hi], d.support[lo]);
        ActionPair pick = de.optima.front();
        for (const auto& p : de.optima) {
          if (pol.deception.count({hi, lo}) &&
              !(pol.deception.at({hi, lo}) == MixedStrategy::pure(m, p.first)))
            continue;
          if (pol.deception.count({lo, hi}) &&
              !(pol.deception.at({lo, hi}) == MixedStrategy::pure(m, p.second)))
            continue;
          pick = p;
          break;
        }
        if (!pol.deception.count({hi, lo})) {
          pol.deception[{hi, lo}] = MixedStrategy::pure(m, pick.first);
          pol.auto_deception.insert({hi, lo});
        }
        if (!pol.deception.count({lo, hi})) {
          pol.deception[{lo, hi}] = MixedStrategy::pure(m, pick.second);
          pol.auto_deception.insert({lo, hi});
        }
      }
    }
}

Rational match_fitness(const Configuration& config, size_t i, size_t j) {
  if (i >= config.size() || j >= config.size())
    throw std::out_of_range("match_fitness: type not in support");
  const int n = config.type(i).level, n2 = config.type(j).level;
  const Rational qd = config.env.q(n, n2) + config.env.q(n2, n);
  const auto& game = config.env.game;
  Rational f = 0;
  if (qd > 0)
    f += qd * payoff(game, config.policy.deception.at({i, j}), config.policy.deception.at({j, i}));
  if (qd < 1)
    f += (1 - qd) * payoff(game, config.policy.nash.at({i, j}), config.policy.nash.at({j, i}));
  return f;
}

Rational expected_fitness(const Configuration& config, size_t i) {
  Rational f = 0;
  for (size_t j = 0; j < config.size(); ++j)
    f += config.dist.frequency[j] * match_fitness(config, i, j);
  return f - config.env.cost(config.type(i).level);
}

Rational average_fitness(const Configuration& config) {
  Rational f = 0;
  for (size_t i = 0; i < config.size(); ++i)
    f += config.dist.frequency[i] * expected_fitness(config, i);
  return f;
}

bool is_balanced(const Configuration& config, const Rational& tol) {
  const Rational avg = average_fitness(config);
  for (size_t i = 0; i < config.size(); ++i)
    if (abs(expected_fitness(config, i) - avg) > tol) return false;
  return true;
}

Configuration pure_configuration(const Environment& env, const CognitiveType& theta,
                                 Action a_star) {
  Configuration c{env, {{theta}, {Rational(1)}}, {}};
  c.policy.nash[{0, 0}] = MixedStrategy::pure(env.game.size(), a_star);
  return c;
}

}  // namespace coevo
