#pragma once

#include <map>
#include <utility>

#include "coevo/game.hpp"
#include "coevo/rational.hpp"

namespace coevo {

/// k_1..k_N given explicitly, then k_n = k_N + (n − N)·increment.
class CostSchedule {
 public:
  CostSchedule() : explicit_{0}, increment_(1) {}
  /// Throws std::invalid_argument unless k_1 = 0, the list is strictly
  /// increasing and increment > 0.
  CostSchedule(Vec explicit_costs, Rational increment);
  /// k_n = slope·(n − 1).
  static CostSchedule linear(const Rational& slope);

  Rational operator()(int n) const;
  int explicit_levels() const { return static_cast<int>(explicit_.size()); }
  const Vec& explicit_costs() const { return explicit_; }
  const Rational& increment() const { return increment_; }

  friend bool operator==(const CostSchedule&, const CostSchedule&) = default;

 private:
  Vec explicit_;
  Rational increment_;
};

/// q(n, n′): zero whenever n ≤ n′; otherwise the tabulated value, falling
/// back to `fallback` for pairs not listed.
class DeceptionTable {
 public:
  DeceptionTable() : fallback_(1) {}
  /// Throws std::invalid_argument on entries with n ≤ n′ that are nonzero,
  /// values outside (0, 1], or a fallback outside (0, 1].
  DeceptionTable(std::map<std::pair<int, int>, Rational> entries, Rational fallback);
  static DeceptionTable always(const Rational& q = 1) { return DeceptionTable({}, q); }

  Rational operator()(int n, int n_prime) const;
  const std::map<std::pair<int, int>, Rational>& entries() const { return entries_; }
  const Rational& fallback() const { return fallback_; }

  friend bool operator==(const DeceptionTable&, const DeceptionTable&) = default;

 private:
  std::map<std::pair<int, int>, Rational> entries_;
  Rational fallback_;
};

struct Environment {
  SymmetricGame game;
  CostSchedule cost;
  DeceptionTable q;
  NumberMode mode = NumberMode::exact;
  /// Comparison tolerance in float mode.
  double float_tol = 1e-9;

  Tolerance tolerance() const {
    return mode == NumberMode::exact ? Tolerance::exact() : Tolerance::floating(float_tol);
  }
};

}  // namespace coevo
