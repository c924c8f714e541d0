#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coevo/stability.hpp"

namespace coevo {

/// Constructor precondition failure; `condition` names the failing requirement.
class ConstructionError : public std::invalid_argument {
 public:
  ConstructionError(std::string condition, const std::string& detail)
      : std::invalid_argument(condition + ": " + detail), condition_(std::move(condition)) {}
  const std::string& condition() const { return condition_; }

 private:
  std::string condition_;
};

/// Frequencies that equalize expected fitness for the configuration's fixed
/// policy (match fitness does not depend on μ). Throws ConstructionError when
/// the system is singular or some share is not strictly positive.
Vec balanced_shares(const Configuration& shape);

/// Materialistic RPS types at the given levels with the given shares: higher
/// levels play P against lower ones who play R; Nash matches play uniformly.
Configuration rps_deception_configuration(const Environment& env, const std::vector<int>& levels,
                                          const Vec& shares);

/// Levels 1..N with k_N ≤ 2 < k_{N+1}, balanced shares. Requires the RPS
/// matrix, q(n,n′) = 1 for n > n′ and k_{n+1} − k_n < 1 for n ≤ N.
Configuration construct_rps_nsc(const Environment& env);

enum class HawkDoveCase { esc, nsc, none };
std::string to_string(HawkDoveCase c);

struct HawkDoveResult {
  HawkDoveCase kind = HawkDoveCase::none;
  std::optional<Configuration> configuration;
  StabilityVerdict verdict;
};

/// In-group cooperation / out-group exploitation construction on the
/// Hawk-Dove game with gain g and loss l. With `mixed_within_level`, equals
/// play the mixed Hawk-Dove equilibrium instead of (D,D).
HawkDoveResult construct_hawkdove_esc(const Rational& gain, const Rational& loss,
                                      const CostSchedule& cost, bool mixed_within_level = false,
                                      NumberMode mode = NumberMode::exact);

}  // namespace coevo
