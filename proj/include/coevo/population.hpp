#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coevo/deception.hpp"
#include "coevo/environment.hpp"
#include "coevo/types.hpp"

namespace coevo {

/// μ: finitely many types with positive frequencies.
struct TypeDistribution {
  std::vector<CognitiveType> support;
  Vec frequency;

  size_t size() const { return support.size(); }
  /// Throws std::out_of_range for an unknown label.
  size_t index_of(const std::string& label) const;
  int top_level() const;
};

using TypePair = std::pair<size_t, size_t>;

/// b = (b^N, b^D) on ordered pairs of support indices. b^N(i, j) is what
/// type i plays against type j when nobody is deceived; b^D(i, j) is what i
/// plays in the deception match with j (as deceiver or as the deceived).
struct BehaviorPolicy {
  std::map<TypePair, MixedStrategy> nash;
  std::map<TypePair, MixedStrategy> deception;
  /// Entries filled in by complete_policy rather than supplied.
  std::set<TypePair> auto_nash;
  std::set<TypePair> auto_deception;
};

struct Configuration {
  Environment env;
  TypeDistribution dist;
  BehaviorPolicy policy;

  const CognitiveType& type(size_t i) const { return dist.support[i]; }
  size_t size() const { return dist.size(); }
};

/// Non-deception play is needed when q(n,n′) + q(n′,n) < 1.
bool needs_nash(const Configuration& c, size_t i, size_t j);
/// Deception play is needed whenever the levels differ.
bool needs_deception(const Configuration& c, size_t i, size_t j);

struct Violation {
  size_t i = 0;
  size_t j = 0;
  std::string condition;
  Rational magnitude;
};

struct ValidationReport {
  bool valid = true;
  std::vector<Violation> violations;
  /// Distribution-level problems (frequencies, duplicate types, dimensions).
  std::vector<std::string> errors;
};

/// Checks the distribution and that every required pair plays a Nash
/// equilibrium / deception equilibrium of the induced subjective game.
ValidationReport validate(const Configuration& config);

/// Fills missing required entries with the first enumerated equilibrium
/// (Nash: sorted by support size then lexicographically, self-matches use the
/// first symmetric one; deception: first optimal pure profile) and records
/// them as auto-filled. Supplied entries are kept.
void complete_policy(Configuration& config);

Rational match_fitness(const Configuration& config, size_t i, size_t j);
/// Σ_j μ_j·match_fitness(i, j) − k_{n_i}.
Rational expected_fitness(const Configuration& config, size_t i);
Rational average_fitness(const Configuration& config);
bool is_balanced(const Configuration& config, const Rational& tol);

/// Single-type configuration in which everybody plays a* against each other.
Configuration pure_configuration(const Environment& env, const CognitiveType& theta, Action a_star);

}  // namespace coevo
