#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coevo/preferences.hpp"

namespace coevo {

/// Utility that depends on the opponent's type label: a branch table keyed by
/// label plus an optional "otherwise" branch.
class InterdependentUtility {
 public:
  InterdependentUtility() = default;
  InterdependentUtility(std::map<std::string, UtilityFunction> branches,
                        std::optional<UtilityFunction> otherwise);

  const std::map<std::string, UtilityFunction>& branches() const { return branches_; }
  const std::optional<UtilityFunction>& otherwise() const { return otherwise_; }
  size_t size() const;

  /// Throws std::out_of_range if no branch applies to `opponent_label`.
  const UtilityFunction& against(const std::string& opponent_label) const;
  /// Every label in `universe` resolves to some branch.
  bool is_total(const std::vector<std::string>& universe) const;

  friend bool operator==(const InterdependentUtility&, const InterdependentUtility&) = default;

 private:
  std::map<std::string, UtilityFunction> branches_;
  std::optional<UtilityFunction> otherwise_;
};

using Preferences = std::variant<UtilityFunction, InterdependentUtility>;

/// θ = (u, n). The label identifies the type in files, policies and
/// interdependent branch tables; two types are the same type when their
/// preferences and level coincide.
struct CognitiveType {
  std::string label;
  Preferences preferences;
  int level = 1;

  CognitiveType() = default;
  CognitiveType(std::string label, Preferences prefs, int level);

  bool interdependent() const { return std::holds_alternative<InterdependentUtility>(preferences); }
  size_t size() const;
  /// The utility this type maximizes when matched with `opponent`.
  const UtilityFunction& utility_against(const CognitiveType& opponent) const;
  /// Utilities reachable under some belief about the opponent's type.
  std::vector<const UtilityFunction*> branches() const;
  bool same_type(const CognitiveType& other) const {
    return level == other.level && preferences == other.preferences;
  }
};

/// Discriminating preferences u^ã_{ã′,ñ} carried by a type labelled `label`
/// at level ñ: 1 for playing ã against its own kind, 1 for playing ã′ against
/// anyone else, 0 otherwise.
CognitiveType discriminating_type(const std::string& label, size_t m, Action own_kind_action,
                                  Action others_action, int level);

}  // namespace coevo
