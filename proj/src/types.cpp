#include "coevo/types.hpp"

#include <stdexcept>

namespace coevo {

InterdependentUtility::InterdependentUtility(std::map<std::string, UtilityFunction> branches,
                                             std::optional<UtilityFunction> otherwise)
    : branches_(std::move(branches)), otherwise_(std::move(otherwise)) {
  if (branches_.empty() && !otherwise_)
    throw std::invalid_argument("interdependent utility has no branches");
  size_t m = size();
  for (const auto& [label, u] : branches_)
    if (u.size() != m)
      throw std::invalid_argument("interdependent branch '" + label + "' has the wrong dimension");
}

size_t InterdependentUtility::size() const {
  return otherwise_ ? otherwise_->size() : branches_.begin()->second.size();
}

const UtilityFunction& InterdependentUtility::against(const std::string& opponent_label) const {
  auto it = branches_.find(opponent_label);
  if (it != branches_.end()) return it->second;
  if (otherwise_) return *otherwise_;
  throw std::out_of_range("no utility branch applies to opponent type '" + opponent_label + "'");
}

bool InterdependentUtility::is_total(const std::vector<std::string>& universe) const {
  if (otherwise_) return true;
  for (const auto& label : universe)
    if (!branches_.count(label)) return false;
  return true;
}

CognitiveType::CognitiveType(std::string l, Preferences prefs, int n)
    : label(std::move(l)), preferences(std::move(prefs)), level(n) {
  if (level < 1) throw std::invalid_argument("type '" + label + "': level must be at least 1");
}

size_t CognitiveType::size() const {
  return std::visit([](const auto& p) { return p.size(); }, preferences);
}

const UtilityFunction& CognitiveType::utility_against(const CognitiveType& opponent) const {
  if (auto u = std::get_if<UtilityFunction>(&preferences)) return *u;
  return std::get<InterdependentUtility>(preferences).against(opponent.label);
}

std::vector<const UtilityFunction*> CognitiveType::branches() const {
  if (auto u = std::get_if<UtilityFunction>(&preferences)) return {u};
  const auto& id = std::get<InterdependentUtility>(preferences);
  std::vector<const UtilityFunction*> out;
  for (const auto& [label, u] : id.branches()) out.push_back(&u);
  if (id.otherwise()) out.push_back(&*id.otherwise());
  return out;
}

CognitiveType discriminating_type(const std::string& label, size_t m, Action own_kind_action,
                                  Action others_action, int level) {
  if (own_kind_action >= m || others_action >= m)
    throw std::invalid_argument("discriminating type: invalid action");
  Mat in(m, Vec(m, 0)), out(m, Vec(m, 0));
  for (Action b = 0; b < m; ++b) {
    in[own_kind_action][b] = 1;
    out[others_action][b] = 1;
  }
  std::map<std::string, UtilityFunction> branches{{label, UtilityFunction(in)}};
  return CognitiveType(label, InterdependentUtility(std::move(branches), UtilityFunction(out)),
                       level);
}

}  // namespace coevo
