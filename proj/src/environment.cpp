#include "coevo/environment.hpp"

#include <stdexcept>
#include <string>

namespace coevo {

CostSchedule::CostSchedule(Vec explicit_costs, Rational increment)
    : explicit_(std::move(explicit_costs)), increment_(std::move(increment)) {
  if (explicit_.empty()) throw std::invalid_argument("cost schedule: no levels given");
  if (explicit_[0] != 0) throw std::invalid_argument("cost schedule: k_1 must be 0");
  for (size_t i = 1; i < explicit_.size(); ++i)
    if (explicit_[i] <= explicit_[i - 1])
      throw std::invalid_argument("cost schedule: k must be strictly increasing (level " +
                                  std::to_string(i + 1) + ")");
  if (increment_ <= 0)
    throw std::invalid_argument("cost schedule: extrapolation increment must be positive");
}

CostSchedule CostSchedule::linear(const Rational& slope) { return CostSchedule({0}, slope); }

Rational CostSchedule::operator()(int n) const {
  if (n < 1) throw std::invalid_argument("cost schedule: level must be at least 1");
  const int top = explicit_levels();
  if (n <= top) return explicit_[n - 1];
  return explicit_.back() + increment_ * (n - top);
}

DeceptionTable::DeceptionTable(std::map<std::pair<int, int>, Rational> entries, Rational fallback)
    : entries_(std::move(entries)), fallback_(std::move(fallback)) {
  if (fallback_ <= 0 || fallback_ > 1)
    throw std::invalid_argument("deception table: default probability must lie in (0, 1]");
  for (const auto& [key, v] : entries_) {
    auto [n, n2] = key;
    const std::string where = "q(" + std::to_string(n) + "," + std::to_string(n2) + ")";
    if (n < 1 || n2 < 1) throw std::invalid_argument("deception table: invalid level in " + where);
    if (n <= n2) {
      if (v != 0) throw std::invalid_argument("deception table: " + where + " must be 0");
    } else if (v <= 0 || v > 1) {
      throw std::invalid_argument("deception table: " + where + " must lie in (0, 1]");
    }
  }
}

Rational DeceptionTable::operator()(int n, int n_prime) const {
  if (n <= n_prime) return 0;
  auto it = entries_.find({n, n_prime});
  return it == entries_.end() ? fallback_ : it->second;
}

}  // namespace coevo
