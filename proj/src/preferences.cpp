#include "coevo/preferences.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "coevo/lp.hpp"

namespace coevo {

UtilityFunction::UtilityFunction(const Mat& raw) : matrix_(raw) {
  const size_t m = matrix_.size();
  if (m == 0) throw std::invalid_argument("utility: empty matrix");
  for (size_t i = 0; i < m; ++i)
    if (matrix_[i].size() != m)
      throw std::invalid_argument("utility row " + std::to_string(i + 1) + " has " +
                                  std::to_string(matrix_[i].size()) + " entries, expected " +
                                  std::to_string(m));
  Rational lo = matrix_[0][0], hi = matrix_[0][0];
  for (const auto& row : matrix_)
    for (const auto& v : row) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  for (auto& row : matrix_)
    for (auto& v : row) v = (hi == lo) ? Rational(0) : Rational((v - lo) / (hi - lo));
}

UtilityFunction UtilityFunction::materialistic(const SymmetricGame& game) {
  return UtilityFunction(game.payoff());
}

UtilityFunction UtilityFunction::constant(size_t m) { return UtilityFunction(Mat(m, Vec(m, 0))); }

UtilityFunction UtilityFunction::opponent_only(const Vec& w) {
  Mat raw(w.size(), w);
  return UtilityFunction(raw);
}

bool UtilityFunction::is_constant() const {
  for (const auto& row : matrix_)
    for (const auto& v : row)
      if (v != 0) return false;
  return true;
}

Vec UtilityFunction::against(const MixedStrategy& opponent) const {
  if (opponent.size() != size())
    throw std::invalid_argument("utility: strategy dimension does not match");
  return mat_vec(matrix_, opponent.weights());
}

std::vector<Action> best_replies(const UtilityFunction& u, const MixedStrategy& opponent,
                                 const Tolerance& tol) {
  Vec v = u.against(opponent);
  Rational best = *std::max_element(v.begin(), v.end());
  std::vector<Action> out;
  for (Action a = 0; a < v.size(); ++a)
    if (tol.ge(v[a], best)) out.push_back(a);
  return out;
}

DominanceResult undominated_pure_actions(const UtilityFunction& u, const Tolerance& tol) {
  const size_t m = u.size();
  DominanceResult r;
  for (Action a = 0; a < m; ++a) {
    // Variables: y_b for b ≠ a, then ε⁺, ε⁻.
    lp::Problem p;
    const size_t n = m - 1 + 2;
    p.c.assign(n, 0);
    p.c[n - 2] = 1;
    p.c[n - 1] = -1;
    for (Action c = 0; c < m; ++c) {
      Vec row(n, 0);
      size_t k = 0;
      for (Action b = 0; b < m; ++b)
        if (b != a) row[k++] = -u(b, c);
      row[n - 2] = 1;
      row[n - 1] = -1;
      p.a_ub.push_back(std::move(row));
      p.b_ub.push_back(-u(a, c));
    }
    Vec simplex(n, 0);
    for (size_t k = 0; k + 2 < n; ++k) simplex[k] = 1;
    p.a_eq.push_back(std::move(simplex));
    p.b_eq.push_back(1);
    lp::Result res = lp::solve(p);
    if (res.status != lp::Status::optimal)
      throw std::runtime_error("dominance LP for action " + std::to_string(a) +
                               " did not reach an optimum");
    r.margins.push_back(res.value);
    if (res.value <= tol.eps) r.undominated.push_back(a);
    if (tol.eps > 0 && abs(res.value) <= tol.eps) r.boundary.push_back(a);
  }
  return r;
}

Rational common_belief_regret(const UtilityFunction& u, const std::vector<Action>& support) {
  const size_t m = u.size();
  if (support.empty()) throw std::invalid_argument("common_belief_regret: empty support");
  // Variables: belief p (m), then t ≥ 0; maximize −t.
  lp::Problem p;
  p.c.assign(m + 1, 0);
  p.c[m] = -1;
  for (Action a : support)
    for (Action b = 0; b < m; ++b) {
      if (b == a) continue;
      Vec row(m + 1, 0);
      for (Action c = 0; c < m; ++c) row[c] = u(b, c) - u(a, c);
      row[m] = -1;
      p.a_ub.push_back(std::move(row));
      p.b_ub.push_back(0);
    }
  Vec simplex(m + 1, 1);
  simplex[m] = 0;
  p.a_eq.push_back(std::move(simplex));
  p.b_eq.push_back(1);
  lp::Result res = lp::solve(p);
  if (res.status != lp::Status::optimal)
    throw std::runtime_error("belief LP did not reach an optimum");
  return -res.value;
}

namespace {

struct Vertex {
  Vec point;
  std::vector<bool> labels;
};

// Vertices of {z ≥ 0 on the `nonneg` labels, M z ≤ 1 on the `ineq` labels},
// excluding the origin. `dim` is the dimension of z; labels run over
// 0..2·dim−1, with `nonneg_first` saying whether z_i ≥ 0 carries label i
// (row polytope) or label dim+i (column polytope).
std::vector<Vertex> polytope_vertices(const Mat& m_rows, bool nonneg_first, bool& degenerate) {
  const size_t dim = m_rows.size();
  const size_t total = 2 * dim;
  // Constraint with label L as (coeffs, rhs), meaning coeffs·z ≤ rhs; tight at equality.
  auto constraint = [&](size_t label, Vec& coeffs, Rational& rhs) {
    coeffs.assign(dim, 0);
    bool is_nonneg = nonneg_first ? label < dim : label >= dim;
    size_t idx = label < dim ? label : label - dim;
    if (is_nonneg) {
      coeffs[idx] = -1;
      rhs = 0;
    } else {
      coeffs = m_rows[idx];
      rhs = 1;
    }
  };
  std::vector<Vertex> out;
  std::vector<size_t> pick(dim);
  for (size_t i = 0; i < dim; ++i) pick[i] = i;
  for (;;) {
    Mat a(dim);
    Vec b(dim);
    for (size_t r = 0; r < dim; ++r) constraint(pick[r], a[r], b[r]);
    Vec z;
    if (solve_linear(a, b, z)) {
      bool feasible = true, nonzero = false;
      std::vector<bool> labels(total, false);
      size_t tight = 0;
      for (size_t l = 0; l < total && feasible; ++l) {
        Vec coeffs;
        Rational rhs;
        constraint(l, coeffs, rhs);
        Rational lhs = dot(coeffs, z);
        if (lhs > rhs) feasible = false;
        if (lhs == rhs) {
          labels[l] = true;
          ++tight;
        }
      }
      for (const auto& v : z)
        if (v != 0) nonzero = true;
      if (feasible && nonzero) {
        if (tight > dim) degenerate = true;
        bool seen = false;
        for (const auto& v : out)
          if (v.point == z) seen = true;
        if (!seen) out.push_back({z, labels});
      }
    }
    // Next combination.
    size_t i = dim;
    while (i > 0 && pick[i - 1] == total - dim + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (size_t j = i; j < dim; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

MixedStrategy normalized(const Vec& z) { return MixedStrategy(z); }

}  // namespace

EquilibriumSet nash_equilibria(const UtilityFunction& u, const UtilityFunction& u_prime) {
  const size_t m = u.size();
  if (u_prime.size() != m) throw std::invalid_argument("nash_equilibria: action sets differ");
  // Row payoffs A(i,j) = u(i,j); column payoffs B(i,j) = u'(j,i). Shift both
  // to be positive so the best-response polytopes are bounded.
  Rational lo_a = u(0, 0), lo_b = u_prime(0, 0);
  for (Action i = 0; i < m; ++i)
    for (Action j = 0; j < m; ++j) {
      lo_a = std::min(lo_a, Rational(u(i, j)));
      lo_b = std::min(lo_b, Rational(u_prime(i, j)));
    }
  // Row polytope P over x: x_i ≥ 0 (label i), Σ_i B'(i,j) x_i ≤ 1 (label m+j).
  Mat p_rows(m, Vec(m)), q_rows(m, Vec(m));
  for (Action j = 0; j < m; ++j)
    for (Action i = 0; i < m; ++i) p_rows[j][i] = u_prime(j, i) - lo_b + 1;
  // Column polytope Q over y: Σ_j A'(i,j) y_j ≤ 1 (label i), y_j ≥ 0 (label m+j).
  for (Action i = 0; i < m; ++i)
    for (Action j = 0; j < m; ++j) q_rows[i][j] = u(i, j) - lo_a + 1;

  EquilibriumSet out;
  auto px = polytope_vertices(p_rows, true, out.degenerate);
  auto qy = polytope_vertices(q_rows, false, out.degenerate);
  for (const auto& x : px)
    for (const auto& y : qy) {
      bool complete = true;
      for (size_t l = 0; l < 2 * m && complete; ++l) complete = x.labels[l] || y.labels[l];
      if (complete) out.equilibria.push_back({normalized(x.point), normalized(y.point), false});
    }
  auto& eq = out.equilibria;
  for (size_t i = 0; i < eq.size(); ++i)
    for (size_t j = i + 1; j < eq.size(); ++j)
      if (eq[i].row == eq[j].row || eq[i].col == eq[j].col) {
        eq[i].in_component = true;
        eq[j].in_component = true;
      }
  auto key = [](const Equilibrium& e) {
    auto sr = e.row.support(), sc = e.col.support();
    return std::make_tuple(sr.size() + sc.size(), sr, sc);
  };
  std::stable_sort(eq.begin(), eq.end(), [&](const Equilibrium& a, const Equilibrium& b) {
    auto ka = key(a), kb = key(b);
    if (ka != kb) return ka < kb;
    if (a.row.weights() != b.row.weights())
      return std::lexicographical_compare(b.row.weights().begin(), b.row.weights().end(),
                                          a.row.weights().begin(), a.row.weights().end());
    return std::lexicographical_compare(b.col.weights().begin(), b.col.weights().end(),
                                        a.col.weights().begin(), a.col.weights().end());
  });
  if (eq.empty()) throw std::logic_error("nash_equilibria: enumeration found no equilibrium");
  return out;
}

Rational nash_violation(const UtilityFunction& u, const UtilityFunction& u_prime,
                        const MixedStrategy& sigma, const MixedStrategy& sigma_prime) {
  Vec row = u.against(sigma_prime);
  Vec col = u_prime.against(sigma);
  Rational row_val = dot(sigma.weights(), row);
  Rational col_val = dot(sigma_prime.weights(), col);
  Rational worst = 0;
  for (const auto& v : row) worst = std::max(worst, Rational(v - row_val));
  for (const auto& v : col) worst = std::max(worst, Rational(v - col_val));
  return worst;
}

}  // namespace coevo
