#include "coevo/lp.hpp"

#include <stdexcept>

namespace coevo::lp {

namespace {

struct Tableau {
  Mat rows;                  // m × (ncols + 1); last entry is the rhs
  std::vector<size_t> basis; // basic column per row
  size_t ncols = 0;
  int pivots = 0;

  void pivot(size_t r, size_t col) {
    Rational p = rows[r][col];
    for (auto& v : rows[r]) v /= p;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      Rational f = rows[i][col];
      for (size_t j = 0; j <= ncols; ++j)
        if (rows[r][j] != 0) rows[i][j] -= f * rows[r][j];
    }
    basis[r] = col;
    ++pivots;
  }

  // Maximizes cost·x over the current basis; columns with allowed[j] == false
  // never enter. Returns false if unbounded.
  bool optimize(const Vec& cost, const std::vector<bool>& allowed) {
    for (;;) {
      size_t enter = ncols;
      for (size_t j = 0; j < ncols && enter == ncols; ++j) {
        if (!allowed[j]) continue;
        Rational reduced = cost[j];
        for (size_t i = 0; i < rows.size(); ++i)
          if (rows[i][j] != 0) reduced -= cost[basis[i]] * rows[i][j];
        if (reduced > 0) enter = j;
      }
      if (enter == ncols) return true;
      size_t leave = rows.size();
      Rational best;
      for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][enter] <= 0) continue;
        Rational ratio = rows[i][ncols] / rows[i][enter];
        if (leave == rows.size() || ratio < best ||
            (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows.size()) return false;
      pivot(leave, enter);
    }
  }

  Rational objective(const Vec& cost) const {
    Rational v = 0;
    for (size_t i = 0; i < rows.size(); ++i) v += cost[basis[i]] * rows[i][ncols];
    return v;
  }
};

}  // namespace

Result solve(const Problem& p) {
  const size_t n = p.c.size();
  const size_t m_ub = p.a_ub.size(), m_eq = p.a_eq.size(), m = m_ub + m_eq;
  if (p.b_ub.size() != m_ub || p.b_eq.size() != m_eq)
    throw std::invalid_argument("lp: rhs size mismatch");

  // Columns: x (n) | slack (m_ub) | artificial (m)
  Tableau t;
  t.ncols = n + m_ub + m;
  t.rows.assign(m, Vec(t.ncols + 1, 0));
  t.basis.resize(m);
  for (size_t i = 0; i < m; ++i) {
    const bool ub = i < m_ub;
    const Vec& coeffs = ub ? p.a_ub[i] : p.a_eq[i - m_ub];
    if (coeffs.size() != n) throw std::invalid_argument("lp: row width mismatch");
    Rational rhs = ub ? p.b_ub[i] : p.b_eq[i - m_ub];
    const int sign = rhs < 0 ? -1 : 1;
    for (size_t j = 0; j < n; ++j) t.rows[i][j] = sign * coeffs[j];
    if (ub) t.rows[i][n + i] = sign;
    t.rows[i][n + m_ub + i] = 1;
    t.rows[i][t.ncols] = sign * rhs;
    t.basis[i] = n + m_ub + i;
  }

  Result res;
  std::vector<bool> allowed(t.ncols, true);
  Vec phase1(t.ncols, 0);
  for (size_t i = 0; i < m; ++i) phase1[n + m_ub + i] = -1;
  t.optimize(phase1, allowed);
  if (t.objective(phase1) < 0) {
    res.status = Status::infeasible;
    res.pivots = t.pivots;
    return res;
  }

  // Drive zero-level artificials out of the basis; drop redundant rows.
  for (size_t i = 0; i < t.rows.size();) {
    if (t.basis[i] < n + m_ub) {
      ++i;
      continue;
    }
    size_t col = n + m_ub;
    for (size_t j = 0; j < n + m_ub; ++j)
      if (t.rows[i][j] != 0) {
        col = j;
        break;
      }
    if (col < n + m_ub) {
      t.pivot(i, col);
      ++i;
    } else {
      t.rows.erase(t.rows.begin() + static_cast<long>(i));
      t.basis.erase(t.basis.begin() + static_cast<long>(i));
    }
  }
  for (size_t j = n + m_ub; j < t.ncols; ++j) allowed[j] = false;

  Vec cost(t.ncols, 0);
  for (size_t j = 0; j < n; ++j) cost[j] = p.c[j];
  if (!t.optimize(cost, allowed)) {
    res.status = Status::unbounded;
    res.pivots = t.pivots;
    return res;
  }
  res.status = Status::optimal;
  res.value = t.objective(cost);
  res.x.assign(n, 0);
  for (size_t i = 0; i < t.rows.size(); ++i)
    if (t.basis[i] < n) res.x[t.basis[i]] = t.rows[i][t.ncols];
  res.pivots = t.pivots;
  return res;
}

}  // namespace coevo::lp
