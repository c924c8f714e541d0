#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coevo {

using Rational = mpq_class;
using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;

/// How payoff literals were read and how comparisons are made.
/// Exact mode compares with zero slack; float mode with `tol` (default 1e-9).
enum class NumberMode { exact, floating };

struct Tolerance {
  Rational eps{0};

  static Tolerance exact() { return {}; }
  static Tolerance floating(double e = 1e-9);
  static Tolerance for_mode(NumberMode m) {
    return m == NumberMode::exact ? exact() : floating();
  }

  bool le(const Rational& a, const Rational& b) const { return a <= b + eps; }
  bool ge(const Rational& a, const Rational& b) const { return a + eps >= b; }
  bool eq(const Rational& a, const Rational& b) const { return abs(a - b) <= eps; }
  bool lt(const Rational& a, const Rational& b) const { return a + eps < b; }
  bool gt(const Rational& a, const Rational& b) const { return a > b + eps; }
  bool is_zero(const Rational& a) const { return abs(a) <= eps; }
};

/// Parses "-1", "3/2", "0.25", "1e-3", "-2.5E+2". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Exact value of a finite double.
Rational from_double(double v);

/// Shortest decimal text that round-trips `v`, read back exactly.
/// Used for JSON number literals so that `0.1` means 1/10.
Rational from_json_double(double v);

/// Nearest double (GMP's own conversion truncates).
double to_double(const Rational& r);
std::string to_string(const Rational& r);
std::vector<double> to_doubles(const Vec& v);

inline Rational rat(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational dot(const Vec& a, const Vec& b);
/// aᵀ M b
Rational bilinear(const Vec& a, const Mat& m, const Vec& b);
Vec mat_vec(const Mat& m, const Vec& v);

/// Exact Gaussian elimination on an n×n system. Returns false if singular.
bool solve_linear(Mat a, Vec b, Vec& out);

}  // namespace coevo
