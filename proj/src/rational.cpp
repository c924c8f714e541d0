#include "coevo/rational.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <system_error>

namespace coevo {

Tolerance Tolerance::floating(double e) { return Tolerance{from_double(e)}; }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Rational pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

Rational parse_decimal(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    bool exp_neg = false;
    if (!exp_part.empty() && (exp_part[0] == '+' || exp_part[0] == '-')) {
      exp_neg = exp_part[0] == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6)
      throw std::invalid_argument("bad exponent");
    exponent = std::stol(std::string(exp_part));
    if (exp_neg) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) ||
        (!fp.empty() && !all_digits(fp)))
      throw std::invalid_argument("bad decimal");
    digits = std::string(ip) + std::string(fp);
    exponent -= static_cast<long>(fp.size());
  } else {
    if (!all_digits(s)) throw std::invalid_argument("bad number");
    digits = std::string(s);
  }
  Rational r(mpz_class(digits, 10));
  r *= pow10(exponent);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty number");
  try {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      Rational num = parse_decimal(text.substr(0, slash));
      Rational den = parse_decimal(text.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("zero denominator");
      Rational r = num / den;
      r.canonicalize();
      return r;
    }
    return parse_decimal(text);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
}

Rational from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite value");
  Rational r(v);
  r.canonicalize();
  return r;
}

Rational from_json_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite value");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) return from_double(v);
  return parse_rational(std::string_view(buf, static_cast<size_t>(res.ptr - buf)));
}

double to_double(const Rational& r) {
  const double d = r.get_d();
  if (!std::isfinite(d)) return d;
  const double toward = std::nextafter(d, r > 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(toward)) return d;
  Rational a = abs(from_double(d) - r), b = abs(from_double(toward) - r);
  return b < a ? toward : d;
}

std::string to_string(const Rational& r) { return r.get_str(); }

std::vector<double> to_doubles(const Vec& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_double(x));
  return out;
}

Rational dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

Vec mat_vec(const Mat& m, const Vec& v) {
  Vec out(m.size());
  for (size_t i = 0; i < m.size(); ++i) out[i] = dot(m[i], v);
  return out;
}

Rational bilinear(const Vec& a, const Mat& m, const Vec& b) {
  if (a.size() != m.size()) throw std::invalid_argument("bilinear: dimension mismatch");
  return dot(a, mat_vec(m, b));
}

bool solve_linear(Mat a, Vec b, Vec& out) {
  const size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("solve_linear: dimension mismatch");
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  out.assign(n, 0);
  for (size_t i = 0; i < n; ++i) out[i] = b[i] / a[i][i];
  return true;
}

}  // namespace coevo
