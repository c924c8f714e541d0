#include "coevo/dynamics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace coevo {

DMat to_doubles(const Mat& m) {
  DMat out;
  for (const auto& row : m) out.push_back(to_doubles(row));
  return out;
}

namespace {

DVec times(const DMat& b, const DVec& x) {
  DVec y(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) y[i] += b[i][j] * x[j];
  return y;
}

DVec field(const DMat& b, const DVec& x) {
  DVec bx = times(b, x);
  double avg = 0;
  for (size_t i = 0; i < x.size(); ++i) avg += x[i] * bx[i];
  DVec dx(x.size());
  for (size_t i = 0; i < x.size(); ++i) dx[i] = x[i] * (bx[i] - avg);
  return dx;
}

double distance(const DVec& a, const DVec& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

void check_simplex(const DVec& x) {
  double s = 0;
  for (double v : x) {
    if (v < 0) throw std::invalid_argument("initial state has a negative frequency");
    s += v;
  }
  if (std::abs(s - 1) > 1e-9) throw std::invalid_argument("initial state does not sum to 1");
}

// Dormand–Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

TrajectoryRecord replicate(const DMat& b, const DVec& x0, double horizon,
                           const ReplicatorOptions& opt) {
  check_simplex(x0);
  if (b.size() != x0.size()) throw std::invalid_argument("payoff and state differ in dimension");
  const size_t n = x0.size();
  TrajectoryRecord rec;
  DVec x = x0;
  double t = 0, h = std::min(opt.initial_step, horizon), last = 0;
  auto record = [&]() {
    rec.times.push_back(t);
    rec.states.push_back(x);
    rec.fitness_series.push_back(times(b, x));
    last = t;
  };
  record();
  auto axpy = [&](std::initializer_list<std::pair<double, const DVec*>> terms) {
    DVec y = x;
    for (size_t i = 0; i < n; ++i)
      for (auto& [w, k] : terms) y[i] += h * w * (*k)[i];
    return y;
  };
  DVec k1 = field(b, x);
  while (t < horizon) {
    h = std::min(h, horizon - t);
    DVec k2 = field(b, axpy({{a21, &k1}}));
    DVec k3 = field(b, axpy({{a31, &k1}, {a32, &k2}}));
    DVec k4 = field(b, axpy({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    DVec k5 = field(b, axpy({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    DVec k6 = field(b, axpy({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    DVec y = axpy({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    DVec k7 = field(b, y);
    double err = 0;
    for (size_t i = 0; i < n; ++i) {
      double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      double sc = opt.tol * (1 + std::max(std::abs(x[i]), std::abs(y[i])));
      err = std::max(err, std::abs(e) / sc);
    }
    if (err <= 1) {
      t += h;
      double s = 0;
      for (double& v : y) {
        v = std::max(v, 0.0);
        s += v;
      }
      rec.max_drift = std::max(rec.max_drift, std::abs(s - 1));
      for (double& v : y) v /= s;
      x = std::move(y);
      k1 = field(b, x);
      if (t >= horizon || t - last >= opt.record_every) record();
    }
    double factor = err == 0 ? 5 : 0.9 * std::pow(err, -0.2);
    h = std::min(opt.max_step, h * std::clamp(factor, 0.2, 5.0));
    if (h < 1e-14) throw std::runtime_error("replicator step size underflow");
  }
  return rec;
}

ProbeReport stability_probe(const DMat& b, const DVec& x_star, const std::vector<double>& radii,
                            double horizon, const ProbeOptions& opt) {
  check_simplex(x_star);
  const size_t n = x_star.size();
  ProbeReport rep;
  DVec bx = times(b, x_star);
  double lo = 0, hi = 0;
  bool first = true;
  for (size_t i = 0; i < n; ++i)
    if (x_star[i] > 0) {
      lo = first ? bx[i] : std::min(lo, bx[i]);
      hi = first ? bx[i] : std::max(hi, bx[i]);
      first = false;
    }
  rep.rest_point_spread = hi - lo;
  if (rep.rest_point_spread > opt.rest_tol) {
    std::ostringstream os;
    os << "not a rest point: payoffs on the support spread by " << rep.rest_point_spread;
    throw std::invalid_argument(os.str());
  }

  std::mt19937_64 rng(opt.seed);
  std::exponential_distribution<double> expo(1.0);
  for (double r : radii) {
    std::vector<DVec> dirs;
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        if (j != k && x_star[k] >= r / std::sqrt(2.0)) {
          DVec d(n, 0);
          d[j] = 1 / std::sqrt(2.0);
          d[k] = -1 / std::sqrt(2.0);
          dirs.push_back(d);
        }
    for (size_t s = 0; s < opt.random_directions; ++s)
      for (int attempt = 0; attempt < 100; ++attempt) {
        DVec y(n);
        double total = 0;
        for (double& v : y) total += v = expo(rng);
        for (double& v : y) v /= total;
        double len = distance(y, x_star);
        if (len < r) continue;
        DVec d(n);
        for (size_t i = 0; i < n; ++i) d[i] = (y[i] - x_star[i]) / len;
        dirs.push_back(d);
        break;
      }
    for (const auto& d : dirs) {
      DVec x0(n);
      double total = 0;
      for (size_t i = 0; i < n; ++i) total += x0[i] = std::max(0.0, x_star[i] + r * d[i]);
      for (double& v : x0) v /= total;
      TrajectoryRecord tr = replicate(b, x0, horizon, opt.integrator);
      ProbeRun run{r, d, 0, distance(tr.states.back(), x_star), false};
      for (const auto& s : tr.states) run.max_excursion = std::max(run.max_excursion, distance(s, x_star));
      run.escaped = run.terminal_distance > opt.escape_factor * r;
      if (run.escaped && !rep.escaped) {
        rep.escaped = true;
        rep.escape_direction = d;
      }
      rep.runs.push_back(std::move(run));
    }
  }
  return rep;
}

namespace {

std::string shortest(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string trajectory_csv(const TrajectoryRecord& t, const std::vector<std::string>& labels) {
  std::ostringstream os;
  os << "time";
  for (const auto& l : labels) os << ",x_" << l;
  for (const auto& l : labels) os << ",fitness_" << l;
  os << "\n";
  for (size_t k = 0; k < t.times.size(); ++k) {
    os << shortest(t.times[k]);
    for (double v : t.states[k]) os << "," << shortest(v);
    for (double v : t.fitness_series[k]) os << "," << shortest(v);
    os << "\n";
  }
  return os.str();
}

}  // namespace coevo
