#include "coevo/stability.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "coevo/refute.hpp"

namespace coevo {

TypeGame build_type_game(const Configuration& config) {
  TypeGame g;
  const size_t t = config.size();
  g.payoff.assign(t, Vec(t));
  for (size_t i = 0; i < t; ++i) {
    g.labels.push_back(config.type(i).label);
    const Rational k = config.env.cost(config.type(i).level);
    for (size_t j = 0; j < t; ++j) g.payoff[i][j] = match_fitness(config, i, j) - k;
  }
  return g;
}

TypeGame as_type_game(const SymmetricGame& game) { return {game.actions(), game.payoff()}; }

std::string to_string(Status s) {
  switch (s) {
    case Status::certified_stable:
      return "certified-stable";
    case Status::refuted:
      return "refuted";
    case Status::inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::optional<Vec> psd_counterexample(const Mat& s_in, bool strict, const Rational& tol) {
  const size_t n = s_in.size();
  Mat s = s_in;
  std::vector<size_t> active(n);
  for (size_t i = 0; i < n; ++i) active[i] = i;
  struct Step {
    size_t pivot;
    Vec row;
    Rational diag;
  };
  std::vector<Step> steps;
  std::optional<Vec> w;
  while (!active.empty() && !w) {
    // A clearly negative diagonal, or (strict) a vanishing one, is a witness.
    for (size_t i : active)
      if (s[i][i] < -tol || (strict && abs(s[i][i]) <= tol)) {
        w = Vec(n, 0);
        (*w)[i] = 1;
        break;
      }
    if (w) break;
    size_t p = n;
    for (size_t i : active)
      if (s[i][i] > tol && (p == n || s[i][i] > s[p][p])) p = i;
    if (p == n) {
      // Zero diagonal: PSD only if the remaining block vanishes.
      for (size_t a = 0; a < active.size() && !w; ++a)
        for (size_t b = a + 1; b < active.size() && !w; ++b) {
          size_t i = active[a], j = active[b];
          if (abs(s[i][j]) > tol) {
            w = Vec(n, 0);
            (*w)[i] = 1;
            (*w)[j] = s[i][j] > 0 ? -1 : 1;
          }
        }
      break;
    }
    Step st{p, Vec(n, 0), s[p][p]};
    for (size_t i : active) st.row[i] = s[p][i];
    active.erase(std::find(active.begin(), active.end(), p));
    for (size_t i : active)
      for (size_t j : active) s[i][j] -= st.row[i] * st.row[j] / st.diag;
    steps.push_back(std::move(st));
  }
  if (!w) return std::nullopt;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    Rational acc = 0;
    for (size_t i = 0; i < n; ++i)
      if (i != it->pivot) acc += it->row[i] * (*w)[i];
    (*w)[it->pivot] = -acc / it->diag;
  }
  return w;
}

namespace {

Rational quad(const Mat& b, const Vec& z) { return bilinear(z, b, z); }

Vec mutant_along(const Vec& x, const Vec& z) {
  std::optional<Rational> t;
  for (size_t i = 0; i < x.size(); ++i)
    if (z[i] < 0) {
      Rational lim = x[i] / -z[i];
      if (!t || lim < *t) t = lim;
    }
  Vec y = x;
  for (size_t i = 0; i < x.size(); ++i) y[i] += *t * z[i];
  return y;
}

StabilityVerdict face_test(const Mat& b, const MixedStrategy& xs, const NssOptions& opt,
                           bool strict) {
  const size_t n = b.size();
  if (xs.size() != n) throw std::invalid_argument("stability test: dimension mismatch");
  for (const auto& row : b)
    if (row.size() != n) throw std::invalid_argument("stability test: payoff not square");
  const Vec& x = xs.weights();
  const Tolerance& tol = opt.tol;
  StabilityVerdict v;

  Vec bx = mat_vec(b, x);
  Rational xbx = dot(x, bx);
  size_t best = 0;
  for (size_t i = 1; i < n; ++i)
    if (bx[i] > bx[best]) best = i;
  Rational gain = bx[best] - xbx;
  v.conditions.push_back({"symmetric-nash", !tol.gt(gain, 0), -gain,
                          "largest payoff gain of a pure deviation"});
  if (tol.gt(gain, 0)) {
    v.status = Status::refuted;
    Witness w{"non-nash", Vec(n, 0), Vec(n, 0), gain, std::nullopt};
    w.mutant[best] = 1;
    for (size_t i = 0; i < n; ++i) w.direction[i] = w.mutant[i] - x[i];
    v.witness = w;
    v.reason = "not a symmetric Nash equilibrium";
    return v;
  }

  std::vector<size_t> face;
  for (size_t i = 0; i < n; ++i)
    if (tol.ge(bx[i], xbx)) face.push_back(i);
  const std::string form = strict ? "negative-definite-on-face" : "negative-semidefinite-on-face";
  if (face.size() == 1) {
    v.conditions.push_back({form, true, 0, "best-reply face is a single vertex"});
    v.status = Status::certified_stable;
    v.reason = strict ? "strict symmetric Nash equilibrium" : "best-reply face is a single vertex";
    return v;
  }

  // Basis of the face's tangent space: e_{s_k} − e_{s_0}.
  const size_t k = face.size() - 1;
  Mat neg(k, Vec(k));
  auto basis_vec = [&](size_t r) {
    Vec z(n, 0);
    z[face[r + 1]] = 1;
    z[face[0]] = -1;
    return z;
  };
  std::vector<Vec> basis;
  for (size_t r = 0; r < k; ++r) basis.push_back(basis_vec(r));
  for (size_t r = 0; r < k; ++r)
    for (size_t c = 0; c < k; ++c)
      neg[r][c] = -(bilinear(basis[r], b, basis[c]) + bilinear(basis[c], b, basis[r])) / 2;
  auto bad = psd_counterexample(neg, strict, tol.eps);
  if (!bad) {
    v.conditions.push_back({form, true, 0, "quadratic form on the face's tangent space"});
    v.status = Status::certified_stable;
    v.reason = "quadratic form is " + std::string(strict ? "negative definite" : "negative semidefinite") +
               " on the best-reply face";
    return v;
  }

  auto refutes = [&](const Rational& q) { return strict ? tol.ge(q, 0) : tol.gt(q, 0); };
  auto refute_with = [&](Vec z, Vec y, const std::string& how) {
    Rational q = quad(b, z);
    v.conditions.push_back({form, false, -q, how});
    v.status = Status::refuted;
    v.witness = Witness{"direction", std::move(z), std::move(y), q, std::nullopt};
    v.reason = "direction inside the best-reply face with zᵀBz " +
               std::string(strict ? "≥ 0" : "> 0");
    return v;
  };

  for (size_t a : face) {
    Vec z(n, 0);
    for (size_t i = 0; i < n; ++i) z[i] = -x[i];
    z[a] += 1;
    bool zero = std::all_of(z.begin(), z.end(), [](const Rational& r) { return r == 0; });
    if (zero) continue;
    if (refutes(quad(b, z))) {
      Vec y(n, 0);
      y[a] = 1;
      return refute_with(z, y, "face vertex direction");
    }
  }

  size_t in_support = 0;
  for (size_t i : face)
    if (x[i] > 0) ++in_support;
  if (in_support == face.size()) {
    // x is relatively interior to the face, so every tangent direction is feasible.
    Vec z(n, 0);
    for (size_t r = 0; r < k; ++r)
      for (size_t i = 0; i < n; ++i) z[i] += (*bad)[r] * basis[r][i];
    return refute_with(z, mutant_along(x, z), "tangent direction from the elimination");
  }

  std::mt19937_64 rng(opt.seed);
  std::exponential_distribution<double> expo(1.0);
  for (size_t s = 0; s < opt.samples; ++s) {
    Vec y(n, 0);
    Rational total = 0;
    for (size_t i : face) {
      y[i] = from_double(expo(rng) + 1e-12);
      total += y[i];
    }
    Vec z(n);
    for (size_t i = 0; i < n; ++i) {
      y[i] /= total;
      z[i] = y[i] - x[i];
    }
    if (refutes(quad(b, z))) return refute_with(z, y, "sampled face direction");
  }
  v.conditions.push_back({form, false, 0,
                          "tangent form is indefinite but no feasible face direction refutes"});
  v.status = Status::inconclusive;
  v.reason = "no refuting direction found among face vertices and " +
             std::to_string(opt.samples) + " samples";
  return v;
}

}  // namespace

StabilityVerdict is_nss(const Mat& payoff, const MixedStrategy& x, const NssOptions& opt) {
  return face_test(payoff, x, opt, false);
}

StabilityVerdict is_ess(const Mat& payoff, const MixedStrategy& x, const NssOptions& opt) {
  return face_test(payoff, x, opt, true);
}

EffectiveCost effective_cost_at_level(const Environment& env, int n, const Rational& cap) {
  if (n < 1) throw std::invalid_argument("effective cost: level must be at least 1");
  EffectiveCost best;
  const Rational base = env.cost(n);
  for (int m = n + 1;; ++m) {
    const Rational extra = env.cost(m) - base;
    if (best.level != 0 && extra > best.value) break;
    const Rational q = env.q(m, n);
    if (q > 0) {
      Rational ratio = extra / q;
      if (best.level == 0 || ratio < best.value) {
        best.value = ratio;
        best.level = m;
      }
    }
    if (extra > cap) break;
  }
  if (best.level == 0 || best.value > cap) best.infinite = true;
  return best;
}

EffectiveCost effective_cost(const Environment& env, const Rational& cap) {
  return effective_cost_at_level(env, 1, cap);
}

UtilityFunction punishing_utility(size_t m, Action a_star, Action punish) {
  Mat u(m, Vec(m));
  for (Action a = 0; a < m; ++a)
    for (Action b = 0; b < m; ++b) {
      if (a == punish && b != a_star)
        u[a][b] = 1;
      else if (a == a_star || (a == punish && b == a_star))
        u[a][b] = 0;
      else
        u[a][b] = -1;
    }
  return UtilityFunction(u);
}

StabilityVerdict certify_pure_nsc(const Environment& env, Action a_star, const RefuteOptions& opt) {
  const auto& game = env.game;
  if (a_star >= game.size()) throw std::invalid_argument("certify: invalid action");
  StabilityVerdict v;
  auto punish = punishment_actions(game);
  v.conditions.push_back({"punishment-action-available", !punish.empty(), 0,
                          punish.empty() ? "no action holds the opponent below π̂"
                                         : "punishment action " + game.actions()[punish[0]]});
  if (punish.empty()) {
    v.status = Status::inconclusive;
    v.reason = "game has no punishment action; the pure characterization does not apply";
    return v;
  }
  Action tilde = punish[0];
  for (Action a : punish)
    if (a != a_star) {
      tilde = a;
      break;
    }
  const Rational hat = efficiency_analysis(game).efficient_payoff;
  const Rational self = game(a_star, a_star);
  const Rational g = deviation_gain(game, a_star);
  const EffectiveCost c = effective_cost(env);
  const bool efficient = self == hat || (env.mode == NumberMode::floating && env.tolerance().eq(self, hat));
  const bool cheap = c.infinite || env.tolerance().le(g, c.value);
  v.conditions.push_back({"efficient-self-play", efficient, self - hat,
                          "π(a*,a*) − π̂; the highest type must play an efficient profile "
                          "against itself"});
  v.conditions.push_back({"deviation-gain-within-effective-cost", cheap,
                          c.infinite ? Rational(0) : Rational(c.value - g),
                          "c − g(a*), c attained at level " + std::to_string(c.level)});

  CognitiveType theta("incumbent", punishing_utility(game.size(), a_star, tilde), 1);
  Configuration config = pure_configuration(env, theta, a_star);
  v.configuration = config;
  if (efficient && cheap) {
    v.status = Status::certified_stable;
    v.reason = "efficient self-play and deviation gain within the effective cost of deception";
    return v;
  }
  v.status = Status::refuted;
  v.reason = !efficient ? "necessary condition failed: efficient-self-play"
                        : "necessary condition failed: deviation-gain-within-effective-cost";
  StabilityVerdict r = refute_nsc(config, opt);
  if (r.status == Status::refuted && r.witness) {
    v.witness = r.witness;
  } else {
    Witness w;
    w.kind = "necessary-condition";
    w.value = !efficient ? Rational(self - hat) : Rational(c.value - g);
    v.witness = w;
  }
  return v;
}

StabilityVerdict check_highest_type_conditions(const Configuration& config) {
  StabilityVerdict v;
  const auto& game = config.env.game;
  const Tolerance tol = config.env.tolerance();
  const Rational hat = efficiency_analysis(game).efficient_payoff;
  const int top = config.dist.top_level();
  bool ok = true;
  for (size_t h = 0; h < config.size(); ++h) {
    if (config.type(h).level != top) continue;
    const std::string& name = config.type(h).label;
    const Rational self = match_fitness(config, h, h);
    bool pass = tol.eq(self, hat);
    ok = ok && pass;
    v.conditions.push_back({"efficient-self-play[" + name + "]", pass, self - hat,
                            "fitness of the highest type against itself minus π̂"});
    for (size_t l = 0; l < config.size(); ++l) {
      if (config.type(l).level >= top) continue;
      const std::string pair = name + "," + config.type(l).label;
      FmdeResult f = fmde(config.env, config.type(h), config.type(l));
      Rational got = payoff(game, config.policy.deception.at({h, l}),
                            config.policy.deception.at({l, h}));
      pass = tol.eq(got, f.fitness_value);
      ok = ok && pass;
      v.conditions.push_back({"fitness-maximizing-deception[" + pair + "]", pass,
                              got - f.fitness_value,
                              "deception fitness minus the best fitness over the deceived's "
                              "undominated actions"});
      Rational lower = match_fitness(config, l, h);
      pass = tol.le(lower, hat);
      ok = ok && pass;
      v.conditions.push_back({"lower-type-payoff-bound[" + pair + "]", pass, hat - lower,
                              "π̂ minus the lower type's fitness against the highest type"});
    }
  }
  v.configuration = config;
  if (ok) {
    v.status = Status::inconclusive;
    v.reason = "all highest-type necessary conditions hold";
    return v;
  }
  v.status = Status::refuted;
  v.reason = "a highest-type necessary condition fails";
  RefuteOptions opt;
  StabilityVerdict r = refute_nsc(config, opt);
  if (r.status == Status::refuted && r.witness) {
    v.witness = r.witness;
  } else {
    Witness w;
    w.kind = "necessary-condition";
    for (const auto& c : v.conditions)
      if (!c.passed) {
        w.value = c.margin;
        break;
      }
    v.witness = w;
  }
  return v;
}

StabilityVerdict check_generic_efficiency(const Configuration& config) {
  StabilityVerdict v;
  v.configuration = config;
  const auto& game = config.env.game;
  const Tolerance tol = config.env.tolerance();
  const auto eff = efficiency_analysis(game);
  if (eff.symmetric_efficient_actions.empty()) {
    v.conditions.push_back({"symmetric-efficient-profile", false, 0,
                            "no symmetric profile attains π̂"});
    v.status = Status::refuted;
    v.reason = "no symmetric efficient profile exists, so no configuration is neutrally stable";
    v.witness = Witness{"necessary-condition", {}, {}, 0, std::nullopt};
    return v;
  }
  const Rational generic_tol = config.env.mode == NumberMode::exact ? Rational(0) : tol.eps;
  if (!is_generic(game, generic_tol) || eff.efficient_profiles.size() != 1) {
    v.status = Status::inconclusive;
    v.reason = !is_generic(game, generic_tol) ? "game not generic"
                                              : "efficient profile is not unique";
    return v;
  }
  const Action bar = eff.symmetric_efficient_actions[0];
  const size_t m = game.size();
  const MixedStrategy pure_bar = MixedStrategy::pure(m, bar);
  bool all_bar = true;
  for (const auto* table : {&config.policy.nash, &config.policy.deception})
    for (const auto& [pair, s] : *table)
      if (!(s == pure_bar)) all_bar = false;
  v.conditions.push_back({"all-matches-play-efficient-action", all_bar, 0,
                          "every policy entry is the pure action " + game.actions()[bar]});
  TypeGame tg = build_type_game(config);
  std::optional<Witness> witness;
  for (size_t j = 0; j < tg.size(); ++j)
    for (size_t k = j + 1; k < tg.size(); ++k) {
      const auto& b = tg.payoff;
      Rational q = b[j][j] - b[j][k] - b[k][j] + b[k][k];
      bool pass = !tol.gt(q, 0);
      v.conditions.push_back({"pair-quadratic-form[" + tg.labels[j] + "," + tg.labels[k] + "]",
                              pass, -q, "xᵀBx for x = e_j − e_k"});
      if (!pass && !witness) {
        Vec z(tg.size(), 0);
        z[j] = 1;
        z[k] = -1;
        witness = Witness{"direction", z, {}, q, std::nullopt};
      }
    }
  if (witness) {
    v.status = Status::refuted;
    v.reason = "two types do better among themselves than against each other";
    v.witness = witness;
  } else if (!all_bar) {
    v.status = Status::refuted;
    v.reason = "some match does not play the efficient action";
    StabilityVerdict r = refute_nsc(config, RefuteOptions{});
    v.witness = (r.status == Status::refuted && r.witness)
                    ? *r.witness
                    : Witness{"necessary-condition", {}, {}, 0, std::nullopt};
  } else {
    v.status = Status::inconclusive;
    v.reason = "all matches play the efficient action and every pair form is nonpositive";
  }
  return v;
}

}  // namespace coevo
