#include "coevo/refute.hpp"

#include <algorithm>

namespace coevo {

std::vector<UtilityFunction> indifferent_candidates(const SymmetricGame& game) {
  const size_t m = game.size();
  Vec col_max(m);
  for (Action b = 0; b < m; ++b) {
    col_max[b] = game(0, b);
    for (Action a = 1; a < m; ++a) col_max[b] = std::max(col_max[b], Rational(game(a, b)));
  }
  Action generous = 0;
  for (Action b = 1; b < m; ++b)
    if (col_max[b] > col_max[generous]) generous = b;
  Action second = generous == 0 ? 1 : 0;
  for (Action b = 0; b < m; ++b)
    if (b != generous && col_max[b] > col_max[second]) second = b;

  std::vector<UtilityFunction> out;
  auto push = [&](const Vec& w) {
    UtilityFunction u = UtilityFunction::opponent_only(w);
    if (std::find(out.begin(), out.end(), u) == out.end()) out.push_back(u);
  };
  for (Rational r : {rat(0), rat(1, 2), rat(1, 3), rat(2, 3), rat(1, 4), rat(3, 4), rat(1, 5),
                     rat(2, 5), rat(3, 5), rat(4, 5), rat(1)}) {
    Vec w(m, 0);
    w[generous] = 1;
    w[second] = r;
    push(w);
  }
  for (Action b = 0; b < m; ++b) {
    Vec w(m, 0);
    w[b] = 1;
    push(w);
  }
  push(Vec(m, 0));
  return out;
}

std::optional<InvasionScenario> evaluate_invasion(const Configuration& post_entry,
                                                  size_t incumbents, const Vec& incumbent_shares,
                                                  const Vec& mutant_shares,
                                                  const std::string& recipe,
                                                  const std::string& description) {
  const size_t t = post_entry.size();
  TypeGame g = build_type_game(post_entry);
  Vec x(t, 0), y(t, 0);
  for (size_t i = 0; i < incumbents; ++i) x[i] = incumbent_shares[i];
  for (size_t k = 0; k + incumbents < t; ++k) y[incumbents + k] = mutant_shares[k];
  const Vec bx = mat_vec(g.payoff, x), by = mat_vec(g.payoff, y);
  const Rational first = dot(y, bx) - dot(x, bx);
  const Rational second = dot(y, by) - dot(x, by);
  const Tolerance tol = post_entry.env.tolerance();
  Rational eps;
  if (tol.gt(first, 0)) {
    eps = rat(1, 10);
    if (second < 0) eps = std::min(eps, Rational(first / (first - second) / 2));
  } else if (tol.is_zero(first) && tol.gt(second, 0)) {
    eps = rat(1, 10);
  } else {
    return std::nullopt;
  }
  InvasionScenario s{recipe, description, post_entry, incumbents, mutant_shares, eps, first, second};
  for (size_t i = 0; i < t; ++i)
    s.post_entry.dist.frequency[i] = i < incumbents ? Rational((1 - eps) * incumbent_shares[i])
                                                    : Rational(eps * mutant_shares[i - incumbents]);
  return s;
}

namespace {

MixedStrategy pure(const Configuration& c, Action a) {
  return MixedStrategy::pure(c.env.game.size(), a);
}

// Assembles a focal post-entry configuration: incumbents keep their policy,
// mutants are appended and their matches are set by the recipe.
struct Builder {
  Configuration post;
  size_t inc;
  Vec inc_shares;
  Vec mut_shares;

  explicit Builder(const Configuration& base)
      : post(base), inc(base.size()), inc_shares(base.dist.frequency) {
    post.policy.auto_nash.clear();
    post.policy.auto_deception.clear();
  }

  bool is_mutant(size_t i) const { return i >= inc; }

  bool distinct(const CognitiveType& t) const {
    for (const auto& s : post.dist.support)
      if (s.same_type(t)) return false;
    return true;
  }

  size_t add(CognitiveType t, const Rational& share) {
    t.label = "mutant-" + std::to_string(mut_shares.size() + 1);
    post.dist.support.push_back(std::move(t));
    post.dist.frequency.push_back(0);
    mut_shares.push_back(share);
    return post.size() - 1;
  }

  void nash(size_t i, size_t j, const MixedStrategy& a, const MixedStrategy& b) {
    post.policy.nash[{i, j}] = a;
    post.policy.nash[{j, i}] = b;
  }

  void deceive(size_t hi, size_t lo, const MixedStrategy& a, const MixedStrategy& b) {
    post.policy.deception[{hi, lo}] = a;
    post.policy.deception[{lo, hi}] = b;
  }

  // The mutant plays as `model` does and incumbents treat it like `model`.
  void mimic(size_t mu, size_t model) {
    const auto& pol = post.policy;
    for (size_t t = 0; t < inc; ++t) {
      if (needs_nash(post, mu, t) && needs_nash(post, model, t))
        nash(mu, t, pol.nash.at({model, t}), pol.nash.at({t, model}));
      const int lm = post.type(mu).level, lo = post.type(model).level, lt = post.type(t).level;
      if (needs_deception(post, mu, t) && needs_deception(post, model, t) &&
          (lm > lt) == (lo > lt))
        deceive(mu, t, pol.deception.at({model, t}), pol.deception.at({t, model}));
    }
  }

  // Fills missing or invalid mutant matches with the equilibrium that is best
  // for the mutants, then validates everything.
  bool finish(std::string& why) {
    const Rational share = rat(1, 100);
    for (size_t i = 0; i < post.size(); ++i)
      post.dist.frequency[i] =
          i < inc ? Rational((1 - share) * inc_shares[i]) : Rational(share * mut_shares[i - inc]);
    const auto& env = post.env;
    const Tolerance tol = env.tolerance();
    for (size_t i = 0; i < post.size(); ++i)
      for (size_t j = i; j < post.size(); ++j) {
        if (!is_mutant(i) && !is_mutant(j)) continue;
        const auto& ti = post.type(i);
        const auto& tj = post.type(j);
        if (needs_nash(post, i, j)) {
          auto& pn = post.policy.nash;
          bool ok = pn.count({i, j}) && pn.count({j, i}) &&
                    tol.is_zero(nash_violation(ti.utility_against(tj), tj.utility_against(ti),
                                               pn.at({i, j}), pn.at({j, i})));
          if (!ok) {
            auto eqs = nash_equilibria(ti.utility_against(tj), tj.utility_against(ti)).equilibria;
            const Equilibrium* pick = nullptr;
            Rational best;
            for (const auto& e : eqs) {
              if (i == j && !(e.row == e.col)) continue;
              Rational score = 0;
              if (is_mutant(i)) score += payoff(env.game, e.row, e.col);
              if (is_mutant(j) && i != j) score += payoff(env.game, e.col, e.row);
              if (!pick || score > best) {
                pick = &e;
                best = score;
              }
            }
            if (!pick) {
              why = "no symmetric equilibrium for " + ti.label + " against itself";
              return false;
            }
            nash(i, j, pick->row, pick->col);
          }
        }
        if (needs_deception(post, i, j)) {
          size_t hi = ti.level > tj.level ? i : j, lo = hi == i ? j : i;
          auto& pd = post.policy.deception;
          bool ok = pd.count({hi, lo}) && pd.count({lo, hi}) &&
                    tol.is_zero(deception_violation(env, post.type(hi), post.type(lo),
                                                    pd.at({hi, lo}), pd.at({lo, hi})));
          if (!ok) {
            auto de = deception_equilibria(env, post.type(hi), post.type(lo));
            ActionPair pick = de.optima.front();
            Rational best;
            bool first = true;
            for (auto [a, b] : de.optima) {
              Rational score = 0;
              if (is_mutant(hi)) score += env.game(a, b);
              if (is_mutant(lo)) score += env.game(b, a);
              if (first || score > best) {
                pick = {a, b};
                best = score;
                first = false;
              }
            }
            deceive(hi, lo, pure(post, pick.first), pure(post, pick.second));
          }
        }
      }
    ValidationReport r = validate(post);
    if (!r.valid) {
      why = r.errors.empty() ? r.violations.front().condition : r.errors.front();
      return false;
    }
    return true;
  }

  std::optional<InvasionScenario> evaluate(const std::string& recipe, const std::string& what,
                                           std::string& why) {
    if (!finish(why)) return std::nullopt;
    auto s = evaluate_invasion(post, inc, inc_shares, mut_shares, recipe, what);
    if (!s) why = "mutants do not outperform";
    return s;
  }
};

// Fitness-maximizing deception profile for a deceiver against `deceived`;
// falls back to the fittest deception equilibrium when none maximizes fitness.
ActionPair fittest_deception(const Environment& env, const CognitiveType& deceiver,
                             const CognitiveType& deceived) {
  FmdeResult f = fmde(env, deceiver, deceived);
  if (!f.profiles.empty()) return f.profiles.front();
  DeceptionResult de = deception_equilibria(env, deceiver, deceived);
  ActionPair best = de.optima.front();
  for (auto p : de.optima)
    if (env.game(p.first, p.second) > env.game(best.first, best.second)) best = p;
  return best;
}

std::vector<CognitiveType> fresh_mutants(const Builder& b, const SymmetricGame& game, int level,
                                         size_t count) {
  std::vector<CognitiveType> out;
  for (const auto& u : indifferent_candidates(game)) {
    CognitiveType t("candidate", u, level);
    if (!b.distinct(t)) continue;
    bool dup = false;
    for (const auto& o : out)
      if (o.same_type(t)) dup = true;
    if (!dup) out.push_back(t);
    if (out.size() == count) break;
  }
  return out;
}

struct Context {
  const Configuration& config;
  const RefuteOptions& opt;
  std::vector<Condition>& log;
  Rational hat;
  int top;
  Tolerance tol;
};

void note(Context& cx, const std::string& recipe, const std::string& detail) {
  cx.log.push_back({recipe, true, 0, detail});
}

// Deceptions against every lower incumbent maximize the mutant's fitness.
void fittest_against_lower(Builder& b, size_t mu) {
  for (size_t t = 0; t < b.inc; ++t)
    if (b.post.type(t).level < b.post.type(mu).level) {
      auto [a, a2] = fittest_deception(b.post.env, b.post.type(mu), b.post.type(t));
      b.deceive(mu, t, pure(b.post, a), pure(b.post, a2));
    }
}

std::optional<InvasionScenario> efficient_rotation(Context& cx) {
  const std::string name = "efficient-rotation";
  const auto& c = cx.config;
  const auto eff = efficiency_analysis(c.env.game);
  ActionPair ep = eff.efficient_profiles.front();
  bool applicable = false;
  std::string why;
  for (size_t h = 0; h < c.size(); ++h) {
    if (c.type(h).level != cx.top) continue;
    if (!cx.tol.lt(match_fitness(c, h, h), cx.hat)) continue;
    applicable = true;
    Builder b(c);
    auto types = fresh_mutants(b, c.env.game, cx.top, 3);
    if (types.size() < 3) {
      why = "fewer than three distinct indifferent preferences available";
      continue;
    }
    size_t mu[3];
    for (int i = 0; i < 3; ++i) mu[i] = b.add(types[i], rat(1, 3));
    for (size_t m : mu) {
      b.mimic(m, h);
      fittest_against_lower(b, m);
      b.nash(m, m, c.policy.nash.at({h, h}), c.policy.nash.at({h, h}));
    }
    for (int i = 0; i < 3; ++i)
      b.nash(mu[i], mu[(i + 1) % 3], pure(c, ep.first), pure(c, ep.second));
    auto s = b.evaluate(name,
                        "three indifferent mutants at the top level mimic " + c.type(h).label +
                            " against incumbents and play the efficient profile across types",
                        why);
    if (s) return s;
  }
  note(cx, name, applicable ? why : "every highest type plays efficiently against itself");
  return std::nullopt;
}

std::optional<InvasionScenario> fitness_maximizing_deceiver(Context& cx) {
  const std::string name = "fitness-maximizing-deceiver";
  const auto& c = cx.config;
  bool applicable = false;
  std::string why;
  for (size_t h = 0; h < c.size(); ++h) {
    if (c.type(h).level != cx.top) continue;
    bool fails = false;
    for (size_t l = 0; l < c.size(); ++l) {
      if (c.type(l).level >= cx.top) continue;
      Rational got = payoff(c.env.game, c.policy.deception.at({h, l}), c.policy.deception.at({l, h}));
      if (cx.tol.lt(got, fmde(c.env, c.type(h), c.type(l)).fitness_value)) fails = true;
    }
    if (!fails) continue;
    applicable = true;
    Builder b(c);
    auto types = fresh_mutants(b, c.env.game, cx.top, 1);
    if (types.empty()) {
      why = "no distinct indifferent preference available";
      continue;
    }
    size_t mu = b.add(types[0], 1);
    b.mimic(mu, h);
    fittest_against_lower(b, mu);
    b.nash(mu, mu, c.policy.nash.at({h, h}), c.policy.nash.at({h, h}));
    auto s = b.evaluate(name,
                        "indifferent mutant at the top level deceives lower types for maximal "
                        "fitness and otherwise mimics " + c.type(h).label,
                        why);
    if (s) return s;
  }
  note(cx, name, applicable ? why : "highest types already maximize fitness when deceiving");
  return std::nullopt;
}

std::optional<InvasionScenario> mimic_lower_type(Context& cx) {
  const std::string name = "mimic-lower-type";
  const auto& c = cx.config;
  bool applicable = false;
  std::string why;
  for (size_t h = 0; h < c.size(); ++h) {
    if (c.type(h).level != cx.top) continue;
    for (size_t l = 0; l < c.size(); ++l) {
      if (c.type(l).level >= cx.top) continue;
      if (!cx.tol.gt(match_fitness(c, l, h), cx.hat)) continue;
      applicable = true;
      for (int variant = 0; variant < 2; ++variant) {
        const auto& table = variant == 0 ? c.policy.nash : c.policy.deception;
        if (!table.count({l, h})) continue;
        Builder b(c);
        auto types = fresh_mutants(b, c.env.game, cx.top, 1);
        if (types.empty()) {
          why = "no distinct indifferent preference available";
          continue;
        }
        size_t mu = b.add(types[0], 1);
        b.mimic(mu, h);
        fittest_against_lower(b, mu);
        b.nash(mu, mu, c.policy.nash.at({h, h}), c.policy.nash.at({h, h}));
        b.nash(mu, h, table.at({l, h}), table.at({h, l}));
        auto s = b.evaluate(name,
                            "top-level mutant plays against " + c.type(h).label + " as " +
                                c.type(l).label + " does in " +
                                (variant == 0 ? "non-deception" : "deception") + " matches",
                            why);
        if (s) return s;
      }
    }
  }
  note(cx, name, applicable ? why : "no lower type earns more than π̂ against a highest type");
  return std::nullopt;
}

std::optional<InvasionScenario> efficient_self_play(Context& cx) {
  const std::string name = "efficient-self-play";
  const auto& c = cx.config;
  const auto& game = c.env.game;
  const auto eff = efficiency_analysis(game);
  const Rational generic_tol = c.env.mode == NumberMode::exact ? Rational(0) : cx.tol.eps;
  if (!is_generic(game, generic_tol) || eff.efficient_profiles.size() != 1 ||
      eff.symmetric_efficient_actions.empty()) {
    note(cx, name, "needs a generic game with a unique symmetric efficient profile");
    return std::nullopt;
  }
  const Action bar = eff.symmetric_efficient_actions[0];
  const size_t m = game.size();
  std::vector<size_t> order(c.size());
  for (size_t i = 0; i < c.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return c.type(a).level > c.type(b).level; });
  bool applicable = false;
  std::string why;
  for (size_t o : order) {
    const auto& ring = c.type(o);
    if (ring.interdependent() || !cx.tol.lt(match_fitness(c, o, o), cx.hat)) continue;
    applicable = true;
    const UtilityFunction& u = std::get<UtilityFunction>(ring.preferences);
    auto dom = undominated_pure_actions(u, cx.tol);
    Builder b(c);
    std::optional<CognitiveType> hat_type;
    const bool full = dom.undominated.size() == m;
    if (full) {
      auto t = fresh_mutants(b, game, ring.level, 1);
      if (!t.empty()) hat_type = t[0];
    } else {
      Action low = 0;
      while (std::find(dom.undominated.begin(), dom.undominated.end(), low) != dom.undominated.end())
        ++low;
      for (Rational beta : {rat(0), rat(1, 8), rat(1, 4), rat(1, 2), rat(1)}) {
        Mat raw = u.matrix();
        Rational top = u(0, bar);
        for (Action a = 1; a < m; ++a) top = std::max(top, Rational(u(a, bar)));
        raw[bar][bar] = top;
        for (Action a2 = 0; a2 < m; ++a2)
          if (a2 != bar) raw[low][a2] -= beta;
        CognitiveType t("candidate", UtilityFunction(raw), ring.level);
        if (b.distinct(t)) {
          hat_type = t;
          break;
        }
      }
    }
    if (!hat_type) {
      why = "could not build a new mutant preference";
      continue;
    }
    size_t mu = b.add(*hat_type, 1);
    b.mimic(mu, o);
    const auto& env = c.env;
    for (size_t t = 0; t < b.inc; ++t) {
      const auto& other = c.type(t);
      if (other.level < ring.level) {
        ActionPair p;
        if (full) {
          p = fittest_deception(env, b.post.type(mu), other);
        } else {
          auto de = deception_equilibria(env, ring, other);
          p = de.optima.front();
          for (auto q : de.optima)
            if (game(q.first, q.second) > game(p.first, p.second)) p = q;
        }
        b.deceive(mu, t, pure(c, p.first), pure(c, p.second));
      } else if (other.level > ring.level) {
        auto de = deception_equilibria(env, other, ring);
        ActionPair p = de.optima.front();
        for (auto q : de.optima)
          if (game(q.second, q.first) > game(p.second, p.first)) p = q;
        MixedStrategy s1 = pure(c, p.first), s2 = pure(c, p.second);
        if (!cx.tol.is_zero(deception_violation(env, other, b.post.type(mu), s1, s2))) {
          s1 = pure(c, bar);
          s2 = pure(c, bar);
        }
        b.deceive(t, mu, s1, s2);
      }
    }
    b.nash(mu, mu, pure(c, bar), pure(c, bar));
    auto s = b.evaluate(name,
                        "mutant with " + ring.label + "'s preferences, (ā,ā) raised to a best "
                        "reply, mimics it and plays the efficient action against itself",
                        why);
    if (s) return s;
  }
  note(cx, name, applicable ? why : "every type plays efficiently against itself");
  return std::nullopt;
}

std::optional<InvasionScenario> indifferent_deceiver(Context& cx) {
  const std::string name = "indifferent-deceiver";
  const auto& c = cx.config;
  const size_t m = c.env.game.size();
  std::string why = "no level up to the budget gains enough from deception";
  for (int n = 2; n <= cx.opt.budget; ++n) {
    for (size_t o = 0; o < c.size(); ++o) {
      Builder b(c);
      CognitiveType t("candidate", UtilityFunction::constant(m), n);
      if (!b.distinct(t)) continue;
      size_t mu = b.add(t, 1);
      b.mimic(mu, o);
      fittest_against_lower(b, mu);
      if (needs_nash(b.post, mu, mu))
        b.nash(mu, mu, c.policy.nash.at({o, o}), c.policy.nash.at({o, o}));
      std::string w;
      auto s = b.evaluate(name,
                          "mutant with constant utility at level " + std::to_string(n) +
                              " deceives lower incumbents into their fittest exploitable play "
                              "and mimics " + c.type(o).label + " otherwise",
                          w);
      if (s) return s;
    }
  }
  note(cx, name, why);
  return std::nullopt;
}

std::optional<InvasionScenario> maxmin_dominant(Context& cx) {
  const std::string name = "maxmin-dominant";
  const auto& c = cx.config;
  const auto bounds = maxmin_minmax(c.env.game);
  const Rational avg = average_fitness(c);
  if (!cx.tol.lt(avg, bounds.maxmin)) {
    note(cx, name, "average fitness " + to_string(avg) + " is at least the pure maxmin " +
                       to_string(bounds.maxmin));
    return std::nullopt;
  }
  const size_t m = c.env.game.size();
  Mat raw(m, Vec(m, 0));
  for (Action b2 = 0; b2 < m; ++b2) raw[bounds.maxmin_action][b2] = 1;
  Builder b(c);
  CognitiveType t("candidate", UtilityFunction(raw), 1);
  std::string why = "maxmin-dominant preference is already an incumbent";
  if (b.distinct(t)) {
    size_t mu = b.add(t, 1);
    MixedStrategy am = pure(c, bounds.maxmin_action);
    b.nash(mu, mu, am, am);
    auto s = b.evaluate(name,
                        "level-1 mutant for whom " + c.env.game.actions()[bounds.maxmin_action] +
                            " is dominant guarantees the pure maxmin",
                        why);
    if (s) return s;
  }
  note(cx, name, why);
  return std::nullopt;
}

}  // namespace

StabilityVerdict refute_nsc(const Configuration& config, const RefuteOptions& opt) {
  StabilityVerdict v;
  v.configuration = config;
  ValidationReport vr = validate(config);
  if (!vr.valid) {
    v.status = Status::inconclusive;
    v.reason = "configuration is not valid: " +
               (vr.errors.empty() ? vr.violations.front().condition : vr.errors.front());
    return v;
  }
  const Tolerance tol = config.env.tolerance();
  Context cx{config, opt, v.conditions, efficiency_analysis(config.env.game).efficient_payoff,
             config.dist.top_level(), tol};

  TypeGame tg = build_type_game(config);
  NssOptions nss = opt.nss;
  nss.tol = tol;
  StabilityVerdict internal = is_nss(tg.payoff, MixedStrategy(config.dist.frequency), nss);
  if (internal.status == Status::refuted) {
    v.conditions.push_back({"internal-stability", false, -internal.witness->value,
                            "incumbent mix is not an NSS of its own type game: " + internal.reason});
    v.status = Status::refuted;
    v.reason = "internal-stability: " + internal.reason;
    v.witness = internal.witness;
    return v;
  }
  v.conditions.push_back({"internal-stability", true, 0, to_string(internal.status)});

  using Recipe = std::optional<InvasionScenario> (*)(Context&);
  for (Recipe r : {efficient_rotation, fitness_maximizing_deceiver, mimic_lower_type,
                   efficient_self_play, indifferent_deceiver, maxmin_dominant}) {
    if (auto s = r(cx)) {
      v.conditions.push_back({s->recipe, false, s->first_order, s->description});
      v.status = Status::refuted;
      v.reason = s->recipe + ": mutants strictly outperform the incumbents";
      Witness w;
      w.kind = "invasion";
      w.value = tol.gt(s->first_order, 0) ? s->first_order : s->second_order;
      w.scenario = std::move(s);
      v.witness = std::move(w);
      return v;
    }
  }
  v.status = Status::inconclusive;
  v.reason = "no recipe produced outperforming mutants";
  return v;
}

}  // namespace coevo
