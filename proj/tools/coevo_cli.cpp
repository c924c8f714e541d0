#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "coevo/constructions.hpp"
#include "coevo/dynamics.hpp"
#include "coevo/interdependent.hpp"
#include "coevo/io.hpp"
#include "coevo/refute.hpp"

using namespace coevo;

namespace {

enum Exit { ok = 0, refuted = 1, inconclusive = 2, usage = 64, data_error = 65, no_input = 66 };

struct Common {
  double tol = 1e-9;
  std::uint64_t seed = 1;
  int budget = 10;
  bool rational = false;
  bool floating = false;
  bool as_json = false;
  std::string out;
};

std::optional<NumberMode> mode_of(const Common& c) {
  if (c.floating) return NumberMode::floating;
  if (c.rational) return NumberMode::exact;
  return std::nullopt;
}

RunManifest manifest(const std::string& verb, const Common& c, std::vector<std::string> inputs) {
  RunManifest m;
  m.command = verb;
  m.inputs = std::move(inputs);
  m.seed = c.seed;
  std::ostringstream tol;
  tol << c.tol;
  m.options = {{"tol", tol.str()},
               {"budget", std::to_string(c.budget)},
               {"mode", c.floating ? "float" : c.rational ? "rational" : "file"}};
  return m;
}

void emit(const json& report, const Common& c) {
  if (c.as_json)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << render_text(report);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
}

int exit_for(Status s) {
  switch (s) {
    case Status::certified_stable:
      return ok;
    case Status::refuted:
      return refuted;
    case Status::inconclusive:
      return inconclusive;
  }
  return inconclusive;
}

Environment env_with(const std::string& path, const Common& c) {
  Environment env = load_environment(path, mode_of(c));
  env.float_tol = c.tol;
  return env;
}

RefuteOptions refute_options(const Common& c, const Environment& env) {
  RefuteOptions o;
  o.budget = c.budget;
  o.nss.seed = c.seed;
  o.nss.tol = env.tolerance();
  return o;
}

int analyze(const std::string& game_file, const Common& c) {
  const NumberMode mode = mode_of(c).value_or(NumberMode::exact);
  SymmetricGame game = load_game(game_file, mode);
  const Rational generic_tol = mode == NumberMode::exact ? Rational(0) : from_double(c.tol);
  RunManifest m = manifest("analyze", c, {game_file});
  json report{{"manifest", manifest_to_json(m)},
              {"game", game_to_json(game)},
              {"diagnostics", diagnostics_to_json(diagnose(game, generic_tol), game)}};
  emit(report, c);
  return ok;
}

bool is_pure_config(const Configuration& config) {
  try {
    pure_action_of(config);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

int certify(const std::string& env_file, const std::string& config_file, const std::string& pure,
            bool interdependent, int level, const Common& c) {
  Environment env = env_with(env_file, c);
  std::vector<std::string> inputs{env_file};
  if (!config_file.empty()) inputs.push_back(config_file);
  RunManifest m = manifest("certify", c, inputs);
  m.environment_hash = environment_hash(env);
  m.options["pure"] = pure;
  m.options["interdependent"] = interdependent ? "true" : "false";
  json report{{"manifest", manifest_to_json(m)}};
  StabilityVerdict v;
  if (!pure.empty()) {
    const Action a = env.game.action_index(pure);
    v = interdependent ? id_pure_esc_sufficient(env, a, level)
                       : certify_pure_nsc(env, a, refute_options(c, env));
  } else {
    Configuration config = load_configuration(config_file, env);
    ValidationReport vr = validate(config);
    report["validation"] = validation_to_json(vr, config);
    if (!vr.valid) {
      emit(report, c);
      return data_error;
    }
    std::vector<StabilityVerdict> checks{check_highest_type_conditions(config),
                                         check_generic_efficiency(config)};
    if (is_pure_config(config)) checks.push_back(id_pure_nsc_necessary(config));
    v.status = Status::inconclusive;
    v.reason = "necessary conditions hold; no characterization certifies this configuration";
    v.configuration = config;
    for (auto& chk : checks) {
      for (auto& cond : chk.conditions) v.conditions.push_back(cond);
      if (chk.status == Status::refuted && v.status != Status::refuted) {
        v.status = Status::refuted;
        v.reason = chk.reason;
        v.witness = chk.witness;
      }
    }
  }
  report["verdict"] = verdict_to_json(v, env.game);
  if (!c.out.empty() && v.status == Status::certified_stable && v.configuration)
    write_file(c.out, configuration_to_json(*v.configuration).dump(2) + "\n");
  emit(report, c);
  return exit_for(v.status);
}

int refute(const std::string& env_file, const std::string& config_file, const Common& c) {
  Environment env = env_with(env_file, c);
  Configuration config = load_configuration(config_file, env);
  RunManifest m = manifest("refute", c, {env_file, config_file});
  m.environment_hash = environment_hash(env);
  ValidationReport vr = validate(config);
  json report{{"manifest", manifest_to_json(m)}, {"validation", validation_to_json(vr, config)}};
  if (!vr.valid) {
    emit(report, c);
    return data_error;
  }
  StabilityVerdict v = refute_nsc(config, refute_options(c, env));
  report["verdict"] = verdict_to_json(v, env.game);
  emit(report, c);
  return exit_for(v.status);
}

int construct(bool rps, const std::vector<std::string>& hawk_dove, const std::string& env_file,
              bool mixed, const Common& c) {
  Environment env = env_with(env_file, c);
  RunManifest m = manifest("construct", c, {env_file});
  m.environment_hash = environment_hash(env);
  m.options["construction"] = rps ? "rps" : "hawk-dove";
  m.options["mixed_within_level"] = mixed ? "true" : "false";
  json report{{"manifest", manifest_to_json(m)}};
  std::optional<Configuration> config;
  int code = ok;
  try {
    if (rps) {
      config = construct_rps_nsc(env);
      report["verdict"] = verdict_to_json(check_highest_type_conditions(*config), env.game);
    } else {
      HawkDoveResult r = construct_hawkdove_esc(read_number(hawk_dove.at(0), env.mode),
                                                read_number(hawk_dove.at(1), env.mode), env.cost,
                                                mixed, env.mode);
      r.verdict.configuration.reset();
      report["case"] = to_string(r.kind);
      report["verdict"] = verdict_to_json(r.verdict, env.game);
      config = r.configuration;
      code = exit_for(r.verdict.status);
    }
  } catch (const ConstructionError& e) {
    report["error"] = {{"condition", e.condition()}, {"message", e.what()}};
    emit(report, c);
    return data_error;
  }
  if (config) {
    const std::string text = configuration_to_json(*config).dump(2) + "\n";
    Configuration again = configuration_from_json(json::parse(text), std::nullopt);
    ValidationReport vr = validate(again);
    const Rational spread = env.mode == NumberMode::exact ? Rational(0) : Rational(1, 1000000000000);
    report["validation"] = validation_to_json(vr, again);
    report["balanced"] = is_balanced(again, spread);
    report["round_trip_identical"] = configuration_to_json(again).dump(2) + "\n" == text;
    report["configuration"] = json::parse(text);
    if (!c.out.empty()) write_file(c.out, text);
    if (!vr.valid) code = data_error;
  }
  emit(report, c);
  return code;
}

int simulate(const std::string& env_file, const std::string& config_file,
             const std::string& mutants_file, double horizon, const std::string& csv,
             const std::vector<double>& radii, const Common& c) {
  Environment env = env_with(env_file, c);
  Configuration config = load_configuration(config_file, env);
  std::vector<std::string> inputs{env_file, config_file};
  if (!mutants_file.empty()) inputs.push_back(mutants_file);
  RunManifest m = manifest("simulate", c, inputs);
  m.environment_hash = environment_hash(env);
  std::ostringstream hz;
  hz << horizon;
  m.options["horizon"] = hz.str();
  json report{{"manifest", manifest_to_json(m)}};

  const size_t incumbents = config.size();
  Configuration post = config;
  Rational eps = 0;
  if (!mutants_file.empty()) {
    std::ifstream f(mutants_file);
    if (!f) throw std::runtime_error("cannot open " + mutants_file);
    json mj = json::parse(f);
    json merged = configuration_to_json(config, false);
    for (const auto& t : mj.at("types")) merged["types"].push_back(t);
    for (const char* kind : {"nash", "deception"})
      if (mj.contains("policy") && mj["policy"].contains(kind))
        for (const auto& e : mj["policy"][kind]) merged["policy"][kind].push_back(e);
    eps = read_number(mj.value("epsilon", json("1/100")), env.mode);
    for (size_t i = 0; i < merged["types"].size(); ++i) {
      json& t = merged["types"][i];
      Rational share = read_number(t.at("frequency"), env.mode);
      t["frequency"] = write_number(i < incumbents ? Rational((1 - eps) * share) : Rational(eps * share));
    }
    post = configuration_from_json(merged, env);
    ValidationReport vr = validate(post);
    report["validation"] = validation_to_json(vr, post);
    if (!vr.valid) {
      emit(report, c);
      return data_error;
    }
    report["focal_policy"] = configuration_to_json(post, false)["policy"];
  }
  TypeGame tg = build_type_game(post);
  DMat b = to_doubles(tg.payoff);
  DVec x0 = to_doubles(post.dist.frequency);
  ReplicatorOptions ro;
  TrajectoryRecord tr = replicate(b, x0, horizon, ro);
  if (!csv.empty()) write_file(csv, trajectory_csv(tr, tg.labels));
  double mutant_start = 0, mutant_end = 0;
  for (size_t i = incumbents; i < post.size(); ++i) {
    mutant_start += x0[i];
    mutant_end += tr.states.back()[i];
  }
  json traj{{"steps", tr.times.size()},
            {"terminal_state", tr.states.back()},
            {"max_simplex_drift", tr.max_drift}};
  if (post.size() > incumbents) {
    traj["mutant_share_start"] = mutant_start;
    traj["mutant_share_end"] = mutant_end;
    traj["mutants_grew"] = mutant_end > mutant_start;
  }
  report["type_game"] = {{"labels", tg.labels}};
  report["trajectory"] = traj;
  if (post.size() == incumbents) {
    ProbeOptions po;
    po.seed = c.seed;
    try {
      report["probe"] = probe_to_json(stability_probe(b, x0, radii, horizon, po));
    } catch (const std::invalid_argument& e) {
      report["probe"] = {{"error", e.what()}};
    }
  }
  emit(report, c);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coevo: preferences, deception and stability in symmetric games"};
  app.require_subcommand(1);
  Common c;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--tol", c.tol, "Float-mode comparison tolerance")->capture_default_str();
    sub->add_option("--seed", c.seed, "Sampling seed")->capture_default_str();
    sub->add_option("--budget", c.budget, "Highest mutant level tried when refuting")
        ->capture_default_str();
    auto* r = sub->add_flag("--rational", c.rational, "Exact rational arithmetic");
    auto* f = sub->add_flag("--float", c.floating, "Floating tolerance comparisons");
    r->excludes(f);
    sub->add_flag("--json", c.as_json, "Machine-readable report");
    sub->add_option("--out", c.out, "Write the resulting configuration here");
  };

  std::string game_file, env_file, config_file, pure, mutants_file, csv;
  bool interdependent = false, rps = false, mixed = false;
  int level = 1;
  double horizon = 100;
  std::vector<std::string> hawk_dove;
  std::vector<double> radii{1e-3, 1e-2};

  auto* an = app.add_subcommand("analyze", "Game diagnostics");
  an->add_option("game", game_file)->required();
  common(an);

  auto* ce = app.add_subcommand("certify", "Certify a pure configuration or check a configuration");
  ce->add_option("env", env_file)->required();
  ce->add_option("config", config_file);
  ce->add_option("--pure", pure, "Action a* of a pure configuration");
  ce->add_flag("--interdependent", interdependent, "Use the discriminating-type sufficiency test");
  ce->add_option("--level", level, "Level of the interdependent incumbents")->capture_default_str();
  common(ce);

  auto* re = app.add_subcommand("refute", "Search for outperforming mutants");
  re->add_option("env", env_file)->required();
  re->add_option("config", config_file)->required();
  common(re);

  auto* co = app.add_subcommand("construct", "Closed-form heterogeneous constructions");
  co->add_flag("--rps", rps, "Rock-paper-scissors levels");
  co->add_option("--hawk-dove", hawk_dove, "Hawk-Dove gain and loss")->expected(2)->allow_extra_args(false);
  co->add_flag("--mixed-within-level", mixed, "Equals play the mixed Hawk-Dove equilibrium");
  co->add_option("env", env_file)->required();
  common(co);

  auto* si = app.add_subcommand("simulate", "Replicator dynamics on the type game");
  si->add_option("env", env_file)->required();
  si->add_option("config", config_file)->required();
  si->add_option("--mutants", mutants_file, "Mutant types and focal policy entries");
  si->add_option("--horizon", horizon)->capture_default_str();
  si->add_option("--csv", csv, "Trajectory output");
  si->add_option("--radii", radii, "Probe radii")->capture_default_str();
  common(si);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : usage;
  }

  try {
    if (*an) return analyze(game_file, c);
    if (*ce) {
      if (pure.empty() == config_file.empty()) {
        std::cerr << "certify: give either a configuration file or --pure\n";
        return usage;
      }
      return certify(env_file, config_file, pure, interdependent, level, c);
    }
    if (*re) return refute(env_file, config_file, c);
    if (*co) {
      if (rps == !hawk_dove.empty()) {
        std::cerr << "construct: give exactly one of --rps or --hawk-dove g l\n";
        return usage;
      }
      return construct(rps, hawk_dove, env_file, mixed, c);
    }
    if (*si) return simulate(env_file, config_file, mutants_file, horizon, csv, radii, c);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return data_error;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return data_error;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return data_error;
  } catch (const std::out_of_range& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return data_error;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return no_input;
  }
  return usage;
}
