#include "coevo/io.hpp"

#include <fstream>
#include <sstream>

namespace coevo {

namespace fs = std::filesystem;

ParseError::ParseError(std::string source, size_t line, size_t column, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                         message),
      line_(line),
      column_(column) {}

Rational read_number(const std::string& text, NumberMode mode) {
  Rational r = parse_rational(text);
  return mode == NumberMode::floating ? from_json_double(to_double(r)) : r;
}

Rational read_number(const json& j, NumberMode mode) {
  if (j.is_string()) return read_number(j.get<std::string>(), mode);
  if (j.is_number_integer()) return Rational(j.dump());
  if (j.is_number()) return from_json_double(j.get<double>());
  throw std::invalid_argument("expected a number, got " + j.dump());
}

json write_number(const Rational& r) { return to_string(r); }

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json parse_json(const std::string& content, const std::string& source) {
  try {
    return json::parse(content);
  } catch (const json::parse_error& e) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < e.byte && i < content.size(); ++i) {
      if (content[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    auto pos = msg.find("syntax error");
    throw ParseError(source, line, col, pos == std::string::npos ? msg : msg.substr(pos));
  }
}

Mat read_matrix(const json& j, NumberMode mode, size_t m, const std::string& what) {
  if (!j.is_array() || j.size() != m)
    throw std::invalid_argument(what + ": expected " + std::to_string(m) + " rows");
  Mat out;
  for (size_t i = 0; i < m; ++i) {
    if (!j[i].is_array() || j[i].size() != m)
      throw std::invalid_argument(what + ": row " + std::to_string(i + 1) + " has " +
                                  std::to_string(j[i].is_array() ? j[i].size() : 0) +
                                  " entries, expected " + std::to_string(m));
    Vec row;
    for (const auto& x : j[i]) row.push_back(read_number(x, mode));
    out.push_back(std::move(row));
  }
  return out;
}

json matrix_to_json(const Mat& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& x : row) r.push_back(write_number(x));
    out.push_back(r);
  }
  return out;
}

SymmetricGame game_from_json(const json& j, NumberMode mode, const std::string& source) {
  if (!j.is_object() || !j.contains("actions") || !j.contains("payoff"))
    throw ParseError(source, 1, 1, "game object needs \"actions\" and \"payoff\"");
  auto actions = j.at("actions").get<std::vector<std::string>>();
  try {
    return SymmetricGame(actions, read_matrix(j.at("payoff"), mode, actions.size(), "payoff"));
  } catch (const std::invalid_argument& e) {
    throw ParseError(source, 1, 1, e.what());
  }
}

UtilityFunction utility_from_json(const json& j, const SymmetricGame& game, NumberMode mode,
                                  const std::string& what) {
  if (j.is_string()) {
    if (j.get<std::string>() == "materialistic") return UtilityFunction::materialistic(game);
    throw std::invalid_argument(what + ": unknown utility '" + j.get<std::string>() + "'");
  }
  return UtilityFunction(read_matrix(j, mode, game.size(), what));
}

Preferences preferences_from_json(const json& j, const SymmetricGame& game, NumberMode mode,
                                  const std::string& what) {
  if (j.is_object()) {
    std::map<std::string, UtilityFunction> branches;
    if (j.contains("branches"))
      for (const auto& [label, u] : j.at("branches").items())
        branches.emplace(label, utility_from_json(u, game, mode, what + " branch " + label));
    std::optional<UtilityFunction> otherwise;
    if (j.contains("otherwise"))
      otherwise = utility_from_json(j.at("otherwise"), game, mode, what + " otherwise branch");
    return InterdependentUtility(std::move(branches), std::move(otherwise));
  }
  return utility_from_json(j, game, mode, what);
}

json preferences_to_json(const Preferences& p) {
  if (const auto* u = std::get_if<UtilityFunction>(&p)) return matrix_to_json(u->matrix());
  const auto& id = std::get<InterdependentUtility>(p);
  json out = json::object();
  json br = json::object();
  for (const auto& [label, u] : id.branches()) br[label] = matrix_to_json(u.matrix());
  out["branches"] = br;
  if (id.otherwise()) out["otherwise"] = matrix_to_json(id.otherwise()->matrix());
  return out;
}

MixedStrategy play_from_json(const json& j, const SymmetricGame& game, NumberMode mode) {
  if (j.is_string()) return MixedStrategy::pure(game.size(), game.action_index(j.get<std::string>()));
  Vec w;
  for (const auto& x : j) w.push_back(read_number(x, mode));
  if (w.size() != game.size()) throw std::invalid_argument("strategy has the wrong dimension");
  return MixedStrategy(w);
}

json play_to_json(const MixedStrategy& s, const SymmetricGame& game) {
  if (s.is_pure()) return game.actions()[s.pure_action()];
  json out = json::array();
  for (const auto& w : s.weights()) out.push_back(write_number(w));
  return out;
}

std::string mode_name(NumberMode m) { return m == NumberMode::exact ? "rational" : "float"; }

}  // namespace

SymmetricGame parse_game(const std::string& content, const std::string& source, NumberMode mode) {
  size_t first = content.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && content[first] == '{')
    return game_from_json(parse_json(content, source), mode, source);

  std::vector<std::string> actions;
  Mat rows;
  std::istringstream in(content);
  std::string line;
  size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    struct Token {
      std::string text;
      size_t column;
    };
    std::vector<Token> tokens;
    for (size_t i = 0; i < line.size();) {
      if (line[i] == ' ' || line[i] == '\t' || line[i] == ',') {
        ++i;
        continue;
      }
      size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != ',') ++j;
      tokens.push_back({line.substr(i, j - i), i + 1});
      i = j;
    }
    if (tokens.empty() || tokens[0].text[0] == '#') continue;
    if (!header) {
      if (tokens[0].text != "actions:")
        throw ParseError(source, lineno, tokens[0].column, "expected 'actions:' header");
      for (size_t k = 1; k < tokens.size(); ++k) actions.push_back(tokens[k].text);
      if (actions.empty()) throw ParseError(source, lineno, line.size() + 1, "no actions declared");
      header = true;
      continue;
    }
    const size_t r = rows.size();
    if (r >= actions.size())
      throw ParseError(source, lineno, tokens[0].column,
                       "extra row; the game declares " + std::to_string(actions.size()) + " actions");
    if (tokens.size() != actions.size()) {
      size_t col = tokens.size() > actions.size() ? tokens[actions.size()].column : line.size() + 1;
      throw ParseError(source, lineno, col,
                       "row " + std::to_string(r + 1) + " (action " + actions[r] + ") has " +
                           std::to_string(tokens.size()) + " entries, expected " +
                           std::to_string(actions.size()));
    }
    Vec row;
    for (const auto& t : tokens) {
      try {
        row.push_back(read_number(t.text, mode));
      } catch (const std::invalid_argument&) {
        throw ParseError(source, lineno, t.column,
                         "row " + std::to_string(r + 1) + " (action " + actions[r] +
                             "): invalid number '" + t.text + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (!header) throw ParseError(source, lineno + 1, 1, "missing 'actions:' header");
  if (rows.size() != actions.size())
    throw ParseError(source, lineno + 1, 1,
                     "expected " + std::to_string(actions.size()) + " rows, found " +
                         std::to_string(rows.size()));
  try {
    return SymmetricGame(actions, rows);
  } catch (const std::invalid_argument& e) {
    throw ParseError(source, 1, 1, e.what());
  }
}

SymmetricGame load_game(const fs::path& path, NumberMode mode) {
  return parse_game(read_file(path), path.string(), mode);
}

json game_to_json(const SymmetricGame& game) {
  return json{{"actions", game.actions()}, {"payoff", matrix_to_json(game.payoff())}};
}

Environment environment_from_json(const json& j, const fs::path& base_dir,
                                  const std::optional<NumberMode>& mode_override) {
  NumberMode mode = NumberMode::exact;
  if (j.contains("mode")) {
    const auto name = j.at("mode").get<std::string>();
    if (name == "float")
      mode = NumberMode::floating;
    else if (name != "rational")
      throw std::invalid_argument("mode must be \"rational\" or \"float\"");
  }
  if (mode_override) mode = *mode_override;
  if (!j.contains("game")) throw std::invalid_argument("environment needs a \"game\"");
  const json& g = j.at("game");
  SymmetricGame game = g.is_string() ? load_game(base_dir / g.get<std::string>(), mode)
                                     : game_from_json(g, mode, "environment game");

  CostSchedule cost;
  if (j.contains("cost")) {
    const json& c = j.at("cost");
    if (c.contains("linear")) {
      cost = CostSchedule::linear(read_number(c.at("linear"), mode));
    } else {
      Vec ks;
      for (const auto& k : c.at("explicit")) ks.push_back(read_number(k, mode));
      cost = CostSchedule(ks, read_number(c.value("increment", json("1")), mode));
    }
  }
  DeceptionTable q;
  if (j.contains("deception")) {
    const json& d = j.at("deception");
    std::map<std::pair<int, int>, Rational> entries;
    if (d.contains("entries"))
      for (const auto& e : d.at("entries"))
        entries[{e.at("deceiver").get<int>(), e.at("deceived").get<int>()}] =
            read_number(e.at("q"), mode);
    q = DeceptionTable(entries, read_number(d.value("fallback", json("1")), mode));
  }
  return Environment{game, cost, q, mode};
}

Environment load_environment(const fs::path& path, const std::optional<NumberMode>& mode_override) {
  return environment_from_json(parse_json(read_file(path), path.string()), path.parent_path(),
                               mode_override);
}

json environment_to_json(const Environment& env) {
  json cost{{"explicit", json::array()}, {"increment", write_number(env.cost.increment())}};
  for (const auto& k : env.cost.explicit_costs()) cost["explicit"].push_back(write_number(k));
  json entries = json::array();
  for (const auto& [key, v] : env.q.entries())
    entries.push_back({{"deceiver", key.first}, {"deceived", key.second}, {"q", write_number(v)}});
  return json{{"game", game_to_json(env.game)},
              {"mode", mode_name(env.mode)},
              {"cost", cost},
              {"deception", {{"fallback", write_number(env.q.fallback())}, {"entries", entries}}}};
}

std::optional<std::vector<std::string>> label_universe(const json& j) {
  if (!j.contains("label_universe")) return std::nullopt;
  return j.at("label_universe").get<std::vector<std::string>>();
}

Configuration configuration_from_json(const json& j, const std::optional<Environment>& env_in,
                                      const fs::path& base_dir) {
  Environment env;
  if (env_in) {
    env = *env_in;
  } else if (j.contains("environment")) {
    const json& e = j.at("environment");
    env = e.is_string() ? load_environment(base_dir / e.get<std::string>())
                        : environment_from_json(e, base_dir);
  } else {
    throw std::invalid_argument("configuration has no environment");
  }
  Configuration c{env, {}, {}};
  const auto& game = env.game;
  for (const auto& t : j.at("types")) {
    const auto label = t.at("label").get<std::string>();
    c.dist.support.emplace_back(
        label, preferences_from_json(t.at("utility"), game, env.mode, "type " + label),
        t.value("level", 1));
    c.dist.frequency.push_back(read_number(t.at("frequency"), env.mode));
  }
  if (auto universe = label_universe(j)) {
    for (const auto& t : c.dist.support)
      if (std::find(universe->begin(), universe->end(), t.label) == universe->end())
        throw std::invalid_argument("type '" + t.label + "' is not in the declared label universe");
  }
  for (const auto& t : c.dist.support)
    if (t.interdependent())
      for (const auto& other : c.dist.support) (void)t.utility_against(other);

  if (j.contains("policy")) {
    const json& p = j.at("policy");
    for (const char* kind : {"nash", "deception"}) {
      if (!p.contains(kind)) continue;
      auto& table = std::string(kind) == "nash" ? c.policy.nash : c.policy.deception;
      auto& autos = std::string(kind) == "nash" ? c.policy.auto_nash : c.policy.auto_deception;
      for (const auto& e : p.at(kind)) {
        TypePair key{c.dist.index_of(e.at("type").get<std::string>()),
                     c.dist.index_of(e.at("against").get<std::string>())};
        table[key] = play_from_json(e.at("play"), game, env.mode);
        if (e.value("auto", false)) autos.insert(key);
      }
    }
  }
  complete_policy(c);
  return c;
}

Configuration load_configuration(const fs::path& path, const std::optional<Environment>& env) {
  return configuration_from_json(parse_json(read_file(path), path.string()), env,
                                 path.parent_path());
}

json configuration_to_json(const Configuration& c, bool embed_environment) {
  json out = json::object();
  if (embed_environment) out["environment"] = environment_to_json(c.env);
  json types = json::array();
  for (size_t i = 0; i < c.size(); ++i) {
    const auto& t = c.type(i);
    types.push_back({{"label", t.label},
                     {"level", t.level},
                     {"frequency", write_number(c.dist.frequency[i])},
                     {"utility", preferences_to_json(t.preferences)}});
  }
  out["types"] = types;
  json policy = json::object();
  for (const char* kind : {"nash", "deception"}) {
    const bool nash = std::string(kind) == "nash";
    const auto& table = nash ? c.policy.nash : c.policy.deception;
    const auto& autos = nash ? c.policy.auto_nash : c.policy.auto_deception;
    json entries = json::array();
    for (const auto& [key, s] : table) {
      json e{{"type", c.type(key.first).label},
             {"against", c.type(key.second).label},
             {"play", play_to_json(s, c.env.game)}};
      if (autos.count(key)) e["auto"] = true;
      entries.push_back(e);
    }
    policy[kind] = entries;
  }
  out["policy"] = policy;
  return out;
}

std::string environment_hash(const Environment& env) {
  const std::string text = environment_to_json(env).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json manifest_to_json(const RunManifest& m) {
  json opts = json::object();
  for (const auto& [k, v] : m.options) opts[k] = v;
  json j{{"command", m.command}, {"inputs", m.inputs}};
  if (!m.environment_hash.empty()) j["environment_hash"] = m.environment_hash;
  j["options"] = opts;
  j["seed"] = m.seed;
  return j;
}

namespace {

json vec_to_json(const Vec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(write_number(x));
  return out;
}

}  // namespace

json verdict_to_json(const StabilityVerdict& v, const SymmetricGame& game) {
  json out{{"status", to_string(v.status)}, {"reason", v.reason}};
  json conds = json::array();
  for (const auto& c : v.conditions)
    conds.push_back({{"name", c.name},
                     {"passed", c.passed},
                     {"margin", write_number(c.margin)},
                     {"margin_value", to_double(c.margin)},
                     {"detail", c.detail}});
  out["conditions"] = conds;
  if (v.witness) {
    const auto& w = *v.witness;
    json wj{{"kind", w.kind}, {"value", write_number(w.value)}};
    if (!w.direction.empty()) wj["direction"] = vec_to_json(w.direction);
    if (!w.mutant.empty()) wj["mutant"] = vec_to_json(w.mutant);
    if (w.scenario) {
      const auto& s = *w.scenario;
      json labels = json::array();
      for (size_t i = s.incumbents; i < s.post_entry.size(); ++i)
        labels.push_back(s.post_entry.type(i).label);
      wj["scenario"] = {{"recipe", s.recipe},
                        {"description", s.description},
                        {"mutants", labels},
                        {"mutant_shares", vec_to_json(s.mutant_shares)},
                        {"epsilon", write_number(s.epsilon)},
                        {"first_order", write_number(s.first_order)},
                        {"second_order", write_number(s.second_order)},
                        {"post_entry", configuration_to_json(s.post_entry, false)}};
    }
    out["witness"] = wj;
  }
  if (v.configuration) out["configuration"] = configuration_to_json(*v.configuration, true);
  (void)game;
  return out;
}

json validation_to_json(const ValidationReport& r, const Configuration& config) {
  json out{{"valid", r.valid}, {"errors", r.errors}};
  json vs = json::array();
  for (const auto& v : r.violations)
    vs.push_back({{"type", config.type(v.i).label},
                  {"against", config.type(v.j).label},
                  {"condition", v.condition},
                  {"magnitude", write_number(v.magnitude)}});
  out["violations"] = vs;
  return out;
}

json diagnostics_to_json(const GameDiagnostics& d, const SymmetricGame& game) {
  const auto& a = game.actions();
  json profiles = json::array();
  for (auto [x, y] : d.efficiency.efficient_profiles) profiles.push_back({a[x], a[y]});
  json sym = json::array(), pun = json::array();
  for (auto x : d.efficiency.symmetric_efficient_actions) sym.push_back(a[x]);
  for (auto x : d.punishment) pun.push_back(a[x]);
  json gains = json::object();
  for (size_t i = 0; i < a.size(); ++i) gains[a[i]] = write_number(d.deviation_gains[i]);
  return json{{"efficient_payoff", write_number(d.efficiency.efficient_payoff)},
              {"efficient_profiles", profiles},
              {"symmetric_efficient_actions", sym},
              {"punishment_actions", pun},
              {"generic", d.generic},
              {"pure_maxmin", write_number(d.bounds.maxmin)},
              {"pure_maxmin_action", a[d.bounds.maxmin_action]},
              {"pure_minmax", write_number(d.bounds.minmax)},
              {"pure_minmax_action", a[d.bounds.minmax_action]},
              {"deviation_gains", gains}};
}

json probe_to_json(const ProbeReport& p) {
  json runs = json::array();
  for (const auto& r : p.runs)
    runs.push_back({{"radius", r.radius},
                    {"direction", r.direction},
                    {"max_excursion", r.max_excursion},
                    {"terminal_distance", r.terminal_distance},
                    {"escaped", r.escaped}});
  json out{{"classification", p.escaped ? "escape" : "no-escape within horizon"},
           {"rest_point_spread", p.rest_point_spread},
           {"runs", runs}};
  if (p.escaped) out["escape_direction"] = p.escape_direction;
  return out;
}

namespace {

void render(const json& j, const std::string& indent, std::ostringstream& os) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = j.is_object() ? it.key() : "-";
    const json& v = it.value();
    if (v.is_structured() && !v.empty() &&
        !(v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_primitive(); }))) {
      os << indent << key << ":\n";
      render(v, indent + "  ", os);
    } else if (v.is_string()) {
      os << indent << key << ": " << v.get<std::string>() << "\n";
    } else {
      os << indent << key << ": " << v.dump() << "\n";
    }
  }
}

}  // namespace

std::string render_text(const json& report) {
  std::ostringstream os;
  render(report, "", os);
  return os.str();
}

}  // namespace coevo
