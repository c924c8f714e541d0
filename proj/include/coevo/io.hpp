#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "coevo/constructions.hpp"
#include "coevo/dynamics.hpp"
#include "coevo/population.hpp"
#include "coevo/stability.hpp"

namespace coevo {

using json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, size_t line, size_t column, const std::string& message);
  size_t line() const { return line_; }
  size_t column() const { return column_; }

 private:
  size_t line_, column_;
};

/// Rational literal in the given mode: float mode rounds through the nearest double.
Rational read_number(const std::string& text, NumberMode mode);
Rational read_number(const json& j, NumberMode mode);
json write_number(const Rational& r);

/// Either a JSON object {"actions": [...], "payoff": [[...]]} or text:
///   actions: C D
///   3 0
///   4 1
/// Blank lines and lines starting with '#' are ignored.
SymmetricGame parse_game(const std::string& content, const std::string& source = "<input>",
                         NumberMode mode = NumberMode::exact);
SymmetricGame load_game(const std::filesystem::path& path, NumberMode mode = NumberMode::exact);
json game_to_json(const SymmetricGame& game);

/// {"game": path-or-object, "mode": "rational"|"float",
///  "cost": {"explicit": [...], "increment": x} | {"linear": slope},
///  "deception": {"fallback": q, "entries": [{"deceiver": n, "deceived": n′, "q": x}]}}
/// Relative game paths resolve against `base_dir`. A present `mode_override`
/// wins over the file's mode.
Environment environment_from_json(const json& j, const std::filesystem::path& base_dir = {},
                                  const std::optional<NumberMode>& mode_override = std::nullopt);
Environment load_environment(const std::filesystem::path& path,
                             const std::optional<NumberMode>& mode_override = std::nullopt);
json environment_to_json(const Environment& env);

/// {"types": [{"label", "level", "frequency",
///             "utility": [[...]] | "materialistic" | {"branches": {...}, "otherwise": ...}}],
///  "policy": {"nash": [{"type", "against", "play"}], "deception": [...]},
///  "label_universe": [...]}
/// "play" is an action label or a weight list. Missing entries are
/// auto-completed and flagged. An embedded "environment" is used unless
/// `env` is supplied.
Configuration configuration_from_json(const json& j, const std::optional<Environment>& env,
                                      const std::filesystem::path& base_dir = {});
Configuration load_configuration(const std::filesystem::path& path,
                                 const std::optional<Environment>& env = std::nullopt);
json configuration_to_json(const Configuration& config, bool embed_environment = true);
/// Declared label universe of a configuration file, if any.
std::optional<std::vector<std::string>> label_universe(const json& config_json);

struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  std::string environment_hash;
  std::map<std::string, std::string> options;
  std::uint64_t seed = 1;
};

/// FNV-1a of the canonical environment JSON, as 16 hex digits.
std::string environment_hash(const Environment& env);
json manifest_to_json(const RunManifest& m);

json verdict_to_json(const StabilityVerdict& v, const SymmetricGame& game);
json validation_to_json(const ValidationReport& r, const Configuration& config);
json diagnostics_to_json(const GameDiagnostics& d, const SymmetricGame& game);
json probe_to_json(const ProbeReport& p);

/// Human-readable rendering of a machine-readable report.
std::string render_text(const json& report);

}  // namespace coevo
