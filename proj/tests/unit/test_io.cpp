#include <doctest.h>

#include "coevo/io.hpp"

using namespace coevo;

namespace {

const std::filesystem::path data = COEVO_DATA_DIR;

}  // namespace

TEST_CASE("text game format") {
  auto g = parse_game("# prisoner's dilemma\nactions: C D\n3 0\n\n4 1/2\n");
  CHECK(g.actions() == std::vector<std::string>{"C", "D"});
  CHECK(g(1, 1) == rat(1, 2));
  CHECK(load_game(data / "pd.game") == games::prisoners_dilemma(3, 0, 4, 1));
}

TEST_CASE("parse errors carry a location") {
  try {
    load_game(data / "malformed.game");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("row 2 (action D) has 3 entries, expected 2") !=
          std::string::npos);
  }
  CHECK_THROWS_AS(parse_game("actions: a b\n1 x\n2 3\n"), ParseError);
  CHECK_THROWS_AS(parse_game("{\"actions\": [\"a\"], \"payoff\": [[1]"), ParseError);
  CHECK_THROWS_AS(parse_game("1 2\n3 4\n"), ParseError);
}

TEST_CASE("float mode rounds literals through doubles") {
  auto exact = parse_game("actions: a b\n0.1 0\n0 1\n");
  auto loose = parse_game("actions: a b\n0.1 0\n0 1\n", "<input>", NumberMode::floating);
  CHECK(exact(0, 0) == rat(1, 10));
  CHECK(loose == exact);
  CHECK(to_double(loose(0, 0)) == 0.1);
  CHECK(to_double(rat(1, 10)) == 0.1);
  CHECK(to_double(rat(-2, 3)) == -2.0 / 3);
}

TEST_CASE("game and environment round trip") {
  auto g = load_game(data / "coordination3.game");
  CHECK(parse_game(game_to_json(g).dump()) == g);
  for (const char* name : {"pd_env.json", "rps_env.json", "hawkdove_env.json"}) {
    Environment env = load_environment(data / name);
    Environment back = environment_from_json(environment_to_json(env));
    CHECK(back.game == env.game);
    CHECK(back.cost == env.cost);
    CHECK(back.q == env.q);
    CHECK(environment_hash(back) == environment_hash(env));
  }
}

TEST_CASE("configuration round trip") {
  for (auto [name, env_name] : {std::pair{"coordination_config.json", "coordination_env.json"},
                                std::pair{"pd_cooperate_config.json", "pd_env.json"}}) {
    auto c = load_configuration(data / name, load_environment(data / env_name));
    json j = configuration_to_json(c);
    auto back = configuration_from_json(j, std::nullopt);
    CHECK(configuration_to_json(back).dump() == j.dump());
    CHECK(validate(back).valid == validate(c).valid);
  }
}

TEST_CASE("configuration validation errors") {
  json j = json::parse(R"({
    "environment": {"game": {"actions": ["a", "b"], "payoff": [[1, 0], [0, 1]]}},
    "types": [{"label": "x", "level": 1, "frequency": 1, "utility": "materialistic"}],
    "policy": {"nash": [{"type": "x", "against": "y", "play": "a"}]}
  })");
  CHECK_THROWS(configuration_from_json(j, std::nullopt));
  j["policy"]["nash"][0]["against"] = "x";
  j["label_universe"] = json::array({"z"});
  CHECK_THROWS(configuration_from_json(j, std::nullopt));
  j.erase("label_universe");
  auto c = configuration_from_json(j, std::nullopt);
  CHECK(c.policy.nash.at({0, 0}) == MixedStrategy::pure(2, 0));
  CHECK(c.policy.auto_nash.empty());
}

TEST_CASE("auto-filled entries are flagged in output") {
  json j = json::parse(R"({
    "environment": {"game": {"actions": ["a", "b"], "payoff": [[1, 0], [0, 1]]}},
    "types": [{"label": "x", "level": 1, "frequency": 1, "utility": "materialistic"}]
  })");
  auto c = configuration_from_json(j, std::nullopt);
  CHECK(c.policy.auto_nash.size() == 1);
  CHECK(configuration_to_json(c).dump().find("\"auto\":true") != std::string::npos);
}

TEST_CASE("text rendering is derived from the JSON report") {
  auto env = load_environment(data / "pd_env.json");
  json report;
  report["verdict"] = verdict_to_json(certify_pure_nsc(env, 0), env.game);
  std::string text = render_text(report);
  CHECK(text.find("refuted") != std::string::npos);
  CHECK(text.find("deviation-gain-within-effective-cost") != std::string::npos);
}
