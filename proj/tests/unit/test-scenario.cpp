#include "line-scenario.hpp"
#include "psim/scenario/scenario.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace psim;
using namespace psim::scenario;

namespace {

const std::filesystem::path DIR = PSIM_SCENARIO_DIR;

nlohmann::json
lineJson()
{
  return toJson(test::lineScenario(true));
}

} // namespace

TEST_CASE("bundled baseline: 16 consumers, 2 producers, no attackers")
{
  auto s = loadScenario(DIR / "baseline.json");
  CHECK(s.consumers.size() == 16);
  CHECK(s.producers.size() == 2);
  CHECK(s.attackers.empty());
  CHECK(s.pitCapacityBytes == 122880);
  CHECK(s.interestLifetime == fromMs(4000));
  CHECK((s.mode == poseidon::Mode::Off));

  std::size_t routers = 0;
  for (const auto& n : s.topology.nodes) {
    routers += n.role == Role::Router;
  }
  CHECK(routers == 30);

  // consumers split evenly across the two producers
  std::map<std::string, int> perPrefix;
  for (const auto& c : s.consumers) {
    ++perPrefix[c.schedule.targetPrefix.toUri()];
  }
  CHECK(perPrefix.size() == 2);
  for (const auto& [prefix, n] : perPrefix) {
    CHECK(n == 8);
  }
}

TEST_CASE("bundled attack: three attackers at P0's namespace")
{
  auto s = loadScenario(DIR / "attack.json");
  REQUIRE(s.attackers.size() == 3);
  const auto* p0 = &s.producers[0];
  for (const auto& p : s.producers) {
    if (p.node == "P0") {
      p0 = &p;
    }
  }
  REQUIRE(p0->node == "P0");
  for (const auto& a : s.attackers) {
    CHECK(a.schedule.targetPrefix == p0->spec.ns);
    CHECK((a.schedule.strategy == traffic::AttackStrategy::NonExistent));
    CHECK(a.schedule.spacing == fromMs(1.337));
    auto path = routerPath(s, a.node, a.schedule.targetPrefix);
    REQUIRE_FALSE(path.empty());
    CHECK(path.back() == "R3");
  }
}

TEST_CASE("serialized scenarios round trip")
{
  for (const auto* file : {"baseline.json", "attack.json"}) {
    auto s = loadScenario(DIR / file);
    auto j = toJson(s);
    auto again = parseScenario(j);
    CHECK(toJson(again) == j);
  }
  auto j = lineJson();
  CHECK(toJson(parseScenario(j)) == j);
}

TEST_CASE("dangling link endpoint")
{
  auto j = lineJson();
  j["topology"]["links"][0]["b"] = "R9";
  CHECK_THROWS_AS(parseScenario(j), ValidationError);
}

TEST_CASE("structural validation")
{
  auto j = lineJson();
  j["topology"]["links"][1]["b_iface"] = 0; // R1 interface 0 used twice
  CHECK_THROWS_AS(parseScenario(j), ValidationError);

  j = lineJson();
  j["topology"]["fib"]["R1"][0]["iface"] = 7;
  CHECK_THROWS_AS(parseScenario(j), ValidationError);

  j = lineJson();
  j["topology"]["fib"]["R2"] = nlohmann::json::array();
  CHECK_THROWS_WITH_AS(parseScenario(j), doctest::Contains("no route"), ValidationError);

  j = lineJson();
  j["consumers"][0]["node"] = "R1";
  CHECK_THROWS_AS(parseScenario(j), ValidationError);

  j = lineJson();
  j["pit_capacity_bytes"] = 0;
  CHECK_THROWS_AS(parseScenario(j), ValidationError);

  j = lineJson();
  j["poseidon"]["scale"] = 1;
  CHECK_THROWS_AS(parseScenario(j), ValidationError);

  j = lineJson();
  j["poseidon"]["overrides"] = {{"C0", "local"}};
  CHECK_THROWS_AS(parseScenario(j), ValidationError);
}

TEST_CASE("forwarding loops are rejected")
{
  auto j = lineJson();
  j["topology"]["fib"]["R2"] = {{{"prefix", "/p"}, {"iface", 0}}};
  CHECK_THROWS_WITH_AS(parseScenario(j), doctest::Contains("loop"), ValidationError);
}

TEST_CASE("parse errors carry line or field")
{
  try {
    parseScenarioText("{\n\"seed\": 1,\n oops\n}");
    FAIL("expected ParseError");
  }
  catch (const ParseError& e) {
    REQUIRE(e.line);
    CHECK(*e.line == 3);
  }

  auto j = lineJson();
  j["consumers"][0]["steady_spacing_ms"] = "fast";
  try {
    parseScenario(j);
    FAIL("expected ParseError");
  }
  catch (const ParseError& e) {
    CHECK(e.field == "consumers[0].steady_spacing_ms");
  }

  j = lineJson();
  j["topology"]["nodes"][0].erase("role");
  CHECK_THROWS_AS(parseScenario(j), ParseError);

  j = lineJson();
  j["attackers"][0]["strategy"] = "smart";
  CHECK_THROWS_AS(parseScenario(j), ParseError);
}

TEST_CASE("topology given as a relative path")
{
  auto tmp = std::filesystem::temp_directory_path() / "psim-scenario-test";
  std::filesystem::create_directories(tmp);
  auto j = lineJson();
  std::ofstream(tmp / "topo.json") << j["topology"].dump();
  j["topology"] = "topo.json";
  std::ofstream(tmp / "s.json") << j.dump();
  auto s = loadScenario(tmp / "s.json");
  CHECK(s.topology.nodes.size() == 5);
  CHECK_THROWS(loadScenario(tmp / "missing.json"));
  std::filesystem::remove_all(tmp);
}

TEST_CASE("router path and mode overrides")
{
  auto s = test::lineScenario(true, "local");
  CHECK(routerPath(s, "C0", ndn::Name::parse("/p")) == std::vector<NodeId>{"R1", "R2"});
  CHECK_THROWS_AS(routerPath(s, "C9", ndn::Name::parse("/p")), ValidationError);
  s.modeOverrides["R2"] = poseidon::Mode::Off;
  CHECK((s.modeOf("R1") == poseidon::Mode::Local));
  CHECK((s.modeOf("R2") == poseidon::Mode::Off));
}
