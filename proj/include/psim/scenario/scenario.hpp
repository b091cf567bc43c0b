#ifndef PSIM_SCENARIO_SCENARIO_HPP
#define PSIM_SCENARIO_SCENARIO_HPP

#include "psim/poseidon/detection.hpp"
#include "psim/sim/link.hpp"
#include "psim/traffic/attacker.hpp"
#include "psim/traffic/consumer.hpp"
#include "psim/traffic/producer.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace psim::scenario {

enum class Role
{
  Router,
  Consumer,
  Producer,
  Attacker,
};

std::string_view
toString(Role role);

struct NodeSpec
{
  NodeId id;
  Role role = Role::Router;
};

struct LinkSpec
{
  NodeId a;
  FaceId aFace{0};
  NodeId b;
  FaceId bFace{0};
  sim::LinkParams params;
};

struct RouteSpec
{
  /// nullopt is the default route ("/" in files)
  std::optional<ndn::Name> prefix;
  FaceId face{0};
};

struct Topology
{
  std::vector<NodeSpec> nodes;
  std::vector<LinkSpec> links;
  std::map<NodeId, std::vector<RouteSpec>> fib;

  const NodeSpec*
  findNode(const NodeId& id) const;
};

struct ProducerEntry
{
  NodeId node;
  traffic::ProducerSpec spec;
};

struct ConsumerEntry
{
  NodeId node;
  traffic::ConsumerSchedule schedule;
};

struct AttackerEntry
{
  NodeId node;
  traffic::AttackerSchedule schedule;
};

struct Scenario
{
  Topology topology;
  std::vector<ProducerEntry> producers;
  std::vector<ConsumerEntry> consumers;
  std::vector<AttackerEntry> attackers;

  poseidon::PoseidonConfig poseidon;
  poseidon::Mode mode = poseidon::Mode::Off;
  /// per-router mode, for ablations
  std::map<NodeId, poseidon::Mode> modeOverrides;

  std::size_t pitCapacityBytes = 120 * 1024;
  Time interestLifetime = fromMs(4000);
  std::size_t csCapacityBytes = 0;

  std::uint64_t seed = 1;
  Time horizon = fromMs(30000);
  Time sampleInterval = fromMs(100);

  poseidon::Mode
  modeOf(const NodeId& router) const;
};

/// Malformed JSON or a field of the wrong type. `line` is set for syntax errors.
class ParseError : public std::runtime_error
{
public:
  ParseError(const std::string& what, std::optional<std::size_t> line, std::string field);

  std::optional<std::size_t> line;
  std::string field;
};

/// Well-formed input that violates a scenario invariant.
class ValidationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Reads a scenario file. A string-valued "topology" is a path relative to
/// the scenario file; an object is an inline topology.
Scenario
loadScenario(const std::filesystem::path& path);

/// \p baseDir resolves a topology path, if any.
Scenario
parseScenario(const nlohmann::json& j, const std::filesystem::path& baseDir = {});

Scenario
parseScenarioText(std::string_view text, const std::filesystem::path& baseDir = {});

Topology
parseTopology(const nlohmann::json& j);

/// Self-contained form with an inline topology; parseScenario(toJson(s))
/// yields an equal scenario.
nlohmann::json
toJson(const Scenario& scenario);

nlohmann::json
toJson(const Topology& topology);

/// Throws ValidationError. Besides structural checks, walks the FIB from
/// every consumer and attacker and requires it to reach the producer of its
/// target prefix without loops.
void
validate(const Scenario& scenario);

/// Routers visited by an interest for \p target injected at \p from (a
/// consumer or attacker), in order, ending at the router that hands it to a
/// producer. Throws ValidationError when the walk fails.
std::vector<NodeId>
routerPath(const Scenario& scenario, const NodeId& from, const ndn::Name& target);

} // namespace psim::scenario

#endif // PSIM_SCENARIO_SCENARIO_HPP
