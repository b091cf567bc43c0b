#ifndef PSIM_SIM_WORLD_HPP
#define PSIM_SIM_WORLD_HPP

#include "psim/fw/forwarder.hpp"
#include "psim/metrics/metrics.hpp"
#include "psim/poseidon/guard.hpp"
#include "psim/scenario/scenario.hpp"
#include "psim/sim/event-queue.hpp"

#include <map>
#include <memory>
#include <random>
#include <variant>

namespace psim::sim {

struct MsgArrival
{
  std::size_t node;
  FaceId face;
  ndn::Message msg;
};

struct DetectionTick
{
  std::size_t node;
};

struct GeneratorTick
{
  std::size_t node;
};

struct ProducerSend
{
  std::size_t node;
  ndn::ContentObject content;
};

struct RetxTimer
{
  std::size_t node;
  ndn::Name name;
};

struct SampleTick
{
};

using EventPayload =
  std::variant<MsgArrival, DetectionTick, GeneratorTick, ProducerSend, RetxTimer, SampleTick>;

/// Counters of one router, cumulative from t = 0.
struct RouterCounters
{
  std::uint64_t contentsForwarded = 0;
  std::uint64_t dropsPoseidon = 0;
  std::uint64_t dropsPitFull = 0;
  std::uint64_t dropsDup = 0;
  std::uint64_t dropsNoRoute = 0;
  std::uint64_t collapsed = 0;
  std::uint64_t cacheHits = 0;
  std::uint64_t alertsSent = 0;
  std::uint64_t alertsApplied = 0;
  std::uint64_t alertsRejected = 0;
  std::optional<Time> firstPoseidonDrop;
  std::size_t peakPitBytes = 0;
};

/**
 * \brief A complete simulated network built from a Scenario.
 *
 * Single-threaded and self-contained: all randomness comes from one
 * generator seeded with the scenario seed, so equal scenarios give equal
 * event traces. Independent worlds may run on different threads.
 */
class World
{
public:
  explicit
  World(const scenario::Scenario& scenario);

  ~World();

  World(const World&) = delete;
  World&
  operator=(const World&) = delete;

  /// Processes every event up to and including \p until (the scenario
  /// horizon when unset) and returns the collected metrics. Call once.
  metrics::MetricsBundle
  run(std::optional<Time> until = std::nullopt);

  const std::vector<NodeId>&
  routers() const noexcept
  {
    return m_routerIds;
  }

  const fw::Forwarder&
  forwarder(const NodeId& router) const;

  const poseidon::Guard&
  guard(const NodeId& router) const;

  const RouterCounters&
  counters(const NodeId& router) const;

  /// Hash over every processed event (time, sequence, kind, node).
  std::uint64_t
  traceDigest() const noexcept
  {
    return m_digest;
  }

  std::uint64_t
  eventsProcessed() const noexcept
  {
    return m_events;
  }

  /// Records every admission decision of \p router into \p log.
  void
  setAdmissionLog(const NodeId& router, std::vector<poseidon::AdmissionRecord>* log);

private:
  struct Port;
  struct Node;

  std::size_t
  indexOf(const NodeId& id) const;

  void
  dispatch(EventQueue<EventPayload>::Event& ev);

  void
  onArrival(MsgArrival& a);

  void
  routerInterest(Node& node, FaceId face, const ndn::Interest& interest);

  void
  routerContent(Node& node, FaceId face, const ndn::ContentObject& content);

  void
  onDetectionTick(Node& node);

  void
  onGeneratorTick(Node& node);

  void
  onRetx(Node& node, const ndn::Name& name);

  void
  sample();

  /// Puts \p msg on the link behind \p face. Returns false on a tail drop.
  bool
  send(Node& node, FaceId face, ndn::Message msg);

  void
  sendInterest(Node& node, FaceId face, ndn::Interest interest);

  metrics::MetricsBundle
  collect();

private:
  scenario::Scenario m_scenario;
  std::mt19937_64 m_rng;
  ndn::TrustRegistry m_registry;
  EventQueue<EventPayload> m_queue;
  std::vector<std::unique_ptr<Node>> m_nodes;
  std::map<NodeId, std::size_t> m_index;
  std::vector<NodeId> m_routerIds;
  std::vector<Link> m_links;

  metrics::MetricsBundle m_bundle;
  std::uint64_t m_digest = 0xcbf29ce484222325ULL;
  std::uint64_t m_events = 0;
  bool m_ran = false;
};

/// Builds a world for \p scenario and runs it.
metrics::MetricsBundle
runScenario(const scenario::Scenario& scenario, std::optional<Time> until = std::nullopt);

} // namespace psim::sim

#endif // PSIM_SIM_WORLD_HPP
