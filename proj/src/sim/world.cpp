#include "psim/sim/world.hpp"

#include "psim/poseidon/alert.hpp"

#include <spdlog/spdlog.h>

namespace psim::sim {

using scenario::Role;

struct World::Port
{
  std::size_t link;
  int direction;
  std::size_t peer;
  FaceId peerFace;
};

struct World::Node
{
  NodeId id;
  Role role;
  std::map<FaceId, Port> ports;

  // routers
  std::unique_ptr<fw::Forwarder> forwarder;
  std::unique_ptr<poseidon::Guard> guard;
  RouterCounters counters;

  // end hosts
  std::unique_ptr<traffic::Consumer> consumer;
  std::unique_ptr<traffic::Attacker> attacker;
  std::unique_ptr<traffic::Producer> producer;

  FaceId
  uplink() const
  {
    return ports.begin()->first;
  }
};

namespace {

void
mix(std::uint64_t& h, std::uint64_t v)
{
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 0x100000001b3ULL;
  }
}

} // namespace

World::World(const scenario::Scenario& s)
  : m_scenario(s)
  , m_rng(s.seed)
{
  const auto& topo = m_scenario.topology;
  for (const auto& spec : topo.nodes) {
    auto node = std::make_unique<Node>();
    node->id = spec.id;
    node->role = spec.role;
    m_index.emplace(spec.id, m_nodes.size());
    m_nodes.push_back(std::move(node));
    if (spec.role == Role::Router) {
      m_routerIds.push_back(spec.id);
    }
  }

  for (const auto& l : topo.links) {
    auto a = indexOf(l.a);
    auto b = indexOf(l.b);
    auto idx = m_links.size();
    m_links.emplace_back(l.params);
    m_nodes[a]->ports.emplace(l.aFace, Port{idx, 0, b, l.bFace});
    m_nodes[b]->ports.emplace(l.bFace, Port{idx, 1, a, l.aFace});
  }

  // Keys first, in node order, so that they do not depend on traffic.
  for (const auto& node : m_nodes) {
    if (node->role == Role::Router || node->role == Role::Producer) {
      m_registry.registerNode(node->id, m_rng());
    }
  }

  fw::ForwarderConfig fwConfig{m_scenario.pitCapacityBytes, m_scenario.interestLifetime,
                               m_scenario.csCapacityBytes};
  for (auto& node : m_nodes) {
    if (node->role != Role::Router) {
      continue;
    }
    node->forwarder = std::make_unique<fw::Forwarder>(fwConfig);
    if (auto it = topo.fib.find(node->id); it != topo.fib.end()) {
      for (const auto& r : it->second) {
        if (r.prefix) {
          node->forwarder->fib().addRoute(*r.prefix, r.face);
        }
        else {
          node->forwarder->fib().setDefaultRoute(r.face);
        }
      }
    }
    std::vector<FaceId> faces;
    for (const auto& [face, port] : node->ports) {
      faces.push_back(face);
    }
    node->guard = std::make_unique<poseidon::Guard>(node->id, m_scenario.modeOf(node->id),
                                                    m_scenario.poseidon,
                                                    m_scenario.pitCapacityBytes, faces);
    Node* raw = node.get();
    node->forwarder->pit().setExpiryCallback([this, raw](const fw::PitEntry& entry) {
      if (raw->guard->enabled()) {
        raw->guard->recordExpired(entry, m_queue.now());
      }
    });
  }

  for (const auto& p : m_scenario.producers) {
    auto& node = *m_nodes[indexOf(p.node)];
    node.producer = std::make_unique<traffic::Producer>(p.node, p.spec);
  }
  for (const auto& c : m_scenario.consumers) {
    auto& node = *m_nodes[indexOf(c.node)];
    auto session = m_rng();
    node.consumer = std::make_unique<traffic::Consumer>(c.schedule, session);
    for (auto& other : m_nodes) {
      if (other->producer && other->producer->spec().ns.isPrefixOf(c.schedule.targetPrefix)) {
        other->producer->registerSession(session);
      }
    }
  }
  for (const auto& a : m_scenario.attackers) {
    auto& node = *m_nodes[indexOf(a.node)];
    node.attacker = std::make_unique<traffic::Attacker>(a.schedule);
  }

  m_bundle.routers = m_routerIds;
  m_bundle.horizonMs = toMs(m_scenario.horizon);
}

World::~World() = default;

std::size_t
World::indexOf(const NodeId& id) const
{
  auto it = m_index.find(id);
  if (it == m_index.end()) {
    throw std::out_of_range("unknown node " + id);
  }
  return it->second;
}

const fw::Forwarder&
World::forwarder(const NodeId& router) const
{
  const auto& node = *m_nodes.at(indexOf(router));
  if (!node.forwarder) {
    throw std::invalid_argument(router + " is not a router");
  }
  return *node.forwarder;
}

const poseidon::Guard&
World::guard(const NodeId& router) const
{
  const auto& node = *m_nodes.at(indexOf(router));
  if (!node.guard) {
    throw std::invalid_argument(router + " is not a router");
  }
  return *node.guard;
}

const RouterCounters&
World::counters(const NodeId& router) const
{
  const auto& node = *m_nodes.at(indexOf(router));
  if (!node.guard) {
    throw std::invalid_argument(router + " is not a router");
  }
  return node.counters;
}

void
World::setAdmissionLog(const NodeId& router, std::vector<poseidon::AdmissionRecord>* log)
{
  auto& node = *m_nodes.at(indexOf(router));
  if (!node.guard) {
    throw std::invalid_argument(router + " is not a router");
  }
  node.guard->setAdmissionLog(log);
}

metrics::MetricsBundle
World::run(std::optional<Time> until)
{
  if (m_ran) {
    throw std::logic_error("World::run called twice");
  }
  m_ran = true;
  const Time end = until.value_or(m_scenario.horizon);
  m_bundle.horizonMs = toMs(end);
  if (m_nodes.empty()) {
    return m_bundle;
  }

  m_queue.schedule(Time{0}, SampleTick{});
  for (std::size_t i = 0; i < m_nodes.size(); ++i) {
    const auto& node = *m_nodes[i];
    if (node.role == Role::Router) {
      m_queue.schedule(m_scenario.poseidon.detectionInterval, DetectionTick{i});
    }
    std::optional<Time> first;
    if (node.consumer) {
      first = node.consumer->nextEmission();
    }
    else if (node.attacker) {
      first = node.attacker->nextEmission();
    }
    if (first) {
      m_queue.schedule(*first, GeneratorTick{i});
    }
  }

  while (!m_queue.empty() && *m_queue.nextTime() <= end) {
    auto ev = m_queue.pop();
    dispatch(ev);
  }
  return collect();
}

void
World::dispatch(EventQueue<EventPayload>::Event& ev)
{
  ++m_events;
  mix(m_digest, static_cast<std::uint64_t>(ev.time.count()));
  mix(m_digest, ev.seq);
  mix(m_digest, ev.payload.index());

  std::visit(
    [this](auto& p) {
      using T = std::decay_t<decltype(p)>;
      if constexpr (std::is_same_v<T, MsgArrival>) {
        mix(m_digest, p.node);
        onArrival(p);
      }
      else if constexpr (std::is_same_v<T, DetectionTick>) {
        onDetectionTick(*m_nodes[p.node]);
      }
      else if constexpr (std::is_same_v<T, GeneratorTick>) {
        onGeneratorTick(*m_nodes[p.node]);
      }
      else if constexpr (std::is_same_v<T, ProducerSend>) {
        auto& node = *m_nodes[p.node];
        send(node, node.uplink(), std::move(p.content));
      }
      else if constexpr (std::is_same_v<T, RetxTimer>) {
        onRetx(*m_nodes[p.node], p.name);
      }
      else {
        sample();
      }
    },
    ev.payload);
}

bool
World::send(Node& node, FaceId face, ndn::Message msg)
{
  const auto& port = node.ports.at(face);
  auto arrival = m_links[port.link].transmit(port.direction, ndn::wireSize(msg), m_queue.now());
  if (!arrival) {
    return false;
  }
  m_queue.schedule(*arrival, MsgArrival{port.peer, port.peerFace, std::move(msg)});
  return true;
}

void
World::sendInterest(Node& node, FaceId face, ndn::Interest interest)
{
  if (!send(node, face, std::move(interest))) {
    ++m_bundle.ledger.dropLink;
  }
}

void
World::onArrival(MsgArrival& a)
{
  auto& node = *m_nodes[a.node];
  if (auto* interest = std::get_if<ndn::Interest>(&a.msg)) {
    switch (node.role) {
      case Role::Router:
        routerInterest(node, a.face, *interest);
        break;
      case Role::Producer: {
        if (!node.producer || !node.producer->spec().ns.isPrefixOf(interest->name)) {
          ++m_bundle.ledger.dropMisrouted;
          break;
        }
        ++m_bundle.ledger.delivered;
        if (auto reply = node.producer->onInterest(*interest, m_registry)) {
          m_queue.schedule(m_queue.now() + reply->delay,
                           ProducerSend{a.node, std::move(reply->content)});
        }
        break;
      }
      default:
        ++m_bundle.ledger.dropMisrouted;
        break;
    }
    return;
  }

  auto& content = std::get<ndn::ContentObject>(a.msg);
  if (node.role == Role::Router) {
    routerContent(node, a.face, content);
  }
  else if (node.consumer && !poseidon::isAlertName(content.name)) {
    node.consumer->onContent(content);
  }
}

void
World::routerInterest(Node& node, FaceId face, const ndn::Interest& interest)
{
  const Time now = m_queue.now();
  auto& fwd = *node.forwarder;
  auto& c = node.counters;
  auto& ledger = m_bundle.ledger;
  fwd.expirePit(now);

  if (node.guard->enabled()) {
    auto adm = node.guard->onInterest(face, fwd.pit(), now);
    if (!adm.admitted) {
      ++c.dropsPoseidon;
      ++ledger.dropPoseidon;
      if (!c.firstPoseidonDrop) {
        c.firstPoseidonDrop = now;
        spdlog::info("{} first poseidon drop at {} ms on face {}", node.id, toMs(now),
                     toUnderlying(face));
      }
      if (adm.alertSent) {
        auto alert = node.guard->buildAlert(face, now, fwd.pit(), m_registry);
        ++c.alertsSent;
        spdlog::debug("{} alert {} at {} ms", node.id, alert.carrier.name.toUri(), toMs(now));
        send(node, face, std::move(alert.carrier));
      }
      return;
    }
  }

  auto decision = fwd.onInterest(face, interest, now);
  std::visit(
    [&](auto& d) {
      using T = std::decay_t<decltype(d)>;
      if constexpr (std::is_same_v<T, fw::ReplyFromCache>) {
        ++c.cacheHits;
        ++ledger.cacheHits;
        if (send(node, face, std::move(d.content))) {
          ++c.contentsForwarded;
          node.guard->onContentSent(face);
        }
      }
      else if constexpr (std::is_same_v<T, fw::Collapsed>) {
        ++c.collapsed;
        ++ledger.collapsed;
      }
      else if constexpr (std::is_same_v<T, fw::DroppedDuplicate>) {
        ++c.dropsDup;
        ++ledger.dropDup;
      }
      else if constexpr (std::is_same_v<T, fw::Forward>) {
        c.peakPitBytes = std::max(c.peakPitBytes, fwd.pit().usedBytes());
        sendInterest(node, d.outFace, interest);
      }
      else if constexpr (std::is_same_v<T, fw::DroppedPitFull>) {
        ++c.dropsPitFull;
        ++ledger.dropPitFull;
      }
      else {
        ++c.dropsNoRoute;
        ++ledger.dropNoRoute;
      }
    },
    decision);
  c.peakPitBytes = std::max(c.peakPitBytes, fwd.pit().usedBytes());
}

void
World::routerContent(Node& node, FaceId face, const ndn::ContentObject& content)
{
  const Time now = m_queue.now();
  auto& fwd = *node.forwarder;
  auto& c = node.counters;

  if (poseidon::isAlertName(content.name)) {
    if (node.guard->mode() != poseidon::Mode::Pushback) {
      return;
    }
    fwd.expirePit(now);
    auto outcome = node.guard->onAlert(face, content, now, fwd.pit(), m_registry);
    if (outcome.verdict == poseidon::AlertVerdict::Applied) {
      ++c.alertsApplied;
      spdlog::debug("{} applied alert {} on {} faces", node.id, content.name.toUri(),
                    outcome.decreased.size());
    }
    else {
      ++c.alertsRejected;
      spdlog::debug("{} rejected alert {}: {}", node.id, content.name.toUri(),
                    poseidon::toString(outcome.verdict));
    }
    return;
  }

  fwd.expirePit(now);
  for (auto& out : fwd.onContent(face, content, now)) {
    if (send(node, out.face, std::move(out.content))) {
      ++c.contentsForwarded;
      node.guard->onContentSent(out.face);
    }
  }
}

void
World::onDetectionTick(Node& node)
{
  const Time now = m_queue.now();
  node.forwarder->expirePit(now);
  if (node.guard->enabled()) {
    node.guard->onTick(now, node.forwarder->pit());
  }
  m_queue.schedule(now + m_scenario.poseidon.detectionInterval,
                   DetectionTick{indexOf(node.id)});
}

void
World::onGeneratorTick(Node& node)
{
  const Time now = m_queue.now();
  std::optional<ndn::Interest> interest;
  std::optional<Time> next;
  if (node.consumer) {
    interest = node.consumer->emit(now, m_rng);
    next = node.consumer->nextEmission();
  }
  else if (node.attacker) {
    interest = node.attacker->emit(now, m_rng);
    next = node.attacker->nextEmission();
  }
  if (interest) {
    ++m_bundle.ledger.emitted;
    auto retx = node.consumer ? node.consumer->schedule().retxTimeout : std::nullopt;
    if (retx) {
      m_queue.schedule(now + *retx, RetxTimer{indexOf(node.id), interest->name});
    }
    sendInterest(node, node.uplink(), std::move(*interest));
  }
  if (next) {
    m_queue.schedule(*next, GeneratorTick{indexOf(node.id)});
  }
}

void
World::onRetx(Node& node, const ndn::Name& name)
{
  if (auto interest = node.consumer->retransmit(name, m_queue.now(), m_rng)) {
    ++m_bundle.ledger.emitted;
    sendInterest(node, node.uplink(), std::move(*interest));
  }
}

void
World::sample()
{
  const Time now = m_queue.now();
  for (auto& node : m_nodes) {
    if (node->role != Role::Router) {
      continue;
    }
    node->forwarder->expirePit(now);
    const auto& c = node->counters;
    m_bundle.records.push_back(metrics::MetricsRecord{
      toMs(now), node->id, static_cast<double>(node->forwarder->pit().usedBytes()),
      static_cast<double>(c.contentsForwarded), static_cast<double>(c.dropsPoseidon),
      static_cast<double>(c.dropsPitFull), static_cast<double>(c.dropsDup),
      static_cast<double>(c.alertsSent)});
  }
  m_queue.schedule(now + m_scenario.sampleInterval, SampleTick{});
}

metrics::MetricsBundle
World::collect()
{
  m_queue.forEachPending([this](const auto& ev) {
    if (const auto* a = std::get_if<MsgArrival>(&ev.payload)) {
      if (std::holds_alternative<ndn::Interest>(a->msg)) {
        ++m_bundle.ledger.inFlight;
      }
    }
  });

  for (const auto& node : m_nodes) {
    if (node->role != Role::Router) {
      continue;
    }
    const auto& c = node->counters;
    metrics::RouterSummary s;
    s.router = node->id;
    if (c.firstPoseidonDrop) {
      s.firstPoseidonDropMs = toMs(*c.firstPoseidonDrop);
    }
    s.peakPitBytes = static_cast<double>(c.peakPitBytes);
    s.dropsNoRoute = static_cast<double>(c.dropsNoRoute);
    s.collapsed = static_cast<double>(c.collapsed);
    s.cacheHits = static_cast<double>(c.cacheHits);
    s.alertsApplied = static_cast<double>(c.alertsApplied);
    s.alertsRejected = static_cast<double>(c.alertsRejected);
    m_bundle.summaries.push_back(std::move(s));
  }
  for (const auto& link : m_links) {
    m_bundle.linkDrops += link.drops();
  }
  return m_bundle;
}

metrics::MetricsBundle
runScenario(const scenario::Scenario& scenario, std::optional<Time> until)
{
  World world(scenario);
  return world.run(until);
}

} // namespace psim::sim
