#include "psim/scenario/scenario.hpp"

#include "psim/fw/fib.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace psim::scenario {

using nlohmann::json;

std::string_view
toString(Role role)
{
  switch (role) {
    case Role::Router:
      return "router";
    case Role::Consumer:
      return "consumer";
    case Role::Producer:
      return "producer";
    case Role::Attacker:
      return "attacker";
  }
  return "?";
}

const NodeSpec*
Topology::findNode(const NodeId& id) const
{
  for (const auto& n : nodes) {
    if (n.id == id) {
      return &n;
    }
  }
  return nullptr;
}

poseidon::Mode
Scenario::modeOf(const NodeId& router) const
{
  auto it = modeOverrides.find(router);
  return it == modeOverrides.end() ? mode : it->second;
}

ParseError::ParseError(const std::string& what, std::optional<std::size_t> line_, std::string field_)
  : std::runtime_error(what)
  , line(line_)
  , field(std::move(field_))
{
}

namespace {

[[noreturn]] void
fieldError(const std::string& path, const std::string& problem)
{
  throw ParseError(path + ": " + problem, std::nullopt, path);
}

std::string
join(const std::string& path, std::string_view key)
{
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string
join(const std::string& path, std::size_t index)
{
  return path + "[" + std::to_string(index) + "]";
}

const json&
require(const json& obj, std::string_view key, const std::string& path)
{
  if (!obj.is_object()) {
    fieldError(path, "expected an object");
  }
  auto it = obj.find(key);
  if (it == obj.end()) {
    fieldError(join(path, key), "missing field");
  }
  return *it;
}

const json*
optional(const json& obj, std::string_view key)
{
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

std::string
asString(const json& v, const std::string& path)
{
  if (!v.is_string()) {
    fieldError(path, "expected a string");
  }
  return v.get<std::string>();
}

double
asNumber(const json& v, const std::string& path)
{
  if (!v.is_number()) {
    fieldError(path, "expected a number");
  }
  return v.get<double>();
}

std::uint64_t
asUnsigned(const json& v, const std::string& path)
{
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    fieldError(path, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

const json&
asArray(const json& v, const std::string& path)
{
  if (!v.is_array()) {
    fieldError(path, "expected an array");
  }
  return v;
}

ndn::Name
asName(const json& v, const std::string& path)
{
  auto text = asString(v, path);
  try {
    return ndn::Name::parse(text);
  }
  catch (const ndn::MalformedName& e) {
    fieldError(path, e.what());
  }
}

FaceId
asFace(const json& v, const std::string& path)
{
  auto n = asUnsigned(v, path);
  if (n > UINT32_MAX) {
    fieldError(path, "interface id out of range");
  }
  return FaceId{static_cast<std::uint32_t>(n)};
}

Role
asRole(const json& v, const std::string& path)
{
  auto s = asString(v, path);
  for (auto r : {Role::Router, Role::Consumer, Role::Producer, Role::Attacker}) {
    if (s == toString(r)) {
      return r;
    }
  }
  fieldError(path, "unknown role '" + s + "'");
}

poseidon::Mode
asMode(const json& v, const std::string& path)
{
  try {
    return poseidon::parseMode(asString(v, path));
  }
  catch (const std::invalid_argument& e) {
    fieldError(path, e.what());
  }
}

// Reads obj[key] into `out` if present.
template<typename T, typename Conv>
void
maybe(const json& obj, std::string_view key, const std::string& path, T& out, Conv conv)
{
  if (const json* v = optional(obj, key)) {
    out = conv(*v, join(path, key));
  }
}

auto
msField()
{
  return [](const json& v, const std::string& p) { return fromMs(asNumber(v, p)); };
}

auto
sizeField()
{
  return [](const json& v, const std::string& p) { return static_cast<std::size_t>(asUnsigned(v, p)); };
}

poseidon::PoseidonConfig
parsePoseidon(const json& j, const std::string& path, poseidon::Mode& mode,
              std::map<NodeId, poseidon::Mode>& overrides)
{
  poseidon::PoseidonConfig c;
  if (!j.is_object()) {
    fieldError(path, "expected an object");
  }
  maybe(j, "mode", path, mode, asMode);
  maybe(j, "detection_interval_ms", path, c.detectionInterval, msField());
  maybe(j, "wait_time_ms", path, c.waitTime, msField());
  maybe(j, "scale", path, c.scale, asNumber);
  maybe(j, "restore_fraction", path, c.restoreFraction, asNumber);
  maybe(j, "quiet_period_ms", path, c.quietPeriod, msField());
  maybe(j, "alert_freshness_ms", path, c.alertFreshness, msField());
  maybe(j, "omega_base", path, c.omegaBase, asNumber);
  maybe(j, "rho_base_fraction", path, c.rhoBaseFraction, asNumber);
  maybe(j, "stats_window_ms", path, c.statsWindow, msField());
  if (const json* o = optional(j, "overrides")) {
    auto opath = join(path, "overrides");
    if (!o->is_object()) {
      fieldError(opath, "expected an object");
    }
    for (const auto& [router, m] : o->items()) {
      overrides[router] = asMode(m, join(opath, router));
    }
  }
  return c;
}

std::size_t
lineOf(std::string_view text, std::size_t byte)
{
  byte = std::min(byte, text.size());
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
    }
  }
  return line;
}

json
parseJsonText(std::string_view text, const std::string& what)
{
  try {
    return json::parse(text);
  }
  catch (const json::parse_error& e) {
    auto line = lineOf(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(what + ": line " + std::to_string(line) + ": " + e.what(), line, "");
  }
}

std::string
readFile(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json
timeJson(Time t)
{
  return toMs(t);
}

} // namespace

Topology
parseTopology(const json& j)
{
  Topology topo;
  const std::string root = "topology";
  if (!j.is_object()) {
    fieldError(root, "expected an object");
  }
  const auto& nodes = asArray(require(j, "nodes", root), join(root, "nodes"));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto p = join(join(root, "nodes"), i);
    NodeSpec n;
    n.id = asString(require(nodes[i], "id", p), join(p, "id"));
    n.role = asRole(require(nodes[i], "role", p), join(p, "role"));
    topo.nodes.push_back(std::move(n));
  }

  const auto& links = asArray(require(j, "links", root), join(root, "links"));
  for (std::size_t i = 0; i < links.size(); ++i) {
    auto p = join(join(root, "links"), i);
    const auto& l = links[i];
    LinkSpec spec;
    spec.a = asString(require(l, "a", p), join(p, "a"));
    spec.aFace = asFace(require(l, "a_iface", p), join(p, "a_iface"));
    spec.b = asString(require(l, "b", p), join(p, "b"));
    spec.bFace = asFace(require(l, "b_iface", p), join(p, "b_iface"));
    maybe(l, "bandwidth_bps", p, spec.params.bandwidthBps, asNumber);
    maybe(l, "delay_ms", p, spec.params.delay, msField());
    maybe(l, "queue_packets", p, spec.params.queuePackets, sizeField());
    topo.links.push_back(std::move(spec));
  }

  if (const json* fib = optional(j, "fib")) {
    auto fpath = join(root, "fib");
    if (!fib->is_object()) {
      fieldError(fpath, "expected an object");
    }
    for (const auto& [router, routes] : fib->items()) {
      auto rpath = join(fpath, router);
      auto& out = topo.fib[router];
      asArray(routes, rpath);
      for (std::size_t i = 0; i < routes.size(); ++i) {
        auto p = join(rpath, i);
        RouteSpec r;
        auto prefix = asString(require(routes[i], "prefix", p), join(p, "prefix"));
        if (prefix != "/") {
          r.prefix = asName(routes[i]["prefix"], join(p, "prefix"));
        }
        r.face = asFace(require(routes[i], "iface", p), join(p, "iface"));
        out.push_back(std::move(r));
      }
    }
  }
  return topo;
}

Scenario
parseScenario(const json& j, const std::filesystem::path& baseDir)
{
  Scenario s;
  const std::string root;
  if (!j.is_object()) {
    fieldError("<root>", "expected an object");
  }

  const json& topo = require(j, "topology", root);
  if (topo.is_string()) {
    auto path = baseDir / topo.get<std::string>();
    std::string text;
    try {
      text = readFile(path);
    }
    catch (const std::runtime_error& e) {
      fieldError("topology", e.what());
    }
    s.topology = parseTopology(parseJsonText(text, path.string()));
  }
  else {
    s.topology = parseTopology(topo);
  }

  maybe(j, "seed", root, s.seed, asUnsigned);
  maybe(j, "horizon_ms", root, s.horizon, msField());
  maybe(j, "sample_interval_ms", root, s.sampleInterval, msField());
  maybe(j, "pit_capacity_bytes", root, s.pitCapacityBytes, sizeField());
  maybe(j, "interest_lifetime_ms", root, s.interestLifetime, msField());
  maybe(j, "cs_capacity_bytes", root, s.csCapacityBytes, sizeField());
  if (const json* p = optional(j, "poseidon")) {
    s.poseidon = parsePoseidon(*p, "poseidon", s.mode, s.modeOverrides);
  }

  if (const json* arr = optional(j, "producers")) {
    asArray(*arr, "producers");
    for (std::size_t i = 0; i < arr->size(); ++i) {
      auto p = join(std::string("producers"), i);
      const auto& e = (*arr)[i];
      ProducerEntry pe{asString(require(e, "node", p), join(p, "node")),
                       {asName(require(e, "prefix", p), join(p, "prefix"))}};
      maybe(e, "response_delay_ms", p, pe.spec.responseDelay, msField());
      maybe(e, "payload_size", p, pe.spec.payloadSize, sizeField());
      maybe(e, "static_catalog_size", p, pe.spec.staticCatalogSize, sizeField());
      maybe(e, "dynamic_extra_delay_ms", p, pe.spec.dynamicExtraDelay, msField());
      s.producers.push_back(std::move(pe));
    }
  }

  if (const json* arr = optional(j, "consumers")) {
    asArray(*arr, "consumers");
    for (std::size_t i = 0; i < arr->size(); ++i) {
      auto p = join(std::string("consumers"), i);
      const auto& e = (*arr)[i];
      ConsumerEntry ce{asString(require(e, "node", p), join(p, "node")),
                       {asName(require(e, "prefix", p), join(p, "prefix"))}};
      auto& c = ce.schedule;
      maybe(e, "burst_count", p, c.burstCount,
            [](const json& v, const std::string& q) { return static_cast<std::uint32_t>(asUnsigned(v, q)); });
      maybe(e, "burst_spacing_ms", p, c.burstSpacing, msField());
      maybe(e, "burst_start_ms", p, c.burstStart, msField());
      maybe(e, "steady_start_ms", p, c.steadyStart, msField());
      maybe(e, "steady_spacing_ms", p, c.steadySpacing, msField());
      maybe(e, "stop_ms", p, c.stopTime, msField());
      if (const json* r = optional(e, "retx_timeout_ms")) {
        c.retxTimeout = fromMs(asNumber(*r, join(p, "retx_timeout_ms")));
      }
      s.consumers.push_back(std::move(ce));
    }
  }

  if (const json* arr = optional(j, "attackers")) {
    asArray(*arr, "attackers");
    for (std::size_t i = 0; i < arr->size(); ++i) {
      auto p = join(std::string("attackers"), i);
      const auto& e = (*arr)[i];
      AttackerEntry ae{asString(require(e, "node", p), join(p, "node")),
                       {asName(require(e, "prefix", p), join(p, "prefix"))}};
      auto& a = ae.schedule;
      if (const json* st = optional(e, "strategy")) {
        try {
          a.strategy = traffic::parseAttackStrategy(asString(*st, join(p, "strategy")));
        }
        catch (const std::invalid_argument& ex) {
          fieldError(join(p, "strategy"), ex.what());
        }
      }
      maybe(e, "spacing_ms", p, a.spacing, msField());
      maybe(e, "start_ms", p, a.start, msField());
      if (const json* st = optional(e, "stop_ms")) {
        a.stop = fromMs(asNumber(*st, join(p, "stop_ms")));
      }
      maybe(e, "static_catalog_size", p, a.staticCatalogSize, sizeField());
      s.attackers.push_back(std::move(ae));
    }
  }

  validate(s);
  return s;
}

Scenario
parseScenarioText(std::string_view text, const std::filesystem::path& baseDir)
{
  return parseScenario(parseJsonText(text, "scenario"), baseDir);
}

Scenario
loadScenario(const std::filesystem::path& path)
{
  auto text = readFile(path);
  return parseScenario(parseJsonText(text, path.string()), path.parent_path());
}

json
toJson(const Topology& topo)
{
  json nodes = json::array();
  for (const auto& n : topo.nodes) {
    nodes.push_back({{"id", n.id}, {"role", toString(n.role)}});
  }
  json links = json::array();
  for (const auto& l : topo.links) {
    links.push_back({{"a", l.a},
                     {"a_iface", toUnderlying(l.aFace)},
                     {"b", l.b},
                     {"b_iface", toUnderlying(l.bFace)},
                     {"bandwidth_bps", l.params.bandwidthBps},
                     {"delay_ms", timeJson(l.params.delay)},
                     {"queue_packets", l.params.queuePackets}});
  }
  json fib = json::object();
  for (const auto& [router, routes] : topo.fib) {
    json arr = json::array();
    for (const auto& r : routes) {
      arr.push_back({{"prefix", r.prefix ? r.prefix->toUri() : std::string("/")},
                     {"iface", toUnderlying(r.face)}});
    }
    fib[router] = std::move(arr);
  }
  return {{"nodes", std::move(nodes)}, {"links", std::move(links)}, {"fib", std::move(fib)}};
}

json
toJson(const Scenario& s)
{
  json j;
  j["topology"] = toJson(s.topology);
  j["seed"] = s.seed;
  j["horizon_ms"] = timeJson(s.horizon);
  j["sample_interval_ms"] = timeJson(s.sampleInterval);
  j["pit_capacity_bytes"] = s.pitCapacityBytes;
  j["interest_lifetime_ms"] = timeJson(s.interestLifetime);
  j["cs_capacity_bytes"] = s.csCapacityBytes;

  const auto& c = s.poseidon;
  json overrides = json::object();
  for (const auto& [router, m] : s.modeOverrides) {
    overrides[router] = poseidon::toString(m);
  }
  j["poseidon"] = {{"mode", poseidon::toString(s.mode)},
                   {"detection_interval_ms", timeJson(c.detectionInterval)},
                   {"wait_time_ms", timeJson(c.waitTime)},
                   {"scale", c.scale},
                   {"restore_fraction", c.restoreFraction},
                   {"quiet_period_ms", timeJson(c.quietPeriod)},
                   {"alert_freshness_ms", timeJson(c.alertFreshness)},
                   {"omega_base", c.omegaBase},
                   {"rho_base_fraction", c.rhoBaseFraction},
                   {"stats_window_ms", timeJson(c.statsWindow)},
                   {"overrides", std::move(overrides)}};

  json producers = json::array();
  for (const auto& p : s.producers) {
    producers.push_back({{"node", p.node},
                         {"prefix", p.spec.ns.toUri()},
                         {"response_delay_ms", timeJson(p.spec.responseDelay)},
                         {"payload_size", p.spec.payloadSize},
                         {"static_catalog_size", p.spec.staticCatalogSize},
                         {"dynamic_extra_delay_ms", timeJson(p.spec.dynamicExtraDelay)}});
  }
  j["producers"] = std::move(producers);

  json consumers = json::array();
  for (const auto& ce : s.consumers) {
    const auto& c2 = ce.schedule;
    json e = {{"node", ce.node},
              {"prefix", c2.targetPrefix.toUri()},
              {"burst_count", c2.burstCount},
              {"burst_spacing_ms", timeJson(c2.burstSpacing)},
              {"burst_start_ms", timeJson(c2.burstStart)},
              {"steady_start_ms", timeJson(c2.steadyStart)},
              {"steady_spacing_ms", timeJson(c2.steadySpacing)},
              {"stop_ms", timeJson(c2.stopTime)}};
    if (c2.retxTimeout) {
      e["retx_timeout_ms"] = timeJson(*c2.retxTimeout);
    }
    consumers.push_back(std::move(e));
  }
  j["consumers"] = std::move(consumers);

  json attackers = json::array();
  for (const auto& ae : s.attackers) {
    const auto& a = ae.schedule;
    json e = {{"node", ae.node},
              {"prefix", a.targetPrefix.toUri()},
              {"strategy", traffic::toString(a.strategy)},
              {"spacing_ms", timeJson(a.spacing)},
              {"start_ms", timeJson(a.start)},
              {"static_catalog_size", a.staticCatalogSize}};
    if (a.stop) {
      e["stop_ms"] = timeJson(*a.stop);
    }
    attackers.push_back(std::move(e));
  }
  j["attackers"] = std::move(attackers);
  return j;
}

namespace {

struct Endpoint
{
  NodeId node;
  FaceId face;
};

using Adjacency = std::map<NodeId, std::map<FaceId, Endpoint>>;

Adjacency
buildAdjacency(const Topology& topo)
{
  Adjacency adj;
  for (const auto& n : topo.nodes) {
    adj[n.id];
  }
  for (std::size_t i = 0; i < topo.links.size(); ++i) {
    const auto& l = topo.links[i];
    auto where = "link " + std::to_string(i) + " (" + l.a + "-" + l.b + ")";
    if (!topo.findNode(l.a) || !topo.findNode(l.b)) {
      throw ValidationError(where + ": endpoint is not a declared node");
    }
    if (l.a == l.b) {
      throw ValidationError(where + ": self loop");
    }
    if (!(l.params.bandwidthBps > 0)) {
      throw ValidationError(where + ": bandwidth must be positive");
    }
    if (l.params.delay < Time{0}) {
      throw ValidationError(where + ": negative delay");
    }
    if (l.params.queuePackets == 0) {
      throw ValidationError(where + ": queue must hold at least one packet");
    }
    if (!adj[l.a].emplace(l.aFace, Endpoint{l.b, l.bFace}).second) {
      throw ValidationError(where + ": interface " + std::to_string(toUnderlying(l.aFace)) +
                            " of " + l.a + " used twice");
    }
    if (!adj[l.b].emplace(l.bFace, Endpoint{l.a, l.aFace}).second) {
      throw ValidationError(where + ": interface " + std::to_string(toUnderlying(l.bFace)) +
                            " of " + l.b + " used twice");
    }
  }
  return adj;
}

std::map<NodeId, fw::Fib>
buildFibs(const Topology& topo)
{
  std::map<NodeId, fw::Fib> fibs;
  for (const auto& [router, routes] : topo.fib) {
    auto& fib = fibs[router];
    for (const auto& r : routes) {
      if (r.prefix) {
        fib.addRoute(*r.prefix, r.face);
      }
      else {
        fib.setDefaultRoute(r.face);
      }
    }
  }
  return fibs;
}

template<typename Fn>
void
wrapInvalid(const std::string& where, Fn&& fn)
{
  try {
    fn();
  }
  catch (const std::invalid_argument& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

std::vector<NodeId>
walk(const Scenario& s, const Adjacency& adj, const std::map<NodeId, fw::Fib>& fibs,
     const NodeId& from, const ndn::Name& target)
{
  auto fail = [&](const std::string& why) {
    throw ValidationError("no route from " + from + " for " + target.toUri() + ": " + why);
  };
  const auto& ports = adj.at(from);
  if (ports.size() != 1) {
    fail("end hosts need exactly one link");
  }
  std::vector<NodeId> path;
  std::set<NodeId> seen;
  NodeId cur = ports.begin()->second.node;
  while (true) {
    const auto* node = s.topology.findNode(cur);
    if (node->role == Role::Producer) {
      for (const auto& p : s.producers) {
        if (p.node == cur && p.spec.ns.isPrefixOf(target)) {
          return path;
        }
      }
      fail("reached producer " + cur + ", which does not serve it");
    }
    if (node->role != Role::Router) {
      fail("forwarded to end host " + cur);
    }
    if (!seen.insert(cur).second) {
      fail("forwarding loop at " + cur);
    }
    path.push_back(cur);
    auto fit = fibs.find(cur);
    std::optional<fw::FibMatch> match;
    if (fit != fibs.end()) {
      match = fit->second.findLongestMatch(target);
    }
    if (!match) {
      fail("no FIB entry at " + cur);
    }
    cur = adj.at(cur).at(match->face).node;
  }
}

} // namespace

void
validate(const Scenario& s)
{
  const auto& topo = s.topology;
  std::set<NodeId> ids;
  for (const auto& n : topo.nodes) {
    if (n.id.empty()) {
      throw ValidationError("node with empty id");
    }
    if (!ids.insert(n.id).second) {
      throw ValidationError("duplicate node id " + n.id);
    }
  }
  auto adj = buildAdjacency(topo);

  for (const auto& n : topo.nodes) {
    if (n.role != Role::Router && adj[n.id].size() != 1) {
      throw ValidationError(std::string(toString(n.role)) + " " + n.id +
                            " must have exactly one link");
    }
  }

  for (const auto& [router, routes] : topo.fib) {
    const auto* node = topo.findNode(router);
    if (!node || node->role != Role::Router) {
      throw ValidationError("fib entry for " + router + ", which is not a router");
    }
    for (const auto& r : routes) {
      if (!adj[router].contains(r.face)) {
        throw ValidationError("fib of " + router + " uses interface " +
                              std::to_string(toUnderlying(r.face)) + ", which has no link");
      }
    }
  }

  if (s.pitCapacityBytes == 0) {
    throw ValidationError("pit_capacity_bytes must be positive");
  }
  if (s.interestLifetime <= Time{0}) {
    throw ValidationError("interest_lifetime_ms must be positive");
  }
  if (s.horizon < Time{0}) {
    throw ValidationError("horizon_ms must not be negative");
  }
  if (s.sampleInterval <= Time{0}) {
    throw ValidationError("sample_interval_ms must be positive");
  }
  wrapInvalid("poseidon", [&] { poseidon::validate(s.poseidon); });
  for (const auto& [router, m] : s.modeOverrides) {
    const auto* node = topo.findNode(router);
    if (!node || node->role != Role::Router) {
      throw ValidationError("poseidon override for " + router + ", which is not a router");
    }
  }

  auto checkRole = [&](const NodeId& id, Role role, std::set<NodeId>& used) {
    const auto* node = topo.findNode(id);
    if (!node) {
      throw ValidationError(std::string(toString(role)) + " entry names unknown node " + id);
    }
    if (node->role != role) {
      throw ValidationError(id + " is a " + std::string(toString(node->role)) + ", not a " +
                            std::string(toString(role)));
    }
    if (!used.insert(id).second) {
      throw ValidationError(id + " has more than one " + std::string(toString(role)) + " entry");
    }
  };

  std::set<NodeId> used;
  for (const auto& p : s.producers) {
    checkRole(p.node, Role::Producer, used);
    wrapInvalid("producer " + p.node, [&] { traffic::validate(p.spec); });
  }
  for (const auto& c : s.consumers) {
    checkRole(c.node, Role::Consumer, used);
    wrapInvalid("consumer " + c.node, [&] { traffic::validate(c.schedule); });
  }
  for (const auto& a : s.attackers) {
    checkRole(a.node, Role::Attacker, used);
    wrapInvalid("attacker " + a.node, [&] { traffic::validate(a.schedule); });
  }

  auto fibs = buildFibs(topo);
  for (const auto& c : s.consumers) {
    walk(s, adj, fibs, c.node, c.schedule.targetPrefix);
  }
  for (const auto& a : s.attackers) {
    walk(s, adj, fibs, a.node, a.schedule.targetPrefix);
  }
}

std::vector<NodeId>
routerPath(const Scenario& s, const NodeId& from, const ndn::Name& target)
{
  if (!s.topology.findNode(from)) {
    throw ValidationError("unknown node " + from);
  }
  return walk(s, buildAdjacency(s.topology), buildFibs(s.topology), from, target);
}

} // namespace psim::scenario
