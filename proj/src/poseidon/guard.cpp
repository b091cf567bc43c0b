#include "psim/poseidon/guard.hpp"

#include <set>
#include <stdexcept>

namespace psim::poseidon {

ndn::Name
namespaceOf(const fw::PitEntry& entry)
{
  return entry.routePrefix ? *entry.routePrefix : entry.name.getPrefix(1);
}

Guard::Guard(NodeId self, Mode mode, const PoseidonConfig& config, std::size_t pitCapacityBytes,
             const std::vector<FaceId>& faces)
  : m_self(std::move(self))
  , m_mode(mode)
  , m_config(config)
{
  validate(m_config);
  double rhoBase = static_cast<double>(pitCapacityBytes) * m_config.rhoBaseFraction;
  for (auto face : faces) {
    m_states.emplace(face, PoseidonIfaceState::withBases(m_config.omegaBase, rhoBase));
  }
}

PoseidonIfaceState&
Guard::state(FaceId face)
{
  auto it = m_states.find(face);
  if (it == m_states.end()) {
    throw std::out_of_range(m_self + ": unknown face " + std::to_string(toUnderlying(face)));
  }
  return it->second;
}

const PoseidonIfaceState&
Guard::state(FaceId face) const
{
  return const_cast<Guard*>(this)->state(face);
}

Admission
Guard::onInterest(FaceId face, const fw::Pit& pit, Time now)
{
  auto& st = state(face);
  auto result = admitInterest(st, pit, face, now, m_config, m_mode == Mode::Pushback);
  if (m_admissionLog) {
    m_admissionLog->push_back({now, face, st.lastOmega, static_cast<double>(pit.faceBytes(face)),
                               st.omegaThresh, st.rhoThresh, !result.admitted});
  }
  return result;
}

void
Guard::onContentSent(FaceId face)
{
  if (auto it = m_states.find(face); it != m_states.end()) {
    ++it->second.contentsOut;
  }
}

Guard::AlertOutcome
Guard::onAlert(FaceId face, const ndn::ContentObject& carrier, Time now, const fw::Pit& pit,
               const ndn::TrustRegistry& registry)
{
  std::optional<AlertMessage> msg;
  try {
    msg.emplace(parseAlert(carrier));
  }
  catch (const MalformedAlert&) {
    return {AlertVerdict::Malformed, {}};
  }

  auto verdict = acceptAlert(*msg, now, state(face), registry, m_config);
  if (verdict != AlertVerdict::Applied) {
    return {verdict, {}};
  }

  std::set<FaceId> sources;
  pit.forEach([&] (const fw::PitEntry& entry) {
    if (entry.outFace != face) {
      return;
    }
    for (const auto& rec : entry.inRecords) {
      if (rec.face != face) {
        sources.insert(rec.face);
      }
    }
  });

  AlertOutcome outcome{verdict, {}};
  for (auto src : sources) {
    auto& st = state(src);
    // an interface that is already being filtered keeps its thresholds
    if (detect(st.lastOmega, static_cast<double>(pit.faceBytes(src)), st)) {
      continue;
    }
    decrease(st, m_config.scale);
    st.lastAlertApplied = now;
    outcome.decreased.push_back(src);
  }
  return outcome;
}

std::size_t
Guard::onTick(Time now, const fw::Pit& pit)
{
  std::size_t detecting = 0;
  for (auto& [face, st] : m_states) {
    m_lastIntervalContents[face] = st.contentsOut;
    if (closeInterval(st, static_cast<double>(pit.faceBytes(face)), now)) {
      ++detecting;
    }
    restoreTick(st, now, m_config);
  }
  return detecting;
}

void
Guard::pruneStats(std::deque<ExpiredRecord>& records, Time now) const
{
  while (!records.empty() && now - records.front().time > m_config.statsWindow) {
    records.pop_front();
  }
}

void
Guard::recordExpired(const fw::PitEntry& entry, Time now)
{
  if (!enabled()) {
    return;
  }
  auto ns = namespaceOf(entry);
  for (const auto& rec : entry.inRecords) {
    auto& records = m_expired[rec.face];
    records.push_back({now, ns});
    pruneStats(records, now);
  }
}

std::vector<ndn::Name>
Guard::offendingNamespaces(FaceId face, Time now, const fw::Pit& pit)
{
  std::map<ndn::Name, std::size_t> counts;
  if (auto it = m_expired.find(face); it != m_expired.end()) {
    pruneStats(it->second, now);
    for (const auto& rec : it->second) {
      ++counts[rec.ns];
    }
  }
  if (counts.empty()) {
    pit.forEach([&] (const fw::PitEntry& entry) {
      if (entry.hasFace(face)) {
        ++counts[namespaceOf(entry)];
      }
    });
  }
  if (counts.empty()) {
    return {};
  }
  // std::map order makes ties resolve to the lexicographically smallest name
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    if (it->second > best->second) {
      best = it;
    }
  }
  return {best->first};
}

std::uint64_t
Guard::reducedRate(FaceId face) const
{
  auto it = m_lastIntervalContents.find(face);
  if (it == m_lastIntervalContents.end()) {
    return 0;
  }
  auto intervalMs = static_cast<std::uint64_t>(toMs(m_config.detectionInterval));
  return intervalMs == 0 ? 0 : it->second * 1000 / intervalMs;
}

AlertMessage
Guard::buildAlert(FaceId face, Time now, const fw::Pit& pit, const ndn::TrustRegistry& registry)
{
  return makeAlert(m_self, face, now, offendingNamespaces(face, now, pit), reducedRate(face),
                   registry, m_alertSerial++);
}

} // namespace psim::poseidon
