#include "psim/fw/forwarder.hpp"

namespace psim::fw {

Forwarder::Forwarder(const ForwarderConfig& config)
  : m_pit(config.pitCapacityBytes, config.interestLifetime)
  , m_cs(config.csCapacityBytes)
{
}

ForwardDecision
Forwarder::onInterest(FaceId face, const ndn::Interest& interest, Time now)
{
  m_pit.expire(now);

  // cached content is returned without creating PIT state
  if (auto cached = m_cs.find(interest.name)) {
    return ReplyFromCache{std::move(*cached)};
  }

  if (const auto* entry = m_pit.find(interest.name)) {
    if (entry->hasFace(face)) {
      return DroppedDuplicate{};
    }
    if (!m_pit.addInRecord(interest.name, face, now)) {
      return DroppedPitFull{};
    }
    return Collapsed{};
  }

  auto route = m_fib.findLongestMatch(interest.name);
  if (!route) {
    return DroppedNoRoute{};
  }
  if (!m_pit.canInsert(interest.name)) {
    return DroppedPitFull{};
  }
  m_pit.insert(interest.name, face, now, route->face, std::move(route->prefix));
  return Forward{route->face};
}

std::vector<OutgoingContent>
Forwarder::onContent(FaceId, const ndn::ContentObject& content, Time now)
{
  m_pit.expire(now);

  auto entry = m_pit.erase(content.name);
  if (!entry) {
    return {};
  }
  std::vector<OutgoingContent> out;
  out.reserve(entry->inRecords.size());
  for (const auto& rec : entry->inRecords) {
    out.push_back({rec.face, content});
  }
  m_cs.insert(content);
  return out;
}

} // namespace psim::fw
