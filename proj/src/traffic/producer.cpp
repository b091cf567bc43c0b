#include "psim/traffic/producer.hpp"
#include "psim/traffic/attacker.hpp"
#include "psim/traffic/consumer.hpp"

#include <charconv>
#include <stdexcept>

namespace psim::traffic {

void
validate(const ProducerSpec& spec)
{
  if (spec.responseDelay < Time{0} || spec.dynamicExtraDelay < Time{0}) {
    throw std::invalid_argument("producer delays must be non-negative");
  }
}

Producer::Producer(NodeId self, ProducerSpec spec)
  : m_self(std::move(self))
  , m_spec(std::move(spec))
{
  validate(m_spec);
}

bool
Producer::hasContent(const ndn::Name& name) const
{
  const auto depth = m_spec.ns.size();
  if (!m_spec.ns.isPrefixOf(name) || name.size() <= depth) {
    return false;
  }
  auto first = name.at(depth);
  if (name.size() == depth + 1) {
    auto honest = parseHonestComponent(first);
    return honest && m_sessions.count(honest->first) > 0;
  }
  if (first == DYNAMIC_COMPONENT) {
    return true;
  }
  if (first == STATIC_COMPONENT && name.size() == depth + 2) {
    auto item = name.at(depth + 1);
    std::size_t k = 0;
    auto r = std::from_chars(item.data(), item.data() + item.size(), k);
    return r.ec == std::errc{} && r.ptr == item.data() + item.size() && k < m_spec.staticCatalogSize;
  }
  return false;
}

std::optional<ProducerReply>
Producer::onInterest(const ndn::Interest& interest, const ndn::TrustRegistry& registry)
{
  if (!m_spec.ns.isPrefixOf(interest.name)) {
    ++m_misrouted;
    return std::nullopt;
  }
  if (!hasContent(interest.name)) {
    ++m_unanswered;
    return std::nullopt;
  }
  ++m_answered;

  ProducerReply reply{ndn::ContentObject{interest.name, m_spec.payloadSize, m_self, 0, {}},
                      m_spec.responseDelay};
  if (interest.name.at(m_spec.ns.size()) == DYNAMIC_COMPONENT) {
    reply.delay += m_spec.dynamicExtraDelay;
  }
  registry.signContent(reply.content);
  return reply;
}

} // namespace psim::traffic
