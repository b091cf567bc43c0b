#ifndef PSIM_TRAFFIC_PRODUCER_HPP
#define PSIM_TRAFFIC_PRODUCER_HPP

#include "psim/ndn/trust.hpp"

#include <optional>
#include <set>

namespace psim::traffic {

struct ProducerSpec
{
  ndn::Name ns;
  Time responseDelay = fromMs(1);
  std::size_t payloadSize = 1024;
  std::size_t staticCatalogSize = 10000;
  /// extra processing for dynamically generated content
  Time dynamicExtraDelay = fromMs(2);
};

void
validate(const ProducerSpec& spec);

struct ProducerReply
{
  ndn::ContentObject content;
  Time delay;
};

/**
 * \brief Content producer for one namespace.
 *
 * The catalog holds: honest consumer names of registered sessions,
 * ns/static/<k> for k < staticCatalogSize, and anything under ns/dyn/.
 * Any other name (fake interests) gets no answer.
 */
class Producer
{
public:
  Producer(NodeId self, ProducerSpec spec);

  const ProducerSpec&
  spec() const noexcept
  {
    return m_spec;
  }

  const NodeId&
  id() const noexcept
  {
    return m_self;
  }

  void
  registerSession(std::uint64_t session)
  {
    m_sessions.insert(session);
  }

  bool
  hasContent(const ndn::Name& name) const;

  /// Signed content after the processing delay, or nothing.
  std::optional<ProducerReply>
  onInterest(const ndn::Interest& interest, const ndn::TrustRegistry& registry);

  std::uint64_t
  answered() const noexcept
  {
    return m_answered;
  }

  std::uint64_t
  unanswered() const noexcept
  {
    return m_unanswered;
  }

  std::uint64_t
  misrouted() const noexcept
  {
    return m_misrouted;
  }

private:
  NodeId m_self;
  ProducerSpec m_spec;
  std::set<std::uint64_t> m_sessions;
  std::uint64_t m_answered = 0;
  std::uint64_t m_unanswered = 0;
  std::uint64_t m_misrouted = 0;
};

} // namespace psim::traffic

#endif // PSIM_TRAFFIC_PRODUCER_HPP
