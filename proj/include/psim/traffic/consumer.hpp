#ifndef PSIM_TRAFFIC_CONSUMER_HPP
#define PSIM_TRAFFIC_CONSUMER_HPP

#include "psim/ndn/messages.hpp"

#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace psim::traffic {

/// Honest workload: a short burst, then a steady rate until stopTime (inclusive).
struct ConsumerSchedule
{
  ndn::Name targetPrefix;
  std::uint32_t burstCount = 30;
  Time burstSpacing = fromMs(2);
  Time burstStart = fromMs(1000);
  Time steadyStart = fromMs(1200);
  Time steadySpacing = fromMs(10.7);
  Time stopTime = fromMs(26000);
  /// Re-express an unanswered interest once after this long; off when unset.
  std::optional<Time> retxTimeout{};
};

/// Throws std::invalid_argument.
void
validate(const ConsumerSchedule& schedule);

/// Instant of the k-th emission, or nullopt past the end of the schedule.
std::optional<Time>
emissionInstant(const ConsumerSchedule& schedule, std::size_t k);

/// Number of emissions, from the closed form.
std::size_t
emissionCount(const ConsumerSchedule& schedule);

/// Honest name component: 16 hex digits of session token, '-', 8-digit sequence.
std::string
honestComponent(std::uint64_t session, std::uint64_t seq);

/// Inverse of honestComponent().
std::optional<std::pair<std::uint64_t, std::uint64_t>>
parseHonestComponent(std::string_view component);

class Consumer
{
public:
  Consumer(ConsumerSchedule schedule, std::uint64_t session);

  const ConsumerSchedule&
  schedule() const noexcept
  {
    return m_schedule;
  }

  std::uint64_t
  session() const noexcept
  {
    return m_session;
  }

  std::optional<Time>
  nextEmission() const
  {
    return emissionInstant(m_schedule, m_next);
  }

  /// Emits the next interest iff \p now is its scheduled instant.
  std::optional<ndn::Interest>
  emit(Time now, std::mt19937_64& rng);

  /// Re-expresses \p name if retransmission is on and it is still unanswered
  /// and has not been retransmitted before.
  std::optional<ndn::Interest>
  retransmit(const ndn::Name& name, Time now, std::mt19937_64& rng);

  void
  onContent(const ndn::ContentObject& content);

  std::uint64_t
  emitted() const noexcept
  {
    return m_emitted;
  }

  std::uint64_t
  received() const noexcept
  {
    return m_received;
  }

private:
  ConsumerSchedule m_schedule;
  std::uint64_t m_session;
  std::size_t m_next = 0;
  std::uint64_t m_emitted = 0;
  std::uint64_t m_received = 0;
  // name uri -> already retransmitted
  std::map<std::string, bool> m_outstanding;
};

} // namespace psim::traffic

#endif // PSIM_TRAFFIC_CONSUMER_HPP
