#include "psim/traffic/consumer.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace psim::traffic {

void
validate(const ConsumerSchedule& s)
{
  if (s.burstStart < Time{0} || s.steadyStart < Time{0} || s.stopTime < Time{0}) {
    throw std::invalid_argument("consumer schedule times must be non-negative");
  }
  if (s.burstSpacing <= Time{0} || s.steadySpacing <= Time{0}) {
    throw std::invalid_argument("consumer spacing must be > 0");
  }
  if (s.burstCount > 0 &&
      s.burstStart + s.burstSpacing * static_cast<std::int64_t>(s.burstCount - 1) >= s.steadyStart) {
    throw std::invalid_argument("consumer burst must end before steady phase starts");
  }
  if (s.retxTimeout && *s.retxTimeout <= Time{0}) {
    throw std::invalid_argument("consumer retransmission timeout must be > 0");
  }
}

std::optional<Time>
emissionInstant(const ConsumerSchedule& s, std::size_t k)
{
  Time t = k < s.burstCount
             ? s.burstStart + s.burstSpacing * static_cast<std::int64_t>(k)
             : s.steadyStart + s.steadySpacing * static_cast<std::int64_t>(k - s.burstCount);
  if (t > s.stopTime) {
    // a truncated burst skips straight to the steady phase, which is also over
    return std::nullopt;
  }
  return t;
}

std::size_t
emissionCount(const ConsumerSchedule& s)
{
  std::size_t burst = 0;
  if (s.burstCount > 0 && s.burstStart <= s.stopTime) {
    burst = std::min<std::size_t>(s.burstCount,
                                  static_cast<std::size_t>((s.stopTime - s.burstStart) / s.burstSpacing) + 1);
  }
  if (burst < s.burstCount) {
    return burst;
  }
  std::size_t steady = 0;
  if (s.steadyStart <= s.stopTime) {
    steady = static_cast<std::size_t>((s.stopTime - s.steadyStart) / s.steadySpacing) + 1;
  }
  return burst + steady;
}

std::string
honestComponent(std::uint64_t session, std::uint64_t seq)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%016llx-%08llu", static_cast<unsigned long long>(session),
                static_cast<unsigned long long>(seq));
  return buf;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>>
parseHonestComponent(std::string_view c)
{
  if (c.size() < 18 || c[16] != '-') {
    return std::nullopt;
  }
  std::uint64_t session = 0;
  std::uint64_t seq = 0;
  auto hex = c.substr(0, 16);
  auto dec = c.substr(17);
  auto r1 = std::from_chars(hex.data(), hex.data() + hex.size(), session, 16);
  auto r2 = std::from_chars(dec.data(), dec.data() + dec.size(), seq, 10);
  if (r1.ec != std::errc{} || r1.ptr != hex.data() + hex.size() || r2.ec != std::errc{} ||
      r2.ptr != dec.data() + dec.size()) {
    return std::nullopt;
  }
  return std::pair{session, seq};
}

Consumer::Consumer(ConsumerSchedule schedule, std::uint64_t session)
  : m_schedule(std::move(schedule))
  , m_session(session)
{
  validate(m_schedule);
}

std::optional<ndn::Interest>
Consumer::emit(Time now, std::mt19937_64& rng)
{
  auto due = nextEmission();
  if (!due || *due != now) {
    return std::nullopt;
  }
  auto seq = m_next++;
  ndn::Interest interest{m_schedule.targetPrefix.append(honestComponent(m_session, seq)), rng(),
                         now};
  ++m_emitted;
  if (m_schedule.retxTimeout) {
    m_outstanding.emplace(interest.name.toUri(), false);
  }
  return interest;
}

std::optional<ndn::Interest>
Consumer::retransmit(const ndn::Name& name, Time now, std::mt19937_64& rng)
{
  auto it = m_outstanding.find(name.toUri());
  if (it == m_outstanding.end() || it->second) {
    return std::nullopt;
  }
  it->second = true;
  ++m_emitted;
  return ndn::Interest{name, rng(), now};
}

void
Consumer::onContent(const ndn::ContentObject& content)
{
  ++m_received;
  m_outstanding.erase(content.name.toUri());
}

} // namespace psim::traffic
