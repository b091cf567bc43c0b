#include "psim/sim/link.hpp"

#include <cmath>
#include <stdexcept>

namespace psim::sim {

Link::Link(const LinkParams& params)
  : m_params(params)
{
  if (!(m_params.bandwidthBps > 0)) {
    throw std::invalid_argument("link bandwidth must be > 0");
  }
  if (m_params.delay < Time{0}) {
    throw std::invalid_argument("link delay must be >= 0");
  }
  if (m_params.queuePackets == 0) {
    throw std::invalid_argument("link queue must hold at least one packet");
  }
}

Time
Link::serializationTime(std::size_t bytes) const
{
  return Time{std::llround(static_cast<double>(bytes) * 8.0 * 1e9 / m_params.bandwidthBps)};
}

std::optional<Time>
Link::transmit(int direction, std::size_t bytes, Time now)
{
  auto& dir = m_dirs.at(static_cast<std::size_t>(direction));
  while (!dir.finishTimes.empty() && dir.finishTimes.front() <= now) {
    dir.finishTimes.pop_front();
  }
  if (dir.finishTimes.size() >= m_params.queuePackets) {
    ++dir.drops;
    return std::nullopt;
  }
  Time start = dir.finishTimes.empty() ? now : dir.finishTimes.back();
  Time finish = start + serializationTime(bytes);
  dir.finishTimes.push_back(finish);
  return finish + m_params.delay;
}

} // namespace psim::sim
