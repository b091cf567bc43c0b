#ifndef PSIM_SIM_LINK_HPP
#define PSIM_SIM_LINK_HPP

#include "psim/common/time.hpp"

#include <array>
#include <cstdint>
#include <deque>
#include <optional>

namespace psim::sim {

struct LinkParams
{
  double bandwidthBps = 10e6;
  Time delay = fromMs(1);
  std::size_t queuePackets = 100;
};

/**
 * \brief Full-duplex point-to-point link.
 *
 * Each direction is a FIFO with tail drop: a message waits for earlier
 * messages, is serialized at the link rate, then propagates for `delay`.
 * The queue limit counts messages not yet fully serialized.
 */
class Link
{
public:
  explicit
  Link(const LinkParams& params);

  const LinkParams&
  params() const noexcept
  {
    return m_params;
  }

  Time
  serializationTime(std::size_t bytes) const;

  /// Arrival time at the far end, or nullopt if the queue was full.
  std::optional<Time>
  transmit(int direction, std::size_t bytes, Time now);

  std::uint64_t
  drops(int direction) const
  {
    return m_dirs.at(static_cast<std::size_t>(direction)).drops;
  }

  std::uint64_t
  drops() const
  {
    return m_dirs[0].drops + m_dirs[1].drops;
  }

private:
  struct Direction
  {
    std::deque<Time> finishTimes;
    std::uint64_t drops = 0;
  };

  LinkParams m_params;
  std::array<Direction, 2> m_dirs;
};

} // namespace psim::sim

#endif // PSIM_SIM_LINK_HPP
