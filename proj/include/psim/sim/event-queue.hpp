#ifndef PSIM_SIM_EVENT_QUEUE_HPP
#define PSIM_SIM_EVENT_QUEUE_HPP

#include "psim/common/time.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace psim::sim {

class SchedulingInPast : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

/**
 * \brief Simulation clock plus a min-heap of pending events.
 *
 * Events leave in (time, seq) order; seq is assigned at schedule time, so
 * events for the same instant run in the order they were scheduled.
 */
template<typename Payload>
class EventQueue
{
public:
  struct Event
  {
    Time time;
    std::uint64_t seq;
    Payload payload;
  };

  Time
  now() const noexcept
  {
    return m_now;
  }

  std::uint64_t
  schedule(Time at, Payload payload)
  {
    if (at < m_now) {
      throw SchedulingInPast("event scheduled at " + std::to_string(toMs(at)) +
                             " ms, clock is at " + std::to_string(toMs(m_now)) + " ms");
    }
    auto seq = m_nextSeq++;
    m_heap.push_back(Event{at, seq, std::move(payload)});
    std::push_heap(m_heap.begin(), m_heap.end(), Later{});
    return seq;
  }

  bool
  empty() const noexcept
  {
    return m_heap.empty();
  }

  std::size_t
  size() const noexcept
  {
    return m_heap.size();
  }

  std::optional<Time>
  nextTime() const
  {
    if (m_heap.empty()) {
      return std::nullopt;
    }
    return m_heap.front().time;
  }

  /// Removes the earliest event and advances the clock to its time.
  Event
  pop()
  {
    if (m_heap.empty()) {
      throw std::logic_error("pop on empty event queue");
    }
    std::pop_heap(m_heap.begin(), m_heap.end(), Later{});
    Event ev = std::move(m_heap.back());
    m_heap.pop_back();
    m_now = ev.time;
    return ev;
  }

  /// Visits pending events in unspecified order.
  template<typename Fn>
  void
  forEachPending(Fn&& fn) const
  {
    for (const auto& ev : m_heap) {
      fn(ev);
    }
  }

private:
  struct Later
  {
    bool
    operator()(const Event& a, const Event& b) const noexcept
    {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };

private:
  Time m_now{0};
  std::uint64_t m_nextSeq = 0;
  std::vector<Event> m_heap;
};

} // namespace psim::sim

#endif // PSIM_SIM_EVENT_QUEUE_HPP
