#ifndef PSIM_COMMON_TIME_HPP
#define PSIM_COMMON_TIME_HPP

#include <chrono>
#include <cmath>
#include <cstdint>

namespace psim {

/// Simulation clock. Integer nanoseconds, so 10.7 ms, 1.337 ms and link
/// serialization times such as 819.2 us are all exact.
using Time = std::chrono::duration<std::int64_t, std::nano>;

inline Time
fromMs(double ms)
{
  return Time{std::llround(ms * 1e6)};
}

inline double
toMs(Time t)
{
  return static_cast<double>(t.count()) / 1e6;
}

/// Whole milliseconds, truncated; used where the wire carries integer ms.
inline std::uint64_t
toWholeMs(Time t)
{
  return t.count() <= 0 ? 0 : static_cast<std::uint64_t>(t.count() / 1'000'000);
}

} // namespace psim

#endif // PSIM_COMMON_TIME_HPP
