#ifndef PSIM_COMMON_IDS_HPP
#define PSIM_COMMON_IDS_HPP

#include <cstdint>
#include <string>

namespace psim {

/// Interface number local to one node.
enum class FaceId : std::uint32_t {};

constexpr std::uint32_t
toUnderlying(FaceId face)
{
  return static_cast<std::uint32_t>(face);
}

/// Node identifiers are the names used in topology files ("R3", "P0", ...).
using NodeId = std::string;

} // namespace psim

#endif // PSIM_COMMON_IDS_HPP
