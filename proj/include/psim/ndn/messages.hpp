#ifndef PSIM_NDN_MESSAGES_HPP
#define PSIM_NDN_MESSAGES_HPP

#include "psim/common/ids.hpp"
#include "psim/common/time.hpp"
#include "psim/ndn/name.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace psim::ndn {

/// Opaque authenticity tag minted by TrustRegistry::sign().
using SigToken = std::uint64_t;

struct Interest
{
  Name name;
  std::uint64_t nonce = 0;
  Time createTime{0};
};

struct ContentObject
{
  Name name;
  std::size_t payloadSize = 0;
  NodeId signer;
  SigToken sigToken = 0;
  /// Only alert carriers have real bytes; ordinary content is accounted by size.
  std::vector<std::uint8_t> payload;
};

using Message = std::variant<Interest, ContentObject>;

/// Bytes a message occupies on a link.
std::size_t
wireSize(const Interest& interest);

std::size_t
wireSize(const ContentObject& content);

std::size_t
wireSize(const Message& msg);

} // namespace psim::ndn

#endif // PSIM_NDN_MESSAGES_HPP
