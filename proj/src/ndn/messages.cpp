#include "psim/ndn/messages.hpp"

namespace psim::ndn {

namespace {
constexpr std::size_t INTEREST_OVERHEAD = 20; // type/length, nonce, lifetime
constexpr std::size_t CONTENT_OVERHEAD = 20;  // type/length, signature block
} // namespace

std::size_t
wireSize(const Interest& interest)
{
  return interest.name.serializedLength() + INTEREST_OVERHEAD;
}

std::size_t
wireSize(const ContentObject& content)
{
  return content.name.serializedLength() + content.payloadSize + content.signer.size() +
         CONTENT_OVERHEAD;
}

std::size_t
wireSize(const Message& msg)
{
  return std::visit([] (const auto& m) { return wireSize(m); }, msg);
}

} // namespace psim::ndn
