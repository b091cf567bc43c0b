#ifndef PSIM_FW_FORWARDER_HPP
#define PSIM_FW_FORWARDER_HPP

#include "psim/fw/content-store.hpp"
#include "psim/fw/fib.hpp"
#include "psim/fw/pit.hpp"
#include "psim/ndn/messages.hpp"

#include <variant>
#include <vector>

namespace psim::fw {

struct ReplyFromCache
{
  ndn::ContentObject content;
};

struct Collapsed
{
};

struct DroppedDuplicate
{
};

struct Forward
{
  FaceId outFace;
};

struct DroppedPitFull
{
};

/// No FIB match: dropped silently, no PIT state.
struct DroppedNoRoute
{
};

using ForwardDecision =
  std::variant<ReplyFromCache, Collapsed, DroppedDuplicate, Forward, DroppedPitFull, DroppedNoRoute>;

struct OutgoingContent
{
  FaceId face;
  ndn::ContentObject content;
};

struct ForwarderConfig
{
  std::size_t pitCapacityBytes = 120 * 1024;
  Time interestLifetime = fromMs(4000);
  std::size_t csCapacityBytes = 0;
};

/**
 * \brief NDN forwarding plane of one router: CS, PIT and FIB.
 *
 * Admission control (Poseidon) sits in front of onInterest() and is not
 * part of this class.
 */
class Forwarder
{
public:
  explicit
  Forwarder(const ForwarderConfig& config = {});

  ForwardDecision
  onInterest(FaceId face, const ndn::Interest& interest, Time now);

  /// Copies to send, one per arrival interface; empty for unsolicited content.
  std::vector<OutgoingContent>
  onContent(FaceId face, const ndn::ContentObject& content, Time now);

  std::size_t
  expirePit(Time now)
  {
    return m_pit.expire(now);
  }

  Pit&
  pit() noexcept
  {
    return m_pit;
  }

  const Pit&
  pit() const noexcept
  {
    return m_pit;
  }

  Fib&
  fib() noexcept
  {
    return m_fib;
  }

  const Fib&
  fib() const noexcept
  {
    return m_fib;
  }

  ContentStore&
  cs() noexcept
  {
    return m_cs;
  }

private:
  Pit m_pit;
  Fib m_fib;
  ContentStore m_cs;
};

} // namespace psim::fw

#endif // PSIM_FW_FORWARDER_HPP
