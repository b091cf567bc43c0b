#ifndef PSIM_POSEIDON_ALERT_HPP
#define PSIM_POSEIDON_ALERT_HPP

#include "psim/ndn/trust.hpp"
#include "psim/poseidon/detection.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace psim::poseidon {

class MalformedAlert : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// "/pushback/alerts"
const ndn::Name&
alertPrefix();

bool
isAlertName(const ndn::Name& name);

struct AlertPayload
{
  std::uint64_t timestampMs = 0;
  /// interests/s the sender will accept from the offending interface
  std::uint64_t reducedRate = 0;
  std::vector<ndn::Name> offending;

  friend bool
  operator==(const AlertPayload&, const AlertPayload&) = default;
};

/**
 * Payload layout, all integers big-endian:
 *
 *   u64 timestamp_ms | u64 reduced_rate | u32 count | count x (u16 len | uri bytes)
 */
std::vector<std::uint8_t>
encodeAlertPayload(const AlertPayload& payload);

/// Throws MalformedAlert on truncation, trailing bytes or an invalid name.
AlertPayload
decodeAlertPayload(std::span<const std::uint8_t> bytes);

struct AlertMessage
{
  ndn::ContentObject carrier;
  std::uint64_t timestampMs = 0;
  std::uint64_t reducedRate = 0;
  std::vector<ndn::Name> offending;
};

/// Builds and signs an alert on behalf of \p victim.
AlertMessage
makeAlert(const NodeId& victim, FaceId face, Time now, std::vector<ndn::Name> offending,
          std::uint64_t reducedRate, const ndn::TrustRegistry& registry, std::uint64_t serial = 0);

/// Decodes the payload of an alert carrier. Throws MalformedAlert.
AlertMessage
parseAlert(const ndn::ContentObject& carrier);

enum class AlertVerdict
{
  Applied,
  BadSignature,
  Stale,
  TooSoon,
  Malformed,
};

std::string_view
toString(AlertVerdict verdict);

/// Signature, freshness and wait_time gating. On success records the
/// receipt time in \p state but does not touch thresholds.
AlertVerdict
acceptAlert(const AlertMessage& msg, Time now, PoseidonIfaceState& state,
            const ndn::TrustRegistry& registry, const PoseidonConfig& config);

/// acceptAlert() followed by Decrease(Omega, s) and Decrease(P, s) on \p state.
AlertVerdict
onAlert(const AlertMessage& msg, Time now, PoseidonIfaceState& state,
        const ndn::TrustRegistry& registry, const PoseidonConfig& config);

} // namespace psim::poseidon

#endif // PSIM_POSEIDON_ALERT_HPP
