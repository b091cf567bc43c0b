#include "psim/poseidon/alert.hpp"

#include <limits>
#include <string>

namespace psim::poseidon {

const ndn::Name&
alertPrefix()
{
  static const ndn::Name prefix = ndn::Name::parse("/pushback/alerts");
  return prefix;
}

bool
isAlertName(const ndn::Name& name)
{
  return alertPrefix().isPrefixOf(name) && name.size() > alertPrefix().size();
}

namespace {

void
putUint(std::vector<std::uint8_t>& out, std::uint64_t value, int bytes)
{
  for (int i = bytes - 1; i >= 0; --i) {
    out.push_back(static_cast<std::uint8_t>((value >> (8 * i)) & 0xff));
  }
}

class Reader
{
public:
  explicit
  Reader(std::span<const std::uint8_t> bytes)
    : m_bytes(bytes)
  {
  }

  std::uint64_t
  getUint(int bytes)
  {
    need(static_cast<std::size_t>(bytes));
    std::uint64_t value = 0;
    for (int i = 0; i < bytes; ++i) {
      value = (value << 8) | m_bytes[m_pos++];
    }
    return value;
  }

  std::string_view
  getBytes(std::size_t n)
  {
    need(n);
    std::string_view view(reinterpret_cast<const char*>(m_bytes.data() + m_pos), n);
    m_pos += n;
    return view;
  }

  bool
  done() const
  {
    return m_pos == m_bytes.size();
  }

private:
  void
  need(std::size_t n) const
  {
    if (m_bytes.size() - m_pos < n) {
      throw MalformedAlert("alert payload truncated");
    }
  }

private:
  std::span<const std::uint8_t> m_bytes;
  std::size_t m_pos = 0;
};

} // namespace

std::vector<std::uint8_t>
encodeAlertPayload(const AlertPayload& payload)
{
  std::vector<std::uint8_t> out;
  putUint(out, payload.timestampMs, 8);
  putUint(out, payload.reducedRate, 8);
  putUint(out, payload.offending.size(), 4);
  for (const auto& name : payload.offending) {
    const auto& uri = name.toUri();
    if (uri.size() > std::numeric_limits<std::uint16_t>::max()) {
      throw MalformedAlert("offending name too long");
    }
    putUint(out, uri.size(), 2);
    out.insert(out.end(), uri.begin(), uri.end());
  }
  return out;
}

AlertPayload
decodeAlertPayload(std::span<const std::uint8_t> bytes)
{
  Reader r(bytes);
  AlertPayload p;
  p.timestampMs = r.getUint(8);
  p.reducedRate = r.getUint(8);
  auto count = r.getUint(4);
  for (std::uint64_t i = 0; i < count; ++i) {
    auto len = static_cast<std::size_t>(r.getUint(2));
    try {
      p.offending.push_back(ndn::Name::parse(r.getBytes(len)));
    }
    catch (const ndn::MalformedName& e) {
      throw MalformedAlert(std::string("bad offending name: ") + e.what());
    }
  }
  if (!r.done()) {
    throw MalformedAlert("trailing bytes in alert payload");
  }
  return p;
}

AlertMessage
makeAlert(const NodeId& victim, FaceId face, Time now, std::vector<ndn::Name> offending,
          std::uint64_t reducedRate, const ndn::TrustRegistry& registry, std::uint64_t serial)
{
  AlertMessage msg{
    ndn::ContentObject{alertPrefix()
                         .append(victim)
                         .append("f" + std::to_string(toUnderlying(face)))
                         .append(std::to_string(serial)),
                       0, victim, 0, {}},
    toWholeMs(now), reducedRate, std::move(offending)};

  msg.carrier.payload = encodeAlertPayload({msg.timestampMs, msg.reducedRate, msg.offending});
  msg.carrier.payloadSize = msg.carrier.payload.size();
  registry.signContent(msg.carrier);
  return msg;
}

AlertMessage
parseAlert(const ndn::ContentObject& carrier)
{
  if (!isAlertName(carrier.name)) {
    throw MalformedAlert("not in the alert namespace: " + carrier.name.toUri());
  }
  auto payload = decodeAlertPayload(carrier.payload);
  return AlertMessage{carrier, payload.timestampMs, payload.reducedRate,
                      std::move(payload.offending)};
}

std::string_view
toString(AlertVerdict verdict)
{
  switch (verdict) {
    case AlertVerdict::Applied:
      return "applied";
    case AlertVerdict::BadSignature:
      return "bad-signature";
    case AlertVerdict::Stale:
      return "stale";
    case AlertVerdict::TooSoon:
      return "too-soon";
    case AlertVerdict::Malformed:
      return "malformed";
  }
  return "?";
}

AlertVerdict
acceptAlert(const AlertMessage& msg, Time now, PoseidonIfaceState& state,
            const ndn::TrustRegistry& registry, const PoseidonConfig& config)
{
  if (!ndn::verifySignature(msg.carrier, registry)) {
    return AlertVerdict::BadSignature;
  }
  auto stamped = fromMs(static_cast<double>(msg.timestampMs));
  if (stamped > now || now - stamped > config.alertFreshness) {
    return AlertVerdict::Stale;
  }
  if (state.lastAlertReceived && now - *state.lastAlertReceived <= config.waitTime) {
    return AlertVerdict::TooSoon;
  }
  state.lastAlertReceived = now;
  return AlertVerdict::Applied;
}

AlertVerdict
onAlert(const AlertMessage& msg, Time now, PoseidonIfaceState& state,
        const ndn::TrustRegistry& registry, const PoseidonConfig& config)
{
  auto verdict = acceptAlert(msg, now, state, registry, config);
  if (verdict == AlertVerdict::Applied) {
    decrease(state, config.scale);
    state.lastAlertApplied = now;
  }
  return verdict;
}

} // namespace psim::poseidon
