#include "psim/poseidon/alert.hpp"

#include <doctest.h>

#include <random>

using namespace psim;
using namespace psim::poseidon;

namespace {

ndn::TrustRegistry
registry()
{
  ndn::TrustRegistry reg;
  reg.registerNode("R3", 0xabc);
  reg.registerNode("R6", 0xdef);
  return reg;
}

PoseidonIfaceState
fresh()
{
  return PoseidonIfaceState::withBases(3.0, 15360.0);
}

} // namespace

TEST_CASE("payload golden bytes")
{
  AlertPayload p{0x0102, 7, {ndn::Name::parse("/nsf")}};
  std::vector<std::uint8_t> want{0, 0, 0, 0, 0, 0, 1, 2,  // timestamp
                                 0, 0, 0, 0, 0, 0, 0, 7,  // rate
                                 0, 0, 0, 1,              // count
                                 0, 4, '/', 'n', 's', 'f'};
  CHECK(encodeAlertPayload(p) == want);
  CHECK(decodeAlertPayload(want) == p);
}

TEST_CASE("payload decoding rejects bad input")
{
  auto bytes = encodeAlertPayload({5, 6, {ndn::Name::parse("/a/b")}});
  auto truncated = bytes;
  truncated.pop_back();
  CHECK_THROWS_AS(decodeAlertPayload(truncated), MalformedAlert);
  auto trailing = bytes;
  trailing.push_back(0);
  CHECK_THROWS_AS(decodeAlertPayload(trailing), MalformedAlert);
  auto badName = bytes;
  badName[22] = 'x'; // first byte of "/a/b"
  CHECK_THROWS_AS(decodeAlertPayload(badName), MalformedAlert);
  CHECK_THROWS_AS(decodeAlertPayload({}), MalformedAlert);
}

TEST_CASE("property: payload round trip")
{
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    AlertPayload p{rng(), rng(), {}};
    auto n = rng() % 4;
    for (std::uint64_t j = 0; j < n; ++j) {
      p.offending.push_back(ndn::Name::parse("/p" + std::to_string(rng() % 1000) + "/q"));
    }
    CHECK(decodeAlertPayload(encodeAlertPayload(p)) == p);
  }
}

TEST_CASE("make_alert: namespace, signature, payload")
{
  auto reg = registry();
  auto msg = makeAlert("R3", FaceId{2}, fromMs(1500.7), {ndn::Name::parse("/nsf")}, 120, reg);
  CHECK(isAlertName(msg.carrier.name));
  CHECK(alertPrefix().isPrefixOf(msg.carrier.name));
  CHECK(msg.carrier.name.toUri().rfind("/pushback/alerts/", 0) == 0);
  CHECK(ndn::verifySignature(msg.carrier, reg));
  CHECK(msg.timestampMs == 1500);
  auto parsed = parseAlert(msg.carrier);
  CHECK(parsed.offending == std::vector<ndn::Name>{ndn::Name::parse("/nsf")});
  CHECK(parsed.reducedRate == 120);
  CHECK_FALSE(isAlertName(alertPrefix()));
  CHECK_THROWS_AS(parseAlert({ndn::Name::parse("/nsf/x"), 0, "R3", 0, {}}), MalformedAlert);
}

TEST_CASE("on_alert examples")
{
  auto reg = registry();
  PoseidonConfig cfg;
  auto s = fresh();
  auto msg = makeAlert("R3", FaceId{1}, fromMs(1000), {}, 0, reg);
  CHECK((onAlert(msg, fromMs(1001), s, reg, cfg) == AlertVerdict::Applied));
  CHECK(s.omegaThresh == 1.5);
  CHECK(s.rhoThresh == 7680.0);

  auto again = makeAlert("R3", FaceId{1}, fromMs(1031), {}, 0, reg, 1);
  CHECK((onAlert(again, fromMs(1031), s, reg, cfg) == AlertVerdict::TooSoon));
  CHECK(s.omegaThresh == 1.5);

  auto forged = makeAlert("R3", FaceId{1}, fromMs(2000), {}, 0, reg, 2);
  forged.carrier.sigToken ^= 1;
  CHECK((onAlert(forged, fromMs(2000), s, reg, cfg) == AlertVerdict::BadSignature));

  auto old = makeAlert("R3", FaceId{1}, fromMs(2000), {}, 0, reg, 3);
  CHECK((onAlert(old, fromMs(2501), s, reg, cfg) == AlertVerdict::Stale));
  // a timestamp from the future is not fresh either
  CHECK((onAlert(old, fromMs(1999), s, reg, cfg) == AlertVerdict::Stale));
  CHECK(s.omegaThresh == 1.5);
}

TEST_CASE("property: applied alerts are spaced by more than wait_time")
{
  auto reg = registry();
  PoseidonConfig cfg;
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    auto s = fresh();
    Time now = fromMs(1000);
    std::optional<Time> lastApplied;
    int applied = 0;
    for (int i = 0; i < 60; ++i) {
      now += fromMs(std::uniform_real_distribution<double>(0, 120)(rng));
      auto msg = makeAlert("R6", FaceId{0}, now, {}, 0, reg, static_cast<std::uint64_t>(i));
      auto v = onAlert(msg, now, s, reg, cfg);
      bool due = !lastApplied || now - *lastApplied > cfg.waitTime;
      REQUIRE((v == AlertVerdict::Applied) == due);
      if (v == AlertVerdict::Applied) {
        lastApplied = now;
        ++applied;
      }
    }
    // no restoration here, so thresholds follow 3 / 2^k exactly
    CHECK(s.omegaThresh == std::ldexp(3.0, -applied));
  }
}

TEST_CASE("property: sent alerts are spaced by more than wait_time")
{
  PoseidonConfig cfg;
  fw::Pit pit(122880, fromMs(4000));
  for (int i = 0; i < 800; ++i) {
    pit.insert(ndn::Name::parse("/nsf/fia/" + std::to_string(i)), FaceId{1}, fromMs(0), FaceId{0},
               std::nullopt);
  }
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = fresh();
    s.lastOmega = std::numeric_limits<double>::infinity();
    Time now = fromMs(100);
    std::optional<Time> lastSent;
    for (int i = 0; i < 200; ++i) {
      now += fromMs(std::uniform_real_distribution<double>(0, 40)(rng));
      auto a = admitInterest(s, pit, FaceId{1}, now, cfg, true);
      REQUIRE_FALSE(a.admitted);
      if (a.alertSent) {
        REQUIRE((!lastSent || now - *lastSent > cfg.waitTime));
        lastSent = now;
      }
      else {
        REQUIRE((lastSent && now - *lastSent <= cfg.waitTime));
      }
    }
  }
}
