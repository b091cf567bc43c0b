#include "psim/poseidon/detection.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace psim;
using namespace psim::poseidon;

namespace {

constexpr double P = 122880.0 / 8; // 15360

PoseidonIfaceState
fresh()
{
  return PoseidonIfaceState::withBases(3.0, P);
}

} // namespace

TEST_CASE("omega conventions")
{
  PoseidonIfaceState s;
  CHECK(computeOmega(s) == 0.0);
  s.interestsIn = 5;
  CHECK(std::isinf(computeOmega(s)));
  s.contentsOut = 2;
  CHECK(computeOmega(s) == doctest::Approx(2.5));
}

TEST_CASE("rho reads per-face PIT bytes")
{
  fw::Pit pit(122880, fromMs(4000));
  CHECK(computeRho(pit, FaceId{3}) == 0);

  // 500 entries of exactly 60 bytes (40-byte names) from face 3
  std::size_t expected = 0;
  for (int i = 0; i < 500; ++i) {
    auto suffix = std::to_string(i);
    auto name = ndn::Name::parse("/nsf/" + std::string(35 - suffix.size(), 'z') + suffix);
    pit.insert(name, FaceId{3}, fromMs(0), FaceId{0}, std::nullopt);
    expected += name.serializedLength() + 16 + 4; // replayed independently
  }
  CHECK(expected == 30000);
  CHECK(computeRho(pit, FaceId{3}) == expected);
  CHECK(computeRho(pit, FaceId{1}) == 0);
}

TEST_CASE("dual threshold examples with a 120 KB PIT")
{
  auto s = fresh();
  CHECK(detect(3.5, 20480, s));
  CHECK_FALSE(detect(3.5, 10000, s)); // short burst
  CHECK_FALSE(detect(0.9, 20480, s)); // slow drain
  CHECK_FALSE(detect(3.0, 20480, s)); // strict inequality
  CHECK_FALSE(detect(3.5, P, s));
}

TEST_CASE("closeInterval freezes omega and resets counters")
{
  auto s = fresh();
  s.interestsIn = 9;
  s.contentsOut = 0;
  CHECK(closeInterval(s, 20000, fromMs(60)));
  CHECK(std::isinf(s.lastOmega));
  CHECK(s.interestsIn == 0);
  CHECK(s.contentsOut == 0);
  CHECK(s.lastDetection == fromMs(60));
  CHECK_FALSE(closeInterval(s, 20000, fromMs(120))); // idle interval: omega 0
  CHECK(s.lastOmega == 0.0);
}

TEST_CASE("admission under saturation and alert spacing")
{
  PoseidonConfig cfg;
  fw::Pit pit(122880, fromMs(4000));
  // 35 B per entry, 600 entries = 21000 B
  for (int i = 0; i < 600; ++i) {
    pit.insert(ndn::Name::parse("/nsf/fia/" + std::to_string(100000 + i)), FaceId{1}, fromMs(0),
               FaceId{0}, std::nullopt);
  }
  REQUIRE(pit.faceBytes(FaceId{1}) > P);
  auto s = fresh();
  s.lastOmega = std::numeric_limits<double>::infinity();

  auto first = admitInterest(s, pit, FaceId{1}, fromMs(1000), cfg, true);
  CHECK_FALSE(first.admitted);
  CHECK(first.alertSent);
  auto second = admitInterest(s, pit, FaceId{1}, fromMs(1010), cfg, true);
  CHECK_FALSE(second.admitted);
  CHECK_FALSE(second.alertSent);
  // wait_time is strict: exactly 60 ms later is still too soon
  CHECK_FALSE(admitInterest(s, pit, FaceId{1}, fromMs(1060), cfg, true).alertSent);
  CHECK(admitInterest(s, pit, FaceId{1}, fromMs(1061), cfg, true).alertSent);
  CHECK(s.interestsIn == 4);

  // local mode filters but never alerts
  auto local = fresh();
  local.lastOmega = std::numeric_limits<double>::infinity();
  auto d = admitInterest(local, pit, FaceId{1}, fromMs(1000), cfg, false);
  CHECK_FALSE(d.admitted);
  CHECK_FALSE(d.alertSent);
}

TEST_CASE("baseline traffic is admitted")
{
  PoseidonConfig cfg;
  fw::Pit pit(122880, fromMs(4000));
  auto s = fresh();
  s.lastOmega = 1.0;
  CHECK(admitInterest(s, pit, FaceId{1}, fromMs(0), cfg, true).admitted);
}

TEST_CASE("restore tick examples")
{
  PoseidonConfig cfg;
  auto s = fresh();
  decrease(s, 2.0);
  REQUIRE(s.omegaThresh == 1.5);
  s.lastAlertReceived = fromMs(0);
  CHECK_FALSE(restoreTick(s, fromMs(1000), cfg)); // quiet period not over
  CHECK(restoreTick(s, fromMs(1060), cfg));
  CHECK(s.omegaThresh == 1.6875);
  CHECK(s.rhoThresh == P / 2 * 9 / 8);

  auto near = fresh();
  near.omegaThresh = 2.9;
  CHECK(restoreTick(near, fromMs(5000), cfg));
  CHECK(near.omegaThresh == 3.0);

  auto busy = fresh();
  busy.omegaThresh = 1.5;
  busy.lastDetection = fromMs(4990);
  CHECK_FALSE(restoreTick(busy, fromMs(5000), cfg));
  CHECK(busy.omegaThresh == 1.5);
}

TEST_CASE("property: k decreases give base / 2^k exactly")
{
  for (int k = 0; k <= 20; ++k) {
    auto s = fresh();
    for (int i = 0; i < k; ++i) {
      decrease(s, 2.0);
    }
    CHECK(s.omegaThresh == std::ldexp(3.0, -k));
    CHECK(s.rhoThresh == std::ldexp(P, -k));
  }
}

TEST_CASE("property: restoration is monotone, x 9/8 per tick, capped at base")
{
  PoseidonConfig cfg;
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = fresh();
    int k = static_cast<int>(rng() % 8);
    for (int i = 0; i < k; ++i) {
      decrease(s, 2.0);
    }
    Time now = fromMs(2000);
    double prev = s.omegaThresh;
    for (int tick = 0; tick < 80; ++tick) {
      now += cfg.detectionInterval;
      restoreTick(s, now, cfg);
      double want = std::min(3.0, prev * 9.0 / 8.0);
      REQUIRE(s.omegaThresh == want);
      REQUIRE(s.omegaThresh >= prev);
      REQUIRE(s.omegaThresh <= s.omegaBase);
      REQUIRE(s.rhoThresh <= s.rhoBase);
      prev = s.omegaThresh;
    }
    CHECK(s.omegaThresh == 3.0);
    CHECK(s.rhoThresh == P);
  }
}

TEST_CASE("config validation")
{
  PoseidonConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  cfg.scale = 1.0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = {};
  cfg.waitTime = Time{0};
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  CHECK((parseMode("pushback") == Mode::Pushback));
  CHECK(std::string(toString(Mode::Local)) == "local");
  CHECK_THROWS_AS(parseMode("on"), std::invalid_argument);
}
