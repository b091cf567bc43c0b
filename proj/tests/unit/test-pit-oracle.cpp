#include "oracle/pit-reference.hpp"

#include <doctest.h>

using namespace psim;

TEST_CASE("reference model agrees with itself on a hand trace")
{
  oracle::ReferencePit ref(100, fromMs(10));
  auto a = ndn::Name::parse("/a");
  CHECK(ref.apply({oracle::OpKind::Interest, fromMs(0), a, FaceId{0}}) == oracle::Outcome::Forwarded);
  CHECK(ref.apply({oracle::OpKind::Interest, fromMs(1), a, FaceId{0}}) == oracle::Outcome::Duplicate);
  CHECK(ref.apply({oracle::OpKind::Interest, fromMs(1), a, FaceId{1}}) == oracle::Outcome::Collapsed);
  auto s = ref.snapshot({FaceId{0}, FaceId{1}});
  CHECK(s.usedBytes == 2 + 16 + 8);
  CHECK(s.faceBytes.at(0) == 26);
  CHECK(ref.apply({oracle::OpKind::Content, fromMs(2), a, FaceId{5}}) == oracle::Outcome::Satisfied);
  CHECK(ref.apply({oracle::OpKind::Content, fromMs(3), a, FaceId{5}}) == oracle::Outcome::Unsolicited);
}

TEST_CASE("PIT matches the brute-force reference on 100 random traces")
{
  auto report = oracle::runPitOracle(2024, 100, 1000);
  INFO(report.firstMismatch.value_or(""));
  CHECK_FALSE(report.firstMismatch);
  CHECK(report.traces == 100);
}

TEST_CASE("the comparison detects a corrupted state")
{
  // guards against a vacuous oracle: a dropped in-record must show up
  fw::Forwarder fwd({1000, fromMs(50), 0});
  fwd.fib().setDefaultRoute(FaceId{9});
  oracle::ReferencePit ref(1000, fromMs(50));
  auto n = ndn::Name::parse("/x");
  oracle::TraceOp op{oracle::OpKind::Interest, fromMs(0), n, FaceId{1}};
  oracle::applyToForwarder(fwd, op);
  ref.apply(op);
  ref.apply({oracle::OpKind::Interest, fromMs(0), n, FaceId{2}});
  std::vector<FaceId> faces{FaceId{1}, FaceId{2}};
  CHECK(oracle::snapshotOf(fwd.pit(), faces) != ref.snapshot(faces));
}
