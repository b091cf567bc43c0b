#include "psim/fw/content-store.hpp"
#include "psim/fw/fib.hpp"

#include <doctest.h>

using namespace psim;
using ndn::Name;

TEST_CASE("fib longest prefix match")
{
  fw::Fib fib;
  fib.addRoute(Name::parse("/nsf"), FaceId{1});
  fib.addRoute(Name::parse("/nsf/fia"), FaceId{2});
  auto m = fib.lookup(Name::parse("/nsf/fia/x"));
  CHECK(m.face == FaceId{2});
  CHECK(m.prefix == Name::parse("/nsf/fia"));
  CHECK(fib.lookup(Name::parse("/nsf/other")).face == FaceId{1});
  CHECK_THROWS_AS(fib.lookup(Name::parse("/cnn")), fw::NoRoute);
  CHECK_FALSE(fib.findLongestMatch(Name::parse("/cnn")));
}

TEST_CASE("fib default route")
{
  fw::Fib fib;
  fib.setDefaultRoute(FaceId{0});
  auto m = fib.lookup(Name::parse("/anything/at/all"));
  CHECK(m.face == FaceId{0});
  CHECK_FALSE(m.prefix);
  fib.addRoute(Name::parse("/a"), FaceId{4});
  CHECK(fib.lookup(Name::parse("/a/b")).face == FaceId{4});
  CHECK(fib.size() == 2);
}

TEST_CASE("fib replaces an exact prefix")
{
  fw::Fib fib;
  fib.addRoute(Name::parse("/a"), FaceId{1});
  fib.addRoute(Name::parse("/a"), FaceId{2});
  CHECK(fib.lookup(Name::parse("/a/x")).face == FaceId{2});
  CHECK(fib.size() == 1);
}

namespace {

ndn::ContentObject
obj(const std::string& uri, std::size_t size)
{
  return {Name::parse(uri), size, "P", 0, {}};
}

} // namespace

TEST_CASE("content store is strictly LRU within its byte budget")
{
  fw::ContentStore cs(300);
  cs.insert(obj("/a", 100));
  cs.insert(obj("/b", 100));
  cs.insert(obj("/c", 100));
  CHECK(cs.usedBytes() == 300);
  REQUIRE(cs.find(Name::parse("/a"))); // /a becomes most recent
  cs.insert(obj("/d", 100));
  CHECK_FALSE(cs.contains(Name::parse("/b")));
  CHECK(cs.contains(Name::parse("/a")));
  cs.insert(obj("/e", 200));
  CHECK_FALSE(cs.contains(Name::parse("/c")));
  CHECK_FALSE(cs.contains(Name::parse("/a")));
  CHECK(cs.contains(Name::parse("/d")));
  CHECK(cs.usedBytes() <= 300);
}

TEST_CASE("zero capacity disables caching")
{
  fw::ContentStore cs(0);
  cs.insert(obj("/a", 1));
  CHECK(cs.size() == 0);
  CHECK_FALSE(cs.find(Name::parse("/a")));
}

TEST_CASE("reinsert replaces without double counting")
{
  fw::ContentStore cs(1000);
  cs.insert(obj("/a", 100));
  cs.insert(obj("/a", 150));
  CHECK(cs.size() == 1);
  CHECK(cs.usedBytes() == 150);
}
