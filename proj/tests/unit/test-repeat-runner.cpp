#include "line-scenario.hpp"
#include "psim/parallel/repeat-runner.hpp"

#include <doctest.h>

using namespace psim;

TEST_CASE("parallel repeats equal the serial reference, in seed order")
{
  auto s = test::lineScenario(true, "pushback", 6000, 10);
  auto par = parallel::runSeeds(s, 6);
  auto ser = parallel::runSeedsSerial(s, 6);
  REQUIRE(par.size() == 6);
  REQUIRE(ser.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(par[i].records == ser[i].records);
    CHECK(par[i].ledger.emitted == ser[i].ledger.emitted);
  }
  CHECK(parallel::threadCount() >= 1);
}

TEST_CASE("averaged run is the mean of the seeds")
{
  auto s = test::lineScenario(true, "off", 6000, 3);
  auto runs = parallel::runSeedsSerial(s, 3);
  auto avg = parallel::runAveraged(s, 3);
  for (const auto& r : avg.routers) {
    double sum = 0;
    for (const auto& b : runs) {
      sum += metrics::finalContents(b).at(r);
    }
    CHECK(metrics::finalContents(avg).at(r) == doctest::Approx(sum / 3));
  }
}

TEST_CASE("zero repeats is rejected")
{
  auto s = test::lineScenario(false);
  CHECK_THROWS(parallel::runSeeds(s, 0));
}
