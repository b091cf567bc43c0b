#include "psim/sim/link.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace psim;
using sim::Link;

TEST_CASE("serialization plus propagation")
{
  Link link({10e6, fromMs(1), 100});
  // 1024 bytes = 8192 bits at 10 Mb/s
  CHECK(link.serializationTime(1024) == fromMs(0.8192));
  CHECK(link.transmit(0, 1024, fromMs(0)) == fromMs(1.8192));
}

TEST_CASE("zero-delay link")
{
  Link link({10e6, Time{0}, 100});
  CHECK(link.transmit(0, 1024, fromMs(5)) == fromMs(5.8192));
}

TEST_CASE("FIFO per direction, directions independent")
{
  Link link({8e6, fromMs(1), 100}); // 1 byte per microsecond
  CHECK(link.transmit(0, 1000, fromMs(0)) == fromMs(2));
  CHECK(link.transmit(0, 1000, fromMs(0)) == fromMs(3));
  CHECK(link.transmit(1, 1000, fromMs(0)) == fromMs(2));
  // once the queue drains, a new message starts immediately
  CHECK(link.transmit(0, 1000, fromMs(10)) == fromMs(12));
}

TEST_CASE("tail drop when the queue is full")
{
  Link link({8e6, fromMs(1), 2});
  CHECK(link.transmit(0, 1000, fromMs(0)));
  CHECK(link.transmit(0, 1000, fromMs(0)));
  CHECK_FALSE(link.transmit(0, 1000, fromMs(0)));
  CHECK(link.drops(0) == 1);
  CHECK(link.drops(1) == 0);
  // first message finished serializing at 1 ms, freeing a slot
  CHECK(link.transmit(0, 1000, fromMs(1)) == fromMs(4));
  CHECK(link.drops() == 1);
}

TEST_CASE("invalid parameters")
{
  CHECK_THROWS_AS(Link({0, fromMs(1), 1}), std::invalid_argument);
  CHECK_THROWS_AS(Link({1e6, fromMs(-1), 1}), std::invalid_argument);
  CHECK_THROWS_AS(Link({1e6, fromMs(1), 0}), std::invalid_argument);
}
