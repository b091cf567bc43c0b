#include "psim/sim/event-queue.hpp"

#include <doctest.h>

#include <random>
#include <string>

using namespace psim;
using psim::sim::EventQueue;

TEST_CASE("events leave in time then schedule order")
{
  EventQueue<std::string> q;
  q.schedule(fromMs(5), "late");
  q.schedule(fromMs(1), "a");
  q.schedule(fromMs(1), "b");
  q.schedule(fromMs(0), "first");
  std::vector<std::string> got;
  while (!q.empty()) {
    got.push_back(q.pop().payload);
  }
  CHECK(got == std::vector<std::string>{"first", "a", "b", "late"});
  CHECK(q.now() == fromMs(5));
}

TEST_CASE("scheduling at now is allowed, the past is not")
{
  EventQueue<int> q;
  q.schedule(fromMs(3), 1);
  q.pop();
  CHECK_NOTHROW(q.schedule(fromMs(3), 2));
  CHECK_THROWS_AS(q.schedule(fromMs(2), 3), sim::SchedulingInPast);
  CHECK(q.nextTime() == fromMs(3));
}

TEST_CASE("pop on empty queue throws")
{
  EventQueue<int> q;
  CHECK_FALSE(q.nextTime());
  CHECK_THROWS_AS(q.pop(), std::logic_error);
}

TEST_CASE("property: clock never decreases and ties keep schedule order")
{
  std::mt19937_64 rng(4);
  EventQueue<std::uint64_t> q;
  for (int i = 0; i < 2000; ++i) {
    q.schedule(Time{static_cast<std::int64_t>(rng() % 50)}, static_cast<std::uint64_t>(i));
  }
  Time prevTime{-1};
  std::uint64_t prevSeq = 0;
  bool first = true;
  while (!q.empty()) {
    auto ev = q.pop();
    REQUIRE(ev.time >= prevTime);
    if (!first && ev.time == prevTime) {
      REQUIRE(ev.seq > prevSeq);
    }
    // handlers may schedule at the current instant
    if (ev.payload < 100) {
      q.schedule(q.now(), ev.payload + 10000);
    }
    prevTime = ev.time;
    prevSeq = ev.seq;
    first = false;
  }
}
