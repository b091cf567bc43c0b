#include "psim/parallel/repeat-runner.hpp"

#include "psim/sim/world.hpp"

#include <exception>
#include <stdexcept>

#include <omp.h>

namespace psim::parallel {

namespace {

scenario::Scenario
withSeed(const scenario::Scenario& base, std::size_t i)
{
  auto s = base;
  s.seed = base.seed + i;
  return s;
}

} // namespace

std::vector<metrics::MetricsBundle>
runSeedsSerial(const scenario::Scenario& scenario, std::size_t repeats, std::optional<Time> until)
{
  if (repeats == 0) {
    throw std::invalid_argument("runSeedsSerial: repeats must be positive");
  }
  std::vector<metrics::MetricsBundle> out;
  out.reserve(repeats);
  for (std::size_t i = 0; i < repeats; ++i) {
    out.push_back(sim::runScenario(withSeed(scenario, i), until));
  }
  return out;
}

std::vector<metrics::MetricsBundle>
runSeeds(const scenario::Scenario& scenario, std::size_t repeats, std::optional<Time> until)
{
  if (repeats == 0) {
    throw std::invalid_argument("runSeeds: repeats must be positive");
  }
  std::vector<metrics::MetricsBundle> out(repeats);
  std::vector<std::exception_ptr> errors(repeats);
  const auto n = static_cast<std::int64_t>(repeats);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    auto idx = static_cast<std::size_t>(i);
    try {
      out[idx] = sim::runScenario(withSeed(scenario, idx), until);
    }
    catch (...) {
      errors[idx] = std::current_exception();
    }
  }

  for (auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  return out;
}

metrics::MetricsBundle
runAveraged(const scenario::Scenario& scenario, std::size_t repeats, std::optional<Time> until)
{
  auto runs = runSeeds(scenario, repeats, until);
  return metrics::averageBundles(runs);
}

int
threadCount()
{
  return omp_get_max_threads();
}

} // namespace psim::parallel
