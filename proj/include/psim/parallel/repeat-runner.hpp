#ifndef PSIM_PARALLEL_REPEAT_RUNNER_HPP
#define PSIM_PARALLEL_REPEAT_RUNNER_HPP

#include "psim/metrics/metrics.hpp"
#include "psim/scenario/scenario.hpp"

#include <optional>
#include <vector>

namespace psim::parallel {

/// Runs \p scenario with seeds seed, seed+1, ..., seed+repeats-1, one
/// independent world per seed, spread over OpenMP threads. Results are in
/// seed order regardless of scheduling.
std::vector<metrics::MetricsBundle>
runSeeds(const scenario::Scenario& scenario, std::size_t repeats,
         std::optional<Time> until = std::nullopt);

/// Same contract as runSeeds(), one seed after the other on the calling thread.
std::vector<metrics::MetricsBundle>
runSeedsSerial(const scenario::Scenario& scenario, std::size_t repeats,
               std::optional<Time> until = std::nullopt);

/// Mean over runSeeds().
metrics::MetricsBundle
runAveraged(const scenario::Scenario& scenario, std::size_t repeats,
            std::optional<Time> until = std::nullopt);

int
threadCount();

} // namespace psim::parallel

#endif // PSIM_PARALLEL_REPEAT_RUNNER_HPP
