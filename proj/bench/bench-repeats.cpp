// Wall-clock comparison of the parallel and serial repeat runners.
#include "psim/parallel/repeat-runner.hpp"
#include "psim/sim/log.hpp"

#include <chrono>
#include <iostream>

using namespace psim;

namespace {

template<typename Fn>
double
timeSeconds(Fn&& fn)
{
  auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int
main(int argc, char** argv)
{
  initLogging();
  std::string path = argc > 1 ? argv[1] : std::string(PSIM_SCENARIO_DIR) + "/baseline.json";
  std::size_t repeats = argc > 2 ? std::stoul(argv[2]) : 8;
  double untilMs = argc > 3 ? std::stod(argv[3]) : 30000;

  auto s = scenario::loadScenario(path);
  std::optional<Time> until = fromMs(untilMs);

  std::vector<metrics::MetricsBundle> serial, parallel;
  double ts = timeSeconds([&] { serial = parallel::runSeedsSerial(s, repeats, until); });
  double tp = timeSeconds([&] { parallel = parallel::runSeeds(s, repeats, until); });

  bool same = serial.size() == parallel.size();
  for (std::size_t i = 0; same && i < serial.size(); ++i) {
    same = serial[i].records == parallel[i].records;
  }

  std::cout << "scenario " << path << ", " << repeats << " repeats, " << untilMs << " ms\n"
            << "threads  " << parallel::threadCount() << '\n'
            << "serial   " << ts << " s\n"
            << "parallel " << tp << " s\n"
            << "speedup  " << (tp > 0 ? ts / tp : 0) << "x\n"
            << "results  " << (same ? "identical" : "DIFFERENT") << '\n';
  return same ? 0 : 1;
}
