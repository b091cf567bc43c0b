#include "psim/metrics/metrics.hpp"
#include "psim/parallel/repeat-runner.hpp"
#include "psim/scenario/scenario.hpp"
#include "psim/sim/log.hpp"

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace psim;

namespace {

constexpr int EXIT_INPUT_ERROR = 2;

struct RunOptions
{
  fs::path scenario;
  fs::path out = "out";
  std::optional<std::uint64_t> seed;
  std::size_t repeats = 1;
  std::optional<fs::path> baseline;
  std::optional<std::string> mode;
  std::optional<double> untilMs;
};

nlohmann::json
summaryJson(const metrics::MetricsBundle& b, std::size_t repeats)
{
  const auto& l = b.ledger;
  nlohmann::json ledger = {{"emitted", l.emitted},
                           {"delivered", l.delivered},
                           {"cache_hits", l.cacheHits},
                           {"collapsed", l.collapsed},
                           {"drop_poseidon", l.dropPoseidon},
                           {"drop_pit_full", l.dropPitFull},
                           {"drop_duplicate", l.dropDup},
                           {"drop_link", l.dropLink},
                           {"drop_no_route", l.dropNoRoute},
                           {"drop_misrouted", l.dropMisrouted},
                           {"in_flight", l.inFlight}};
  nlohmann::json routers = nlohmann::json::array();
  for (const auto& s : b.summaries) {
    routers.push_back({{"router", s.router},
                       {"first_poseidon_drop_ms", s.firstPoseidonDropMs
                                                    ? nlohmann::json(*s.firstPoseidonDropMs)
                                                    : nlohmann::json(nullptr)},
                       {"peak_pit_bytes", s.peakPitBytes},
                       {"alerts_applied", s.alertsApplied},
                       {"alerts_rejected", s.alertsRejected}});
  }
  return {{"repeats", repeats},
          {"horizon_ms", b.horizonMs},
          {"link_drops", b.linkDrops},
          {"ledger", std::move(ledger)},
          {"routers", std::move(routers)}};
}

void
writeFile(const fs::path& path, const std::string& text)
{
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw std::runtime_error("cannot write " + path.string());
  }
  os << text;
}

int
runCommand(const RunOptions& opt)
{
  scenario::Scenario s;
  metrics::MetricsBundle baseline;
  try {
    if (!fs::exists(opt.scenario)) {
      std::cerr << "error: scenario file not found: " << opt.scenario.string() << '\n';
      return EXIT_INPUT_ERROR;
    }
    s = scenario::loadScenario(opt.scenario);
    if (opt.seed) {
      s.seed = *opt.seed;
    }
    if (opt.mode) {
      s.mode = poseidon::parseMode(*opt.mode);
    }
    if (opt.baseline) {
      auto path = *opt.baseline / "metrics.csv";
      std::ifstream in(path);
      if (!in) {
        std::cerr << "error: baseline metrics not found: " << path.string() << '\n';
        return EXIT_INPUT_ERROR;
      }
      baseline = metrics::readMetricsCsv(in);
    }
  }
  catch (const scenario::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return EXIT_INPUT_ERROR;
  }
  catch (const scenario::ValidationError& e) {
    std::cerr << "invalid scenario: " << e.what() << '\n';
    return EXIT_INPUT_ERROR;
  }
  catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return EXIT_INPUT_ERROR;
  }

  std::optional<Time> until;
  if (opt.untilMs) {
    until = fromMs(*opt.untilMs);
  }
  spdlog::info("running {} (seed {}, {} repeat(s), mode {})", opt.scenario.string(), s.seed,
               opt.repeats, poseidon::toString(s.mode));
  auto bundle = parallel::runAveraged(s, opt.repeats, until);

  fs::create_directories(opt.out);
  {
    std::ostringstream os;
    metrics::writeMetricsCsv(os, bundle);
    writeFile(opt.out / "metrics.csv", os.str());
  }
  writeFile(opt.out / "summary.json", summaryJson(bundle, opt.repeats).dump(2) + "\n");

  std::optional<metrics::RelativeThroughput> rel;
  if (opt.baseline) {
    try {
      rel = metrics::relativeThroughput(bundle, baseline);
    }
    catch (const metrics::MismatchedTopology& e) {
      std::cerr << "error: baseline does not match: " << e.what() << '\n';
      return EXIT_INPUT_ERROR;
    }
    std::ostringstream os;
    metrics::writeRelativeCsv(os, *rel);
    writeFile(opt.out / "relative.csv", os.str());
  }

  auto finals = metrics::finalContents(bundle);
  std::cout << "router,contents" << (rel ? ",relative_percent" : "") << '\n';
  for (std::size_t i = 0; i < bundle.routers.size(); ++i) {
    const auto& r = bundle.routers[i];
    std::cout << r << ',' << metrics::formatNumber(finals[r]);
    if (rel) {
      const auto& pct = (*rel)[i].second;
      std::cout << ',' << (pct ? metrics::formatNumber(*pct) : "NA");
    }
    std::cout << '\n';
  }
  const auto& l = bundle.ledger;
  std::cout << "interests emitted " << l.emitted << ", delivered " << l.delivered
            << ", poseidon drops " << l.dropPoseidon << ", pit-full drops " << l.dropPitFull
            << ", link drops " << l.dropLink << '\n';
  return 0;
}

} // namespace

int
main(int argc, char** argv)
{
  initLogging();

  CLI::App app{"Discrete-event NDN simulator with interest-flooding attacks and Poseidon"};
  app.require_subcommand(1);

  RunOptions opt;
  auto* run = app.add_subcommand("run", "Run a scenario and write metrics");
  run->add_option("--scenario", opt.scenario, "Scenario JSON file")->required();
  run->add_option("--out", opt.out, "Output directory")->capture_default_str();
  run->add_option("--seed", opt.seed, "Override the scenario seed");
  run->add_option("--repeats", opt.repeats, "Run seeds seed..seed+n-1 and average")
    ->check(CLI::PositiveNumber)
    ->capture_default_str();
  run->add_option("--baseline", opt.baseline, "Output directory of a baseline run");
  run->add_option("--mode", opt.mode, "Poseidon mode for every router")
    ->check(CLI::IsMember({"off", "local", "pushback"}));
  run->add_option("--until", opt.untilMs, "Stop at this simulation time (ms)")
    ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : EXIT_INPUT_ERROR;
  }

  try {
    return runCommand(opt);
  }
  catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
