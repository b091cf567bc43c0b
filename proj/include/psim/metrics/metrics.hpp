#ifndef PSIM_METRICS_METRICS_HPP
#define PSIM_METRICS_METRICS_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace psim::metrics {

/// One router snapshot. Counters are cumulative since t = 0.
struct MetricsRecord
{
  double timeMs = 0;
  std::string router;
  double pitUsedBytes = 0;
  double contentsCum = 0;
  double dropsPoseidonCum = 0;
  double dropsPitFullCum = 0;
  double dropsDupCum = 0;
  double alertsSentCum = 0;

  friend bool
  operator==(const MetricsRecord&, const MetricsRecord&) = default;
};

/// End-of-run values that are not part of the time series.
struct RouterSummary
{
  std::string router;
  std::optional<double> firstPoseidonDropMs;
  double peakPitBytes = 0;
  double dropsNoRoute = 0;
  double collapsed = 0;
  double cacheHits = 0;
  double alertsApplied = 0;
  double alertsRejected = 0;
};

/// Where every emitted interest ended up; the sum must equal `emitted`.
struct InterestLedger
{
  std::uint64_t emitted = 0;
  std::uint64_t delivered = 0; ///< reached a producer
  std::uint64_t cacheHits = 0;
  std::uint64_t collapsed = 0;
  std::uint64_t dropPoseidon = 0;
  std::uint64_t dropPitFull = 0;
  std::uint64_t dropDup = 0;
  std::uint64_t dropLink = 0;
  std::uint64_t dropNoRoute = 0;
  std::uint64_t dropMisrouted = 0;
  std::uint64_t inFlight = 0;

  std::uint64_t
  accounted() const
  {
    return delivered + cacheHits + collapsed + dropPoseidon + dropPitFull + dropDup + dropLink +
           dropNoRoute + dropMisrouted + inFlight;
  }

  bool
  balanced() const
  {
    return accounted() == emitted;
  }

  InterestLedger&
  operator+=(const InterestLedger& other);
};

struct MetricsBundle
{
  std::vector<std::string> routers;
  /// time-major, routers in `routers` order within one instant
  std::vector<MetricsRecord> records;
  std::vector<RouterSummary> summaries;
  InterestLedger ledger;
  std::uint64_t linkDrops = 0;
  double horizonMs = 0;
};

inline constexpr const char* METRICS_CSV_HEADER =
  "time_ms,router,pit_used_bytes,contents_cum,drops_poseidon_cum,drops_pitfull_cum,"
  "drops_dup_cum,alerts_sent_cum";

inline constexpr const char* RELATIVE_CSV_HEADER = "router,percent";

void
writeMetricsCsv(std::ostream& os, const MetricsBundle& bundle);

/// Reads what writeMetricsCsv() wrote (series only). Throws std::runtime_error.
MetricsBundle
readMetricsCsv(std::istream& is);

class MismatchedTopology : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Router -> percent; nullopt where the baseline forwarded nothing.
using RelativeThroughput = std::vector<std::pair<std::string, std::optional<double>>>;

/// 100 * final contents_cum(run) / final contents_cum(baseline), per router.
RelativeThroughput
relativeThroughput(const MetricsBundle& run, const MetricsBundle& baseline);

void
writeRelativeCsv(std::ostream& os, const RelativeThroughput& rel);

/// Final cumulative content count per router.
std::map<std::string, double>
finalContents(const MetricsBundle& bundle);

/// Content packets forwarded by \p router in each sample interval.
std::vector<double>
contentDeltas(const MetricsBundle& bundle, const std::string& router);

/// PIT usage samples of \p router, paired with their times.
std::vector<std::pair<double, double>>
pitSeries(const MetricsBundle& bundle, const std::string& router);

const RouterSummary*
findSummary(const MetricsBundle& bundle, const std::string& router);

/// Element-wise mean of bundles from repeated runs of one scenario; ledgers
/// and link drops are summed.
MetricsBundle
averageBundles(std::span<const MetricsBundle> runs);

/// Shortest round-trip decimal form, as used in the CSV files.
std::string
formatNumber(double value);

} // namespace psim::metrics

#endif // PSIM_METRICS_METRICS_HPP
