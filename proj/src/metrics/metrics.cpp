#include "psim/metrics/metrics.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace psim::metrics {

InterestLedger&
InterestLedger::operator+=(const InterestLedger& o)
{
  emitted += o.emitted;
  delivered += o.delivered;
  cacheHits += o.cacheHits;
  collapsed += o.collapsed;
  dropPoseidon += o.dropPoseidon;
  dropPitFull += o.dropPitFull;
  dropDup += o.dropDup;
  dropLink += o.dropLink;
  dropNoRoute += o.dropNoRoute;
  dropMisrouted += o.dropMisrouted;
  inFlight += o.inFlight;
  return *this;
}

std::string
formatNumber(double value)
{
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, r.ptr);
}

void
writeMetricsCsv(std::ostream& os, const MetricsBundle& bundle)
{
  os << METRICS_CSV_HEADER << '\n';
  for (const auto& r : bundle.records) {
    os << formatNumber(r.timeMs) << ',' << r.router << ',' << formatNumber(r.pitUsedBytes) << ','
       << formatNumber(r.contentsCum) << ',' << formatNumber(r.dropsPoseidonCum) << ','
       << formatNumber(r.dropsPitFullCum) << ',' << formatNumber(r.dropsDupCum) << ','
       << formatNumber(r.alertsSentCum) << '\n';
  }
}

namespace {

double
parseNumber(std::string_view field, std::size_t line)
{
  double value = 0;
  auto r = std::from_chars(field.data(), field.data() + field.size(), value);
  if (r.ec != std::errc{} || r.ptr != field.data() + field.size()) {
    throw std::runtime_error("metrics csv line " + std::to_string(line) + ": bad number '" +
                             std::string(field) + "'");
  }
  return value;
}

} // namespace

MetricsBundle
readMetricsCsv(std::istream& is)
{
  std::string line;
  if (!std::getline(is, line) || line != METRICS_CSV_HEADER) {
    throw std::runtime_error("metrics csv: unexpected header");
  }
  MetricsBundle bundle;
  std::size_t lineNo = 1;
  while (std::getline(is, line)) {
    ++lineNo;
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) {
      fields.push_back(f);
    }
    if (fields.size() != 8) {
      throw std::runtime_error("metrics csv line " + std::to_string(lineNo) + ": expected 8 fields");
    }
    MetricsRecord r;
    r.timeMs = parseNumber(fields[0], lineNo);
    r.router = fields[1];
    r.pitUsedBytes = parseNumber(fields[2], lineNo);
    r.contentsCum = parseNumber(fields[3], lineNo);
    r.dropsPoseidonCum = parseNumber(fields[4], lineNo);
    r.dropsPitFullCum = parseNumber(fields[5], lineNo);
    r.dropsDupCum = parseNumber(fields[6], lineNo);
    r.alertsSentCum = parseNumber(fields[7], lineNo);
    if (bundle.records.empty() || bundle.records.front().timeMs == r.timeMs) {
      bundle.routers.push_back(r.router);
    }
    bundle.horizonMs = r.timeMs;
    bundle.records.push_back(std::move(r));
  }
  return bundle;
}

std::map<std::string, double>
finalContents(const MetricsBundle& bundle)
{
  std::map<std::string, double> out;
  for (const auto& r : bundle.records) {
    out[r.router] = r.contentsCum; // records are time-ordered; last one wins
  }
  return out;
}

RelativeThroughput
relativeThroughput(const MetricsBundle& run, const MetricsBundle& baseline)
{
  if (run.routers != baseline.routers) {
    throw MismatchedTopology("router sets differ between run and baseline");
  }
  if (run.horizonMs != baseline.horizonMs) {
    throw MismatchedTopology("horizons differ between run and baseline");
  }
  auto runFinal = finalContents(run);
  auto baseFinal = finalContents(baseline);
  RelativeThroughput out;
  for (const auto& router : run.routers) {
    double base = baseFinal[router];
    if (base == 0) {
      out.emplace_back(router, std::nullopt);
    }
    else {
      out.emplace_back(router, 100.0 * runFinal[router] / base);
    }
  }
  return out;
}

void
writeRelativeCsv(std::ostream& os, const RelativeThroughput& rel)
{
  os << RELATIVE_CSV_HEADER << '\n';
  for (const auto& [router, pct] : rel) {
    os << router << ',' << (pct ? formatNumber(*pct) : std::string("NA")) << '\n';
  }
}

std::vector<double>
contentDeltas(const MetricsBundle& bundle, const std::string& router)
{
  std::vector<double> out;
  std::optional<double> prev;
  for (const auto& r : bundle.records) {
    if (r.router == router) {
      if (prev) {
        out.push_back(r.contentsCum - *prev);
      }
      prev = r.contentsCum;
    }
  }
  return out;
}

std::vector<std::pair<double, double>>
pitSeries(const MetricsBundle& bundle, const std::string& router)
{
  std::vector<std::pair<double, double>> out;
  for (const auto& r : bundle.records) {
    if (r.router == router) {
      out.emplace_back(r.timeMs, r.pitUsedBytes);
    }
  }
  return out;
}

const RouterSummary*
findSummary(const MetricsBundle& bundle, const std::string& router)
{
  for (const auto& s : bundle.summaries) {
    if (s.router == router) {
      return &s;
    }
  }
  return nullptr;
}

MetricsBundle
averageBundles(std::span<const MetricsBundle> runs)
{
  if (runs.empty()) {
    throw std::invalid_argument("averageBundles: no runs");
  }
  MetricsBundle avg = runs.front();
  if (runs.size() == 1) {
    return avg;
  }
  const auto n = static_cast<double>(runs.size());
  for (const auto& run : runs.subspan(1)) {
    if (run.records.size() != avg.records.size() || run.routers != avg.routers) {
      throw MismatchedTopology("cannot average runs with different shapes");
    }
  }

  for (std::size_t i = 0; i < avg.records.size(); ++i) {
    auto& a = avg.records[i];
    for (const auto& run : runs.subspan(1)) {
      const auto& r = run.records[i];
      a.pitUsedBytes += r.pitUsedBytes;
      a.contentsCum += r.contentsCum;
      a.dropsPoseidonCum += r.dropsPoseidonCum;
      a.dropsPitFullCum += r.dropsPitFullCum;
      a.dropsDupCum += r.dropsDupCum;
      a.alertsSentCum += r.alertsSentCum;
    }
    a.pitUsedBytes /= n;
    a.contentsCum /= n;
    a.dropsPoseidonCum /= n;
    a.dropsPitFullCum /= n;
    a.dropsDupCum /= n;
    a.alertsSentCum /= n;
  }

  for (std::size_t i = 0; i < avg.summaries.size(); ++i) {
    auto& s = avg.summaries[i];
    double firstSum = s.firstPoseidonDropMs.value_or(0);
    int firstCount = s.firstPoseidonDropMs ? 1 : 0;
    for (const auto& run : runs.subspan(1)) {
      const auto& o = run.summaries.at(i);
      s.peakPitBytes += o.peakPitBytes;
      s.dropsNoRoute += o.dropsNoRoute;
      s.collapsed += o.collapsed;
      s.cacheHits += o.cacheHits;
      s.alertsApplied += o.alertsApplied;
      s.alertsRejected += o.alertsRejected;
      if (o.firstPoseidonDropMs) {
        firstSum += *o.firstPoseidonDropMs;
        ++firstCount;
      }
    }
    s.peakPitBytes /= n;
    s.dropsNoRoute /= n;
    s.collapsed /= n;
    s.cacheHits /= n;
    s.alertsApplied /= n;
    s.alertsRejected /= n;
    s.firstPoseidonDropMs = firstCount > 0 ? std::optional<double>(firstSum / firstCount)
                                           : std::nullopt;
  }

  for (const auto& run : runs.subspan(1)) {
    avg.ledger += run.ledger;
    avg.linkDrops += run.linkDrops;
  }
  return avg;
}

} // namespace psim::metrics
