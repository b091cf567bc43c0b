#ifndef PSIM_POSEIDON_DETECTION_HPP
#define PSIM_POSEIDON_DETECTION_HPP

#include "psim/common/ids.hpp"
#include "psim/common/time.hpp"
#include "psim/fw/pit.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace psim::poseidon {

enum class Mode
{
  Off,      ///< no detection, no filtering
  Local,    ///< detection and drop filter, no alerts
  Pushback, ///< detection, drop filter and alerts
};

std::string_view
toString(Mode mode);

/// Accepts "off", "local", "pushback"; throws std::invalid_argument.
Mode
parseMode(std::string_view text);

struct PoseidonConfig
{
  Time detectionInterval = fromMs(60);
  Time waitTime = fromMs(60);
  double scale = 2.0;
  double restoreFraction = 1.0 / 8;
  Time quietPeriod = fromMs(1000);
  Time alertFreshness = fromMs(500);
  double omegaBase = 3.0;
  /// rho threshold base as a fraction of PIT capacity
  double rhoBaseFraction = 1.0 / 8;
  /// look-back window for expired-interest statistics
  Time statsWindow = fromMs(4000);
};

/// Throws std::invalid_argument naming the violated constraint.
void
validate(const PoseidonConfig& config);

/// Per-interface Poseidon counters and thresholds.
struct PoseidonIfaceState
{
  // counters of the current interval
  std::uint64_t interestsIn = 0;
  std::uint64_t contentsOut = 0;

  double omegaBase = 3.0;
  double omegaThresh = 3.0;
  double rhoBase = 0;
  double rhoThresh = 0;

  /// omega of the most recently completed interval; used for admission
  double lastOmega = 0;

  std::optional<Time> lastAlertSent;
  std::optional<Time> lastAlertReceived;
  std::optional<Time> lastDetection;
  /// last time an alert lowered this interface's thresholds
  std::optional<Time> lastAlertApplied;

  static PoseidonIfaceState
  withBases(double omegaBase, double rhoBase);

  /// Latest of detection / alert events; restoration waits for quiet after it.
  Time
  quietSince() const;
};

/// interests_in / contents_out, +inf when only interests arrived, 0 when idle.
double
computeOmega(const PoseidonIfaceState& state);

std::size_t
computeRho(const fw::Pit& pit, FaceId face);

bool
detect(double omega, double rho, const PoseidonIfaceState& state);

/// Ends the current interval: freezes omega, evaluates detection against
/// \p rho and resets the counters. Returns the detection result.
bool
closeInterval(PoseidonIfaceState& state, double rho, Time now);

struct Admission
{
  bool admitted = true;
  /// only meaningful for drops
  bool alertSent = false;

  static Admission
  admit()
  {
    return {true, false};
  }

  static Admission
  drop(bool alertSent)
  {
    return {false, alertSent};
  }
};

/// Drop filter for one arriving interest. Counts the interest, checks the
/// previous interval's omega and live rho against the thresholds, and on a
/// drop decides whether an alert is due (more than wait_time since the last).
Admission
admitInterest(PoseidonIfaceState& state, const fw::Pit& pit, FaceId face, Time now,
              const PoseidonConfig& config, bool alertsEnabled);

/// Divides both thresholds by \p scale.
void
decrease(PoseidonIfaceState& state, double scale);

/// After a quiet period, grows both thresholds by restoreFraction of their
/// current value, capped at base. Returns true if anything changed.
bool
restoreTick(PoseidonIfaceState& state, Time now, const PoseidonConfig& config);

} // namespace psim::poseidon

#endif // PSIM_POSEIDON_DETECTION_HPP
