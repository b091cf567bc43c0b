#include "psim/poseidon/detection.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace psim::poseidon {

std::string_view
toString(Mode mode)
{
  switch (mode) {
    case Mode::Off:
      return "off";
    case Mode::Local:
      return "local";
    case Mode::Pushback:
      return "pushback";
  }
  return "?";
}

Mode
parseMode(std::string_view text)
{
  if (text == "off") {
    return Mode::Off;
  }
  if (text == "local") {
    return Mode::Local;
  }
  if (text == "pushback") {
    return Mode::Pushback;
  }
  throw std::invalid_argument("unknown mode '" + std::string(text) + "'");
}

void
validate(const PoseidonConfig& c)
{
  if (!(c.scale > 1.0)) {
    throw std::invalid_argument("poseidon.scale must be > 1");
  }
  if (c.detectionInterval <= Time{0} || c.waitTime <= Time{0} || c.quietPeriod <= Time{0} ||
      c.alertFreshness <= Time{0} || c.statsWindow <= Time{0}) {
    throw std::invalid_argument("poseidon durations must be > 0");
  }
  if (!(c.omegaBase > 0) || !(c.rhoBaseFraction > 0) || !(c.restoreFraction > 0)) {
    throw std::invalid_argument("poseidon thresholds and restore fraction must be > 0");
  }
}

PoseidonIfaceState
PoseidonIfaceState::withBases(double omegaBase, double rhoBase)
{
  PoseidonIfaceState s;
  s.omegaBase = s.omegaThresh = omegaBase;
  s.rhoBase = s.rhoThresh = rhoBase;
  return s;
}

Time
PoseidonIfaceState::quietSince() const
{
  Time t{0};
  for (const auto& event : {lastDetection, lastAlertReceived, lastAlertApplied}) {
    if (event) {
      t = std::max(t, *event);
    }
  }
  return t;
}

double
computeOmega(const PoseidonIfaceState& state)
{
  if (state.contentsOut == 0) {
    return state.interestsIn == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return static_cast<double>(state.interestsIn) / static_cast<double>(state.contentsOut);
}

std::size_t
computeRho(const fw::Pit& pit, FaceId face)
{
  return pit.faceBytes(face);
}

bool
detect(double omega, double rho, const PoseidonIfaceState& state)
{
  return omega > state.omegaThresh && rho > state.rhoThresh;
}

bool
closeInterval(PoseidonIfaceState& state, double rho, Time now)
{
  state.lastOmega = computeOmega(state);
  bool detected = detect(state.lastOmega, rho, state);
  if (detected) {
    state.lastDetection = now;
  }
  state.interestsIn = 0;
  state.contentsOut = 0;
  return detected;
}

Admission
admitInterest(PoseidonIfaceState& state, const fw::Pit& pit, FaceId face, Time now,
              const PoseidonConfig& config, bool alertsEnabled)
{
  ++state.interestsIn;
  auto rho = static_cast<double>(computeRho(pit, face));
  if (!detect(state.lastOmega, rho, state)) {
    return Admission::admit();
  }

  state.lastDetection = now;
  bool alert = alertsEnabled &&
               (!state.lastAlertSent || now - *state.lastAlertSent > config.waitTime);
  if (alert) {
    state.lastAlertSent = now;
  }
  return Admission::drop(alert);
}

void
decrease(PoseidonIfaceState& state, double scale)
{
  state.omegaThresh /= scale;
  state.rhoThresh /= scale;
}

bool
restoreTick(PoseidonIfaceState& state, Time now, const PoseidonConfig& config)
{
  if (now - state.quietSince() <= config.quietPeriod) {
    return false;
  }
  double factor = 1.0 + config.restoreFraction;
  double omega = std::min(state.omegaBase, state.omegaThresh * factor);
  double rho = std::min(state.rhoBase, state.rhoThresh * factor);
  bool changed = omega != state.omegaThresh || rho != state.rhoThresh;
  state.omegaThresh = omega;
  state.rhoThresh = rho;
  return changed;
}

} // namespace psim::poseidon
