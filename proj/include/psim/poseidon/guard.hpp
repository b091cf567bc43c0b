#ifndef PSIM_POSEIDON_GUARD_HPP
#define PSIM_POSEIDON_GUARD_HPP

#include "psim/poseidon/alert.hpp"

#include <deque>
#include <map>
#include <vector>

namespace psim::poseidon {

/// One admission decision with the values it was based on.
struct AdmissionRecord
{
  Time time;
  FaceId face;
  double omega;
  double rho;
  double omegaThresh;
  double rhoThresh;
  bool dropped;
};

/**
 * \brief Poseidon instance of a single router.
 *
 * Owns one PoseidonIfaceState per interface, runs the periodic detection
 * and restoration, keeps expired-interest statistics, and turns received
 * alerts into threshold decreases on the interfaces that feed the alerting
 * neighbour.
 */
class Guard
{
public:
  Guard(NodeId self, Mode mode, const PoseidonConfig& config, std::size_t pitCapacityBytes,
        const std::vector<FaceId>& faces);

  Mode
  mode() const noexcept
  {
    return m_mode;
  }

  bool
  enabled() const noexcept
  {
    return m_mode != Mode::Off;
  }

  const PoseidonConfig&
  config() const noexcept
  {
    return m_config;
  }

  PoseidonIfaceState&
  state(FaceId face);

  const PoseidonIfaceState&
  state(FaceId face) const;

  Admission
  onInterest(FaceId face, const fw::Pit& pit, Time now);

  void
  onContentSent(FaceId face);

  struct AlertOutcome
  {
    AlertVerdict verdict;
    /// interfaces whose thresholds were lowered
    std::vector<FaceId> decreased;
  };

  /**
   * Handles an alert carrier that arrived on \p face. Gating (signature,
   * freshness, wait_time) uses the state of \p face. When applied, every
   * interface that currently has PIT entries forwarded out of \p face and is
   * not already detecting gets Decrease(Omega, s) and Decrease(P, s).
   */
  AlertOutcome
  onAlert(FaceId face, const ndn::ContentObject& carrier, Time now, const fw::Pit& pit,
          const ndn::TrustRegistry& registry);

  /// Interval boundary: closes every interface's interval, then restores
  /// thresholds on quiet interfaces. Returns the number of detecting faces.
  std::size_t
  onTick(Time now, const fw::Pit& pit);

  /// Feeds the expired-interest statistics.
  void
  recordExpired(const fw::PitEntry& entry, Time now);

  /// Top-1 namespace by expired-interest count on \p face within the stats
  /// window; falls back to pending entries when nothing has expired yet.
  std::vector<ndn::Name>
  offendingNamespaces(FaceId face, Time now, const fw::Pit& pit);

  /// Rate (interests/s) currently being satisfied towards \p face.
  std::uint64_t
  reducedRate(FaceId face) const;

  AlertMessage
  buildAlert(FaceId face, Time now, const fw::Pit& pit, const ndn::TrustRegistry& registry);

  void
  setAdmissionLog(std::vector<AdmissionRecord>* log)
  {
    m_admissionLog = log;
  }

  const std::map<FaceId, PoseidonIfaceState>&
  states() const noexcept
  {
    return m_states;
  }

private:
  struct ExpiredRecord
  {
    Time time;
    ndn::Name ns;
  };

  void
  pruneStats(std::deque<ExpiredRecord>& records, Time now) const;

private:
  NodeId m_self;
  Mode m_mode;
  PoseidonConfig m_config;
  std::map<FaceId, PoseidonIfaceState> m_states;
  std::map<FaceId, std::deque<ExpiredRecord>> m_expired;
  std::map<FaceId, std::uint64_t> m_lastIntervalContents;
  std::uint64_t m_alertSerial = 0;
  std::vector<AdmissionRecord>* m_admissionLog = nullptr;
};

/// Namespace an entry is attributed to: its FIB prefix, or its first
/// component when routed by the default route.
ndn::Name
namespaceOf(const fw::PitEntry& entry);

} // namespace psim::poseidon

#endif // PSIM_POSEIDON_GUARD_HPP
