#ifndef PSIM_TRAFFIC_ATTACKER_HPP
#define PSIM_TRAFFIC_ATTACKER_HPP

#include "psim/ndn/messages.hpp"

#include <optional>
#include <random>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

namespace psim::traffic {

enum class AttackStrategy
{
  ExistingStatic, ///< distinct names from the producer's static catalog
  Dynamic,        ///< names in the producer's per-request dynamic subspace
  NonExistent,    ///< fake interests: random names nobody can satisfy
};

std::string_view
toString(AttackStrategy strategy);

/// Accepts "existing-static", "dynamic", "non-existent"; throws std::invalid_argument.
AttackStrategy
parseAttackStrategy(std::string_view text);

struct AttackerSchedule
{
  ndn::Name targetPrefix;
  AttackStrategy strategy = AttackStrategy::NonExistent;
  Time spacing = fromMs(1.337);
  Time start = fromMs(1000);
  /// inclusive; runs to the end of the simulation when unset
  std::optional<Time> stop{};
  /// must match the target producer's catalog for ExistingStatic
  std::size_t staticCatalogSize = 10000;
};

void
validate(const AttackerSchedule& schedule);

/// Component of the static catalog / dynamic subspace under a producer namespace.
inline constexpr std::string_view STATIC_COMPONENT = "static";
inline constexpr std::string_view DYNAMIC_COMPONENT = "dyn";

class Attacker
{
public:
  explicit
  Attacker(AttackerSchedule schedule);

  const AttackerSchedule&
  schedule() const noexcept
  {
    return m_schedule;
  }

  std::optional<Time>
  nextEmission() const;

  /// Emits the next interest iff \p now is its scheduled instant.
  std::optional<ndn::Interest>
  emit(Time now, std::mt19937_64& rng);

  std::uint64_t
  emitted() const noexcept
  {
    return m_emitted;
  }

private:
  std::string
  randomComponent(std::mt19937_64& rng);

private:
  AttackerSchedule m_schedule;
  std::uint64_t m_emitted = 0;
  std::set<std::pair<std::uint64_t, std::uint64_t>> m_used;
  std::vector<std::size_t> m_staticOrder;
};

} // namespace psim::traffic

#endif // PSIM_TRAFFIC_ATTACKER_HPP
