#include "psim/traffic/attacker.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <string>

namespace psim::traffic {

std::string_view
toString(AttackStrategy strategy)
{
  switch (strategy) {
    case AttackStrategy::ExistingStatic:
      return "existing-static";
    case AttackStrategy::Dynamic:
      return "dynamic";
    case AttackStrategy::NonExistent:
      return "non-existent";
  }
  return "?";
}

AttackStrategy
parseAttackStrategy(std::string_view text)
{
  for (auto s : {AttackStrategy::ExistingStatic, AttackStrategy::Dynamic,
                 AttackStrategy::NonExistent}) {
    if (toString(s) == text) {
      return s;
    }
  }
  throw std::invalid_argument("unknown attack strategy '" + std::string(text) + "'");
}

void
validate(const AttackerSchedule& s)
{
  if (s.spacing <= Time{0}) {
    throw std::invalid_argument("attacker spacing must be > 0");
  }
  if (s.start < Time{0} || (s.stop && *s.stop < s.start)) {
    throw std::invalid_argument("attacker start/stop out of order");
  }
  if (s.strategy == AttackStrategy::ExistingStatic && s.staticCatalogSize == 0) {
    throw std::invalid_argument("attacker static catalog is empty");
  }
}

Attacker::Attacker(AttackerSchedule schedule)
  : m_schedule(std::move(schedule))
{
  validate(m_schedule);
}

std::optional<Time>
Attacker::nextEmission() const
{
  Time t = m_schedule.start + m_schedule.spacing * static_cast<std::int64_t>(m_emitted);
  if (m_schedule.stop && t > *m_schedule.stop) {
    return std::nullopt;
  }
  return t;
}

std::string
Attacker::randomComponent(std::mt19937_64& rng)
{
  // 128 random bits; redraw on the (practically impossible) repeat so names
  // stay pairwise distinct within a run
  std::pair<std::uint64_t, std::uint64_t> bits;
  do {
    bits = {rng(), rng()};
  } while (!m_used.insert(bits).second);

  char buf[40];
  std::snprintf(buf, sizeof(buf), "%016llx%016llx", static_cast<unsigned long long>(bits.first),
                static_cast<unsigned long long>(bits.second));
  return buf;
}

std::optional<ndn::Interest>
Attacker::emit(Time now, std::mt19937_64& rng)
{
  auto due = nextEmission();
  if (!due || *due != now) {
    return std::nullopt;
  }

  const auto& prefix = m_schedule.targetPrefix;
  std::optional<ndn::Name> name;
  switch (m_schedule.strategy) {
    case AttackStrategy::NonExistent:
      name = prefix.append(randomComponent(rng));
      break;
    case AttackStrategy::Dynamic:
      name = prefix.append(DYNAMIC_COMPONENT).append(randomComponent(rng));
      break;
    case AttackStrategy::ExistingStatic: {
      if (m_staticOrder.empty()) {
        m_staticOrder.resize(m_schedule.staticCatalogSize);
        std::iota(m_staticOrder.begin(), m_staticOrder.end(), std::size_t{0});
        std::shuffle(m_staticOrder.begin(), m_staticOrder.end(), rng);
      }
      auto item = m_staticOrder[m_emitted % m_staticOrder.size()];
      name = prefix.append(STATIC_COMPONENT).append(std::to_string(item));
      break;
    }
  }
  ++m_emitted;
  return ndn::Interest{std::move(*name), rng(), now};
}

} // namespace psim::traffic
