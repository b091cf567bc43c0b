#include "psim/fw/fib.hpp"

#include <algorithm>

namespace psim::fw {

void
Fib::addRoute(const ndn::Name& prefix, FaceId face)
{
  m_routes.insert_or_assign(prefix, face);
  m_longest = std::max(m_longest, prefix.size());
}

std::optional<FibMatch>
Fib::findLongestMatch(const ndn::Name& name) const
{
  for (std::size_t len = std::min(name.size(), m_longest); len > 0; --len) {
    auto prefix = name.getPrefix(len);
    auto it = m_routes.find(prefix);
    if (it != m_routes.end()) {
      return FibMatch{it->second, std::move(prefix)};
    }
  }
  if (m_default) {
    return FibMatch{*m_default, std::nullopt};
  }
  return std::nullopt;
}

FibMatch
Fib::lookup(const ndn::Name& name) const
{
  auto match = findLongestMatch(name);
  if (!match) {
    throw NoRoute("no route for " + name.toUri());
  }
  return *match;
}

} // namespace psim::fw
