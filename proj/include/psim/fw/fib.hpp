#ifndef PSIM_FW_FIB_HPP
#define PSIM_FW_FIB_HPP

#include "psim/common/ids.hpp"
#include "psim/ndn/name.hpp"

#include <optional>
#include <stdexcept>
#include <unordered_map>

namespace psim::fw {

class NoRoute : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct FibMatch
{
  FaceId face;
  /// Matched prefix; nullopt when the default route ("/") matched.
  std::optional<ndn::Name> prefix;
};

/// Single-nexthop FIB with longest-prefix match.
class Fib
{
public:
  /// Adds or replaces the route for exactly \p prefix.
  void
  addRoute(const ndn::Name& prefix, FaceId face);

  /// Route for "/", matched when nothing longer does.
  void
  setDefaultRoute(FaceId face)
  {
    m_default = face;
  }

  std::optional<FibMatch>
  findLongestMatch(const ndn::Name& name) const;

  /// Throws NoRoute.
  FibMatch
  lookup(const ndn::Name& name) const;

  std::size_t
  size() const noexcept
  {
    return m_routes.size() + (m_default ? 1 : 0);
  }

private:
  std::unordered_map<ndn::Name, FaceId, ndn::NameHash> m_routes;
  std::optional<FaceId> m_default;
  std::size_t m_longest = 0;
};

} // namespace psim::fw

#endif // PSIM_FW_FIB_HPP
