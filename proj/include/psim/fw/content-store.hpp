#ifndef PSIM_FW_CONTENT_STORE_HPP
#define PSIM_FW_CONTENT_STORE_HPP

#include "psim/ndn/messages.hpp"

#include <list>
#include <optional>
#include <unordered_map>

namespace psim::fw {

/// Byte-bounded LRU cache of content objects. Capacity 0 disables caching.
class ContentStore
{
public:
  explicit
  ContentStore(std::size_t capacityBytes)
    : m_capacityBytes(capacityBytes)
  {
  }

  /// Returns a copy on hit and marks the entry most recently used.
  std::optional<ndn::ContentObject>
  find(const ndn::Name& name);

  void
  insert(const ndn::ContentObject& content);

  std::size_t
  usedBytes() const noexcept
  {
    return m_usedBytes;
  }

  std::size_t
  size() const noexcept
  {
    return m_index.size();
  }

  bool
  contains(const ndn::Name& name) const
  {
    return m_index.count(name) > 0;
  }

private:
  void
  evictUntilFits(std::size_t incoming);

private:
  std::size_t m_capacityBytes;
  std::size_t m_usedBytes = 0;
  std::list<ndn::ContentObject> m_lru; // front = most recent
  std::unordered_map<ndn::Name, std::list<ndn::ContentObject>::iterator, ndn::NameHash> m_index;
};

} // namespace psim::fw

#endif // PSIM_FW_CONTENT_STORE_HPP
