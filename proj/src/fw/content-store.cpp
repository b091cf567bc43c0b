#include "psim/fw/content-store.hpp"

namespace psim::fw {

std::optional<ndn::ContentObject>
ContentStore::find(const ndn::Name& name)
{
  auto it = m_index.find(name);
  if (it == m_index.end()) {
    return std::nullopt;
  }
  m_lru.splice(m_lru.begin(), m_lru, it->second);
  return *it->second;
}

void
ContentStore::evictUntilFits(std::size_t incoming)
{
  while (!m_lru.empty() && m_usedBytes + incoming > m_capacityBytes) {
    const auto& victim = m_lru.back();
    m_usedBytes -= victim.payloadSize;
    m_index.erase(victim.name);
    m_lru.pop_back();
  }
}

void
ContentStore::insert(const ndn::ContentObject& content)
{
  if (content.payloadSize > m_capacityBytes) {
    return;
  }
  if (auto it = m_index.find(content.name); it != m_index.end()) {
    m_usedBytes -= it->second->payloadSize;
    m_lru.erase(it->second);
    m_index.erase(it);
  }
  evictUntilFits(content.payloadSize);
  m_lru.push_front(content);
  m_index.emplace(content.name, m_lru.begin());
  m_usedBytes += content.payloadSize;
}

} // namespace psim::fw
