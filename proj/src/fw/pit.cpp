#include "psim/fw/pit.hpp"

#include <algorithm>
#include <cassert>

namespace psim::fw {

bool
PitEntry::hasFace(FaceId face) const
{
  return std::any_of(inRecords.begin(), inRecords.end(),
                     [face] (const InRecord& r) { return r.face == face; });
}

Pit::Pit(std::size_t capacityBytes, Time lifetime)
  : m_capacityBytes(capacityBytes)
  , m_lifetime(lifetime)
{
}

const PitEntry*
Pit::find(const ndn::Name& name) const
{
  auto it = m_table.find(name);
  return it == m_table.end() ? nullptr : &it->second.entry;
}

bool
Pit::canInsert(const ndn::Name& name) const
{
  return m_usedBytes + entrySize(name.serializedLength(), 1) <= m_capacityBytes;
}

void
Pit::charge(const PitEntry& entry, std::ptrdiff_t sign)
{
  for (const auto& rec : entry.inRecords) {
    auto& bytes = m_faceBytes[rec.face];
    if (sign > 0) {
      bytes += entry.sizeBytes;
    }
    else {
      assert(bytes >= entry.sizeBytes);
      bytes -= entry.sizeBytes;
      if (bytes == 0) {
        m_faceBytes.erase(rec.face);
      }
    }
  }
  if (sign > 0) {
    m_usedBytes += entry.sizeBytes;
  }
  else {
    m_usedBytes -= entry.sizeBytes;
  }
}

const PitEntry&
Pit::insert(const ndn::Name& name, FaceId face, Time now, FaceId outFace,
            std::optional<ndn::Name> routePrefix)
{
  assert(find(name) == nullptr);
  assert(canInsert(name));

  PitEntry entry{name, {{face, now}}, now, now + m_lifetime, outFace, std::move(routePrefix),
                 entrySize(name.serializedLength(), 1)};
  auto serial = m_nextSerial++;
  m_deadlines.push_back({entry.expiryTime, serial, name});
  charge(entry, +1);
  auto [it, ok] = m_table.emplace(name, Slot{std::move(entry), serial});
  return it->second.entry;
}

bool
Pit::addInRecord(const ndn::Name& name, FaceId face, Time now)
{
  auto it = m_table.find(name);
  assert(it != m_table.end());
  auto& entry = it->second.entry;
  assert(!entry.hasFace(face));
  if (m_usedBytes + BYTES_PER_FACE > m_capacityBytes) {
    return false;
  }
  charge(entry, -1);
  entry.inRecords.push_back({face, now});
  entry.sizeBytes += BYTES_PER_FACE;
  charge(entry, +1);
  return true;
}

void
Pit::removeSlot(std::unordered_map<ndn::Name, Slot, ndn::NameHash>::iterator it)
{
  charge(it->second.entry, -1);
  m_table.erase(it);
}

std::optional<PitEntry>
Pit::erase(const ndn::Name& name)
{
  auto it = m_table.find(name);
  if (it == m_table.end()) {
    return std::nullopt;
  }
  PitEntry entry = it->second.entry;
  removeSlot(it);
  return entry;
}

std::size_t
Pit::expire(Time now)
{
  std::size_t removed = 0;
  while (!m_deadlines.empty() && m_deadlines.front().expiry <= now) {
    const auto& d = m_deadlines.front();
    auto it = m_table.find(d.name);
    if (it != m_table.end() && it->second.serial == d.serial) {
      if (m_onExpire) {
        m_onExpire(it->second.entry);
      }
      removeSlot(it);
      ++removed;
    }
    m_deadlines.pop_front();
  }
  return removed;
}

std::size_t
Pit::faceBytes(FaceId face) const
{
  auto it = m_faceBytes.find(face);
  return it == m_faceBytes.end() ? 0 : it->second;
}

} // namespace psim::fw
