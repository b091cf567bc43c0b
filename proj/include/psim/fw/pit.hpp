#ifndef PSIM_FW_PIT_HPP
#define PSIM_FW_PIT_HPP

#include "psim/common/ids.hpp"
#include "psim/common/time.hpp"
#include "psim/ndn/name.hpp"

#include <deque>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

namespace psim::fw {

struct InRecord
{
  FaceId face;
  Time arrival;
};

struct PitEntry
{
  ndn::Name name;
  std::vector<InRecord> inRecords;
  Time insertTime{0};
  Time expiryTime{0};
  FaceId outFace{};
  /// FIB prefix the interest was routed by; empty for the default route.
  std::optional<ndn::Name> routePrefix;
  std::size_t sizeBytes = 0;

  bool
  hasFace(FaceId face) const;
};

/**
 * \brief Pending Interest Table with a byte budget.
 *
 * An entry costs serializedLength(name) + 16 + 4 per arrival interface.
 * Besides the total, the table keeps per-interface usage where every arrival
 * interface of an entry is charged the entry's full size.
 *
 * Expired entries are removed lazily whenever a mutating operation or
 * expire() is called with the current time.
 */
class Pit
{
public:
  static constexpr std::size_t ENTRY_FIXED_BYTES = 16;
  static constexpr std::size_t BYTES_PER_FACE = 4;

  using ExpiryCallback = std::function<void(const PitEntry&)>;

  Pit(std::size_t capacityBytes, Time lifetime);

  static constexpr std::size_t
  entrySize(std::size_t nameLength, std::size_t nFaces)
  {
    return nameLength + ENTRY_FIXED_BYTES + BYTES_PER_FACE * nFaces;
  }

  void
  setExpiryCallback(ExpiryCallback cb)
  {
    m_onExpire = std::move(cb);
  }

  const PitEntry*
  find(const ndn::Name& name) const;

  /// True if a fresh single-interface entry for \p name fits.
  bool
  canInsert(const ndn::Name& name) const;

  /// Inserts a new entry. Precondition: no entry for the name and canInsert().
  const PitEntry&
  insert(const ndn::Name& name, FaceId face, Time now, FaceId outFace,
         std::optional<ndn::Name> routePrefix);

  /// Adds \p face to an existing entry; false if that would exceed capacity.
  bool
  addInRecord(const ndn::Name& name, FaceId face, Time now);

  /// Removes and returns the entry (satisfaction).
  std::optional<PitEntry>
  erase(const ndn::Name& name);

  /// Removes every entry whose expiry time is <= now; returns how many.
  std::size_t
  expire(Time now);

  std::size_t
  usedBytes() const noexcept
  {
    return m_usedBytes;
  }

  std::size_t
  capacityBytes() const noexcept
  {
    return m_capacityBytes;
  }

  Time
  lifetime() const noexcept
  {
    return m_lifetime;
  }

  std::size_t
  size() const noexcept
  {
    return m_table.size();
  }

  /// Raw datum behind rho: bytes charged to \p face (0 if none).
  std::size_t
  faceBytes(FaceId face) const;

  template<typename Fn>
  void
  forEach(Fn&& fn) const
  {
    for (const auto& [name, slot] : m_table) {
      fn(slot.entry);
    }
  }

private:
  struct Slot
  {
    PitEntry entry;
    std::uint64_t serial;
  };

  void
  charge(const PitEntry& entry, std::ptrdiff_t sign);

  void
  removeSlot(std::unordered_map<ndn::Name, Slot, ndn::NameHash>::iterator it);

private:
  std::size_t m_capacityBytes;
  Time m_lifetime;
  std::unordered_map<ndn::Name, Slot, ndn::NameHash> m_table;
  std::unordered_map<FaceId, std::size_t> m_faceBytes;
  std::size_t m_usedBytes = 0;

  struct Deadline
  {
    Time expiry;
    std::uint64_t serial;
    ndn::Name name;
  };
  // lifetime is fixed, so insertion order is expiry order
  std::deque<Deadline> m_deadlines;
  std::uint64_t m_nextSerial = 0;
  ExpiryCallback m_onExpire;
};

} // namespace psim::fw

#endif // PSIM_FW_PIT_HPP
