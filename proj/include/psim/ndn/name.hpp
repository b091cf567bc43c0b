#ifndef PSIM_NDN_NAME_HPP
#define PSIM_NDN_NAME_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace psim::ndn {

class MalformedName : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/**
 * \brief Hierarchical content name.
 *
 * A Name always has at least one component; components are non-empty byte
 * strings that never contain '/'. The canonical textual form "/c1/c2/..."
 * is stored directly, so serialization and prefix tests are string
 * operations.
 */
class Name
{
public:
  /// Parses "/c1/c2/...". Throws MalformedName.
  static Name
  parse(std::string_view text);

  /// Throws MalformedName if any component is empty or contains '/'.
  static Name
  fromComponents(const std::vector<std::string>& components);

  /// Returns a copy with one more component.
  Name
  append(std::string_view component) const;

  /// First \p count components; 1 <= count <= size().
  Name
  getPrefix(std::size_t count) const;

  std::size_t
  size() const noexcept
  {
    return m_starts.size();
  }

  std::string_view
  at(std::size_t i) const;

  std::vector<std::string>
  components() const;

  const std::string&
  toUri() const noexcept
  {
    return m_uri;
  }

  /// Bytes of the canonical form: 1 + sum(len) + (count - 1).
  std::size_t
  serializedLength() const noexcept
  {
    return m_uri.size();
  }

  bool
  isPrefixOf(const Name& other) const noexcept;

  friend bool
  operator==(const Name& a, const Name& b) noexcept
  {
    return a.m_uri == b.m_uri;
  }

  friend bool
  operator<(const Name& a, const Name& b) noexcept
  {
    return a.m_uri < b.m_uri;
  }

private:
  Name() = default;

  static void
  checkComponent(std::string_view component);

private:
  std::string m_uri;
  std::vector<std::uint32_t> m_starts; // offset of each component in m_uri
};

inline bool
isPrefixOf(const Name& prefix, const Name& name) noexcept
{
  return prefix.isPrefixOf(name);
}

struct NameHash
{
  std::size_t
  operator()(const Name& name) const noexcept
  {
    return std::hash<std::string>{}(name.toUri());
  }
};

} // namespace psim::ndn

#endif // PSIM_NDN_NAME_HPP
