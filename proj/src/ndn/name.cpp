#include "psim/ndn/name.hpp"

namespace psim::ndn {

void
Name::checkComponent(std::string_view component)
{
  if (component.empty()) {
    throw MalformedName("empty name component");
  }
  if (component.find('/') != std::string_view::npos) {
    throw MalformedName("name component contains '/'");
  }
}

Name
Name::parse(std::string_view text)
{
  if (text.empty() || text.front() != '/') {
    throw MalformedName("name must start with '/': '" + std::string(text) + "'");
  }
  // a single trailing separator is tolerated ("/a/b/" == "/a/b")
  if (text.size() > 1 && text.back() == '/') {
    text.remove_suffix(1);
  }
  if (text.size() == 1) {
    throw MalformedName("name has no components");
  }

  Name name;
  name.m_uri.assign(text);
  std::size_t pos = 1;
  while (pos <= text.size()) {
    auto next = text.find('/', pos);
    if (next == std::string_view::npos) {
      next = text.size();
    }
    if (next == pos) {
      throw MalformedName("empty name component in '" + std::string(text) + "'");
    }
    name.m_starts.push_back(static_cast<std::uint32_t>(pos));
    pos = next + 1;
  }
  return name;
}

Name
Name::fromComponents(const std::vector<std::string>& components)
{
  if (components.empty()) {
    throw MalformedName("name has no components");
  }
  Name name;
  for (const auto& c : components) {
    checkComponent(c);
    name.m_uri.push_back('/');
    name.m_starts.push_back(static_cast<std::uint32_t>(name.m_uri.size()));
    name.m_uri.append(c);
  }
  return name;
}

Name
Name::append(std::string_view component) const
{
  checkComponent(component);
  Name name = *this;
  name.m_uri.push_back('/');
  name.m_starts.push_back(static_cast<std::uint32_t>(name.m_uri.size()));
  name.m_uri.append(component);
  return name;
}

Name
Name::getPrefix(std::size_t count) const
{
  if (count == 0 || count > size()) {
    throw std::out_of_range("Name::getPrefix count out of range");
  }
  Name name;
  name.m_starts.assign(m_starts.begin(), m_starts.begin() + static_cast<std::ptrdiff_t>(count));
  std::size_t end = count == size() ? m_uri.size() : m_starts[count] - 1;
  name.m_uri = m_uri.substr(0, end);
  return name;
}

std::string_view
Name::at(std::size_t i) const
{
  if (i >= size()) {
    throw std::out_of_range("Name::at index out of range");
  }
  std::size_t begin = m_starts[i];
  std::size_t end = i + 1 == size() ? m_uri.size() : m_starts[i + 1] - 1;
  return std::string_view(m_uri).substr(begin, end - begin);
}

std::vector<std::string>
Name::components() const
{
  std::vector<std::string> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    out.emplace_back(at(i));
  }
  return out;
}

bool
Name::isPrefixOf(const Name& other) const noexcept
{
  if (size() > other.size() || m_uri.size() > other.m_uri.size()) {
    return false;
  }
  if (other.m_uri.compare(0, m_uri.size(), m_uri) != 0) {
    return false;
  }
  return other.m_uri.size() == m_uri.size() || other.m_uri[m_uri.size()] == '/';
}

} // namespace psim::ndn
