#include "psim/ndn/trust.hpp"

namespace psim::ndn {

namespace {

// 64-bit FNV-1a, keyed by prefixing the secret.
class Digest
{
public:
  explicit
  Digest(std::uint64_t key)
  {
    addWord(key);
  }

  void
  addBytes(std::string_view bytes)
  {
    for (unsigned char c : bytes) {
      m_state ^= c;
      m_state *= 0x100000001b3ULL;
    }
    // field separator so ("ab","c") and ("a","bc") differ
    m_state ^= 0xff;
    m_state *= 0x100000001b3ULL;
  }

  void
  addWord(std::uint64_t word)
  {
    for (int i = 0; i < 8; ++i) {
      m_state ^= (word >> (8 * i)) & 0xff;
      m_state *= 0x100000001b3ULL;
    }
  }

  std::uint64_t
  value() const
  {
    // final avalanche (splitmix64 finalizer)
    std::uint64_t z = m_state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

private:
  std::uint64_t m_state = 0xcbf29ce484222325ULL;
};

} // namespace

SigToken
mintToken(std::uint64_t secret, const NodeId& signer, const Name& name, std::size_t payloadSize)
{
  Digest d(secret);
  d.addBytes(signer);
  d.addBytes(name.toUri());
  d.addWord(payloadSize);
  return d.value();
}

void
TrustRegistry::registerNode(const NodeId& node, std::uint64_t secret)
{
  m_secrets[node] = secret;
}

SigToken
TrustRegistry::sign(const NodeId& signer, const Name& name, std::size_t payloadSize) const
{
  auto it = m_secrets.find(signer);
  if (it == m_secrets.end()) {
    throw std::out_of_range("signer not in trust registry: " + signer);
  }
  return mintToken(it->second, signer, name, payloadSize);
}

void
TrustRegistry::signContent(ContentObject& content) const
{
  content.sigToken = sign(content.signer, content.name, content.payloadSize);
}

bool
verifySignature(const ContentObject& obj, const TrustRegistry& registry)
{
  if (!registry.contains(obj.signer)) {
    return false;
  }
  return registry.sign(obj.signer, obj.name, obj.payloadSize) == obj.sigToken;
}

} // namespace psim::ndn
