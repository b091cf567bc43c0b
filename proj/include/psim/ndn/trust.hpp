#ifndef PSIM_NDN_TRUST_HPP
#define PSIM_NDN_TRUST_HPP

#include "psim/ndn/messages.hpp"

#include <map>
#include <stdexcept>

namespace psim::ndn {

/**
 * \brief Simulated signatures.
 *
 * Every honest node holds a secret; a token is a keyed digest over
 * (signer, name, payload size). A node that is not registered cannot have
 * its tokens accepted, whatever secret it uses.
 */
class TrustRegistry
{
public:
  void
  registerNode(const NodeId& node, std::uint64_t secret);

  bool
  contains(const NodeId& node) const
  {
    return m_secrets.count(node) > 0;
  }

  /// Throws std::out_of_range when \p signer is not registered.
  SigToken
  sign(const NodeId& signer, const Name& name, std::size_t payloadSize) const;

  /// Signs \p content in place with its signer's key.
  void
  signContent(ContentObject& content) const;

private:
  std::map<NodeId, std::uint64_t> m_secrets;
};

/// The keyed digest behind every token; exposed so tests can forge with a wrong key.
SigToken
mintToken(std::uint64_t secret, const NodeId& signer, const Name& name, std::size_t payloadSize);

bool
verifySignature(const ContentObject& obj, const TrustRegistry& registry);

} // namespace psim::ndn

#endif // PSIM_NDN_TRUST_HPP
