#pragma once

#include <string_view>
#include <vector>

#include "mova/bits.hpp"
#include "mova/hash.hpp"
#include "mova/keys.hpp"

namespace mova {

struct Signature {
    Bits bits;

    friend bool operator==(const Signature&, const Signature&) = default;
};

/// Map: ASCII message -> 32-byte seed (SHA-256 of the message bytes).
/// Throws DomainError for empty, oversized or non-printable-ASCII messages.
Digest map_message(std::string_view message);

/// X_mess: the l_sig message points derived from map_message(message).
std::vector<BigInt> message_points(std::string_view message, const PublicKey& pk);

Signature sign(std::string_view message, const PrivateKey& sk, const PublicKey& pk);

}  // namespace mova
