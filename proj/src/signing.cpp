#include "mova/signing.hpp"

#include "mova/error.hpp"
#include "mova/kernels.hpp"

namespace mova {

Digest map_message(std::string_view message)
{
    if (message.empty()) {
        throw DomainError("message is empty");
    }
    if (message.size() > kMaxMessageLength) {
        throw DomainError("message longer than " + std::to_string(kMaxMessageLength) + " characters");
    }
    for (char c : message) {
        auto u = static_cast<unsigned char>(c);
        if (u < 0x20 || u > 0x7e) {
            throw DomainError("message must be printable ASCII");
        }
    }
    return sha256(message);
}

std::vector<BigInt> message_points(std::string_view message, const PublicKey& pk)
{
    Digest seed = map_message(message);
    return derive_elements(seed, kSigLabel, pk.params.l_sig, pk.n);
}

Signature sign(std::string_view message, const PrivateKey& sk, const PublicKey& pk)
{
    if (sk.n() != pk.n) {
        throw DomainError("sign: key pair mismatch");
    }
    auto x_mess = message_points(message, pk);
    return Signature{kernels::homomorphism_batch(x_mess, sk)};
}

}  // namespace mova
