#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mova/bigint.hpp"
#include "mova/bits.hpp"
#include "mova/keys.hpp"
#include "mova/signing.hpp"

namespace mova {

/// Interpolation points (x_j, y_j) a proof is about.
struct ProofPoints {
    std::vector<BigInt> x;
    Bits y;

    std::size_t size() const { return x.size(); }
};

/// Terminal protocol outcome for a party that refuses to continue. Carries no secret material.
struct ProofAbort {
    std::string reason;
};

template <class T>
using ProofStep = std::variant<T, ProofAbort>;

template <class T>
bool is_abort(const ProofStep<T>& step)
{
    return std::holds_alternative<ProofAbort>(step);
}

/// (X_gen, Y_gen) of a public key.
ProofPoints generator_points(const PublicKey& pk);

/// (X_mess, claimed bits) for a message.
ProofPoints signature_points(const PublicKey& pk, std::string_view message, const Signature& claimed);

/// (X_gen || X_mess, Y_gen || claimed): the set a confirmation proves.
ProofPoints confirmation_points(const PublicKey& pk, std::string_view message, const Signature& claimed);

/// Upper bound on iterations a prover accepts in one batch.
inline constexpr std::size_t kMaxProofIterations = 256;

}  // namespace mova
