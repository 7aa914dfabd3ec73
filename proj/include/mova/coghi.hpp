#pragma once

// Denial proof: the signer shows that a claimed point set T = (xhat_k, ytilde_k) does NOT
// interpolate under the homomorphism that interpolates the key points R = (x_j, y_j).
//
// For l iterations and t claimed points the verifier sends
//   u_ik = r_ik^2 * prod_j x_j^{a_ijk} * xhat_k^{lambda_i}
//   w_ik = XOR_j (a_ijk AND y_j) XOR (lambda_i AND ytilde_k)
// and the signer must recover every lambda_i. With v_ik = h(u_ik), w_ik XOR v_ik equals
// lambda_i exactly where ytilde_k differs from h(xhat_k).

#include <optional>
#include <utility>

#include "mova/commitment.hpp"
#include "mova/proof.hpp"
#include "mova/random.hpp"

namespace mova {

/// u and w are l x t, row-major over (i, k).
struct CoGhiChallenge {
    std::vector<BigInt> u;
    Bits w;
};

/// r is l x t; a is l x t x s laid out as a[(i * t + k) * s + j].
struct CoGhiReveal {
    std::vector<BigInt> r;
    Bits a;
};

class CoGhiVerifierSecret {
public:
    CoGhiVerifierSecret(CoGhiReveal randomness, Bits lambda);

    const Bits& lambda() const { return lambda_; }
    std::size_t iterations() const { return lambda_.size(); }

    const CoGhiReveal& reveal(const Digest& prover_commitment);

    const CoGhiReveal& randomness() const { return randomness_; }
    const std::optional<Digest>& received_commitment() const { return commitment_; }

private:
    CoGhiReveal randomness_;
    Bits lambda_;
    std::optional<Digest> commitment_;
};

struct CoGhiOpening {
    Bits lambda;
    Decommit decommit{};
};

class CoGhiProverState {
public:
    const Digest& commitment() const { return commitment_.c; }
    const Bits& recovered_lambda() const { return lambda_; }
    /// False when the challenge was inconsistent and lambda was drawn at random.
    bool recovered_consistently() const { return consistent_; }

private:
    friend ProofStep<CoGhiProverState> coghi_prover_answer(const PrivateKey&, const PublicKey&,
                                                           const ProofPoints&, const ProofPoints&,
                                                           const CoGhiChallenge&, RandomSource&);
    friend ProofStep<CoGhiOpening> coghi_prover_open(CoGhiProverState&&, const CoGhiReveal&);

    CoGhiProverState() = default;

    BigInt n_;
    ProofPoints r_points_;
    ProofPoints t_points_;
    CoGhiChallenge challenge_;
    Bits lambda_;
    bool consistent_ = true;
    Commitment commitment_;
};

std::pair<CoGhiChallenge, CoGhiVerifierSecret> coghi_verifier_challenge(const PublicKey& pk,
                                                                        const ProofPoints& r_points,
                                                                        const ProofPoints& t_points,
                                                                        std::size_t l,
                                                                        RandomSource& rng);

std::pair<CoGhiChallenge, CoGhiVerifierSecret> coghi_build_challenge(const BigInt& n,
                                                                     const ProofPoints& r_points,
                                                                     const ProofPoints& t_points,
                                                                     CoGhiReveal randomness,
                                                                     Bits lambda);

/// Aborts when the claimed points actually interpolate (denial impossible). Otherwise recovers
/// lambda from the smallest differing index, cross-checks the other differing indices, falls back
/// to a uniformly random lambda_i on inconsistency, and commits to lambda.
ProofStep<CoGhiProverState> coghi_prover_answer(const PrivateKey& sk, const PublicKey& pk,
                                                const ProofPoints& r_points,
                                                const ProofPoints& t_points,
                                                const CoGhiChallenge& challenge, RandomSource& rng);

/// Recomputes u and w from the revealed randomness and the committed lambda; mismatch aborts.
ProofStep<CoGhiOpening> coghi_prover_open(CoGhiProverState&& state, const CoGhiReveal& reveal);

bool coghi_verifier_check(const CoGhiVerifierSecret& secret, const Bits& lambda_tilde, ByteView c,
                          ByteView decommit);

}  // namespace mova
