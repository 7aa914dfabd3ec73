#pragma once

// Confirmation proof: the signer shows that a homomorphism interpolates a point set.
//
// Group operations are written multiplicatively in Z_n^* with d = 2:
//   u_i = r_i^2 * prod_j x_j^{a_ij} mod n,   w_i = XOR_j (a_ij AND y_j).
// One batch of l iterations runs in four messages:
//   V -> S  challenge u              (ghi_verifier_challenge)
//   S -> V  commitment to h(u)       (ghi_prover_answer)
//   V -> S  randomness (r, a)        (GhiVerifierSecret::reveal)
//   S -> V  answers and decommit     (ghi_prover_open), checked by ghi_verifier_check

#include <optional>
#include <utility>

#include "mova/commitment.hpp"
#include "mova/proof.hpp"
#include "mova/random.hpp"

namespace mova {

struct GhiChallenge {
    std::vector<BigInt> u;
};

/// Verifier randomness; a is l x s, row-major.
struct GhiReveal {
    std::vector<BigInt> r;
    Bits a;
};

class GhiVerifierSecret {
public:
    GhiVerifierSecret(GhiReveal randomness, Bits w);

    const Bits& expected() const { return w_; }
    std::size_t iterations() const { return w_.size(); }

    /// Releases (r, a). Must be given the prover's commitment first; later checks are bound to it.
    const GhiReveal& reveal(const Digest& prover_commitment);

    /// Randomness without recording a commitment. Test harnesses only.
    const GhiReveal& randomness() const { return randomness_; }
    const std::optional<Digest>& received_commitment() const { return commitment_; }

private:
    GhiReveal randomness_;
    Bits w_;
    std::optional<Digest> commitment_;
};

struct GhiOpening {
    Bits w;
    Decommit decommit{};
};

/// Prover state between commit and open. Only ghi_prover_answer creates one, and
/// ghi_prover_open consumes it, so answers cannot be released before a commitment exists.
class GhiProverState {
public:
    const Digest& commitment() const { return commitment_.c; }
    const Bits& answers() const { return answers_; }

private:
    friend ProofStep<GhiProverState> ghi_prover_answer(const PrivateKey&, const PublicKey&,
                                                        const ProofPoints&, const GhiChallenge&,
                                                        RandomSource&);
    friend ProofStep<GhiOpening> ghi_prover_open(GhiProverState&&, const GhiReveal&);

    GhiProverState() = default;

    BigInt n_;
    ProofPoints points_;
    GhiChallenge challenge_;
    Bits answers_;
    Commitment commitment_;
};

/// Draws r_i in Z_n^* and a_ij in Z_2 for l iterations.
std::pair<GhiChallenge, GhiVerifierSecret> ghi_verifier_challenge(const PublicKey& pk,
                                                                  const ProofPoints& points,
                                                                  std::size_t l, RandomSource& rng);

/// Deterministic challenge for given randomness; the sampling step above calls this.
std::pair<GhiChallenge, GhiVerifierSecret> ghi_build_challenge(const BigInt& n, const ProofPoints& points,
                                                               GhiReveal randomness);

/// Checks h(x_j) = y_j for every point, answers h(u_i), and commits to the answers.
ProofStep<GhiProverState> ghi_prover_answer(const PrivateKey& sk, const PublicKey& pk,
                                            const ProofPoints& points, const GhiChallenge& challenge,
                                            RandomSource& rng);

/// Recomputes every u_i from the revealed randomness; any mismatch aborts.
ProofStep<GhiOpening> ghi_prover_open(GhiProverState&& state, const GhiReveal& reveal);

/// True iff the verifier already revealed against commitment c, the commitment opens,
/// and w_tilde equals the expected answers.
bool ghi_verifier_check(const GhiVerifierSecret& secret, const Bits& w_tilde, ByteView c,
                        ByteView decommit);

}  // namespace mova
