#include "mova/ghi.hpp"

#include "mova/error.hpp"
#include "mova/kernels.hpp"

namespace mova {

namespace {

bool is_unit(const BigInt& x, const BigInt& n)
{
    return x >= 1 && x < n && gcd(x, n) == 1;
}

}  // namespace

GhiVerifierSecret::GhiVerifierSecret(GhiReveal randomness, Bits w)
    : randomness_(std::move(randomness)), w_(std::move(w))
{
}

const GhiReveal& GhiVerifierSecret::reveal(const Digest& prover_commitment)
{
    commitment_ = prover_commitment;
    return randomness_;
}

std::pair<GhiChallenge, GhiVerifierSecret> ghi_build_challenge(const BigInt& n, const ProofPoints& points,
                                                               GhiReveal randomness)
{
    if (points.size() == 0 || points.y.size() != points.size()) {
        throw DomainError("ghi: point set must be non-empty with matching images");
    }
    const std::size_t l = randomness.r.size();
    if (l == 0) {
        throw DomainError("ghi: at least one iteration is required");
    }
    GhiChallenge challenge{kernels::blind_ghi(n, randomness.r, randomness.a, points.x)};
    Bits w = kernels::combine_ghi(randomness.a, points.y, l);
    return {std::move(challenge), GhiVerifierSecret(std::move(randomness), std::move(w))};
}

std::pair<GhiChallenge, GhiVerifierSecret> ghi_verifier_challenge(const PublicKey& pk,
                                                                  const ProofPoints& points,
                                                                  std::size_t l, RandomSource& rng)
{
    GhiReveal randomness;
    randomness.r.reserve(l);
    for (std::size_t i = 0; i < l; ++i) {
        randomness.r.push_back(rng.unit_mod(pk.n));
    }
    randomness.a.resize(l * points.size());
    for (auto& bit : randomness.a) {
        bit = rng.bit() ? 1 : 0;
    }
    return ghi_build_challenge(pk.n, points, std::move(randomness));
}

ProofStep<GhiProverState> ghi_prover_answer(const PrivateKey& sk, const PublicKey& pk,
                                            const ProofPoints& points, const GhiChallenge& challenge,
                                            RandomSource& rng)
{
    if (sk.n() != pk.n) {
        throw DomainError("ghi: key pair mismatch");
    }
    if (points.size() == 0 || points.y.size() != points.size()) {
        return ProofAbort{"malformed point set"};
    }
    if (challenge.u.empty() || challenge.u.size() > kMaxProofIterations) {
        return ProofAbort{"challenge size out of range"};
    }
    for (const auto& u : challenge.u) {
        if (!is_unit(u, pk.n)) {
            return ProofAbort{"challenge element outside Z_n*"};
        }
    }

    Bits images;
    try {
        images = kernels::homomorphism_batch(points.x, sk);
    } catch (const DomainError&) {
        return ProofAbort{"point outside Z_n*"};
    }
    if (images != points.y) {
        return ProofAbort{"points do not interpolate"};
    }

    GhiProverState state;
    state.n_ = pk.n;
    state.points_ = points;
    state.challenge_ = challenge;
    state.answers_ = kernels::homomorphism_batch(challenge.u, sk);
    state.commitment_ = commit(serialize_bit_payload(state.answers_), rng);
    return state;
}

ProofStep<GhiOpening> ghi_prover_open(GhiProverState&& state, const GhiReveal& reveal)
{
    const std::size_t l = state.challenge_.u.size();
    const std::size_t s = state.points_.size();
    if (reveal.r.size() != l || reveal.a.size() != l * s) {
        return ProofAbort{"revealed randomness has the wrong shape"};
    }
    for (std::uint8_t bit : reveal.a) {
        if (bit > 1) {
            return ProofAbort{"revealed exponent outside Z_2"};
        }
    }
    for (const auto& r : reveal.r) {
        if (!is_unit(r, state.n_)) {
            return ProofAbort{"revealed r outside Z_n*"};
        }
    }
    auto recomputed = kernels::blind_ghi(state.n_, reveal.r, reveal.a, state.points_.x);
    if (recomputed != state.challenge_.u) {
        return ProofAbort{"challenge does not match revealed randomness"};
    }
    return GhiOpening{std::move(state.answers_), state.commitment_.decommit};
}

bool ghi_verifier_check(const GhiVerifierSecret& secret, const Bits& w_tilde, ByteView c,
                        ByteView decommit)
{
    const auto& received = secret.received_commitment();
    if (!received || c.size() != received->size() ||
        !std::equal(c.begin(), c.end(), received->begin())) {
        return false;
    }
    if (w_tilde.size() != secret.iterations()) {
        return false;
    }
    for (std::uint8_t bit : w_tilde) {
        if (bit > 1) {
            return false;
        }
    }
    if (!open(serialize_bit_payload(w_tilde), c, decommit)) {
        return false;
    }
    return w_tilde == secret.expected();
}

}  // namespace mova
