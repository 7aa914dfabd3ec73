#include "mova/coghi.hpp"

#include "mova/error.hpp"
#include "mova/kernels.hpp"

namespace mova {

namespace {

bool is_unit(const BigInt& x, const BigInt& n)
{
    return x >= 1 && x < n && gcd(x, n) == 1;
}

bool well_formed(const ProofPoints& points)
{
    return points.size() > 0 && points.y.size() == points.size();
}

}  // namespace

CoGhiVerifierSecret::CoGhiVerifierSecret(CoGhiReveal randomness, Bits lambda)
    : randomness_(std::move(randomness)), lambda_(std::move(lambda))
{
}

const CoGhiReveal& CoGhiVerifierSecret::reveal(const Digest& prover_commitment)
{
    commitment_ = prover_commitment;
    return randomness_;
}

std::pair<CoGhiChallenge, CoGhiVerifierSecret> coghi_build_challenge(const BigInt& n,
                                                                     const ProofPoints& r_points,
                                                                     const ProofPoints& t_points,
                                                                     CoGhiReveal randomness,
                                                                     Bits lambda)
{
    if (!well_formed(r_points) || !well_formed(t_points)) {
        throw DomainError("coghi: point sets must be non-empty with matching images");
    }
    if (lambda.empty()) {
        throw DomainError("coghi: at least one iteration is required");
    }
    CoGhiChallenge challenge;
    challenge.u = kernels::blind_coghi(n, randomness.r, randomness.a, lambda, r_points.x, t_points.x);
    challenge.w = kernels::combine_coghi(randomness.a, lambda, r_points.y, t_points.y);
    return {std::move(challenge), CoGhiVerifierSecret(std::move(randomness), std::move(lambda))};
}

std::pair<CoGhiChallenge, CoGhiVerifierSecret> coghi_verifier_challenge(const PublicKey& pk,
                                                                        const ProofPoints& r_points,
                                                                        const ProofPoints& t_points,
                                                                        std::size_t l,
                                                                        RandomSource& rng)
{
    const std::size_t t = t_points.size();
    const std::size_t s = r_points.size();
    CoGhiReveal randomness;
    randomness.r.reserve(l * t);
    for (std::size_t i = 0; i < l * t; ++i) {
        randomness.r.push_back(rng.unit_mod(pk.n));
    }
    randomness.a.resize(l * t * s);
    for (auto& bit : randomness.a) {
        bit = rng.bit() ? 1 : 0;
    }
    Bits lambda(l);
    for (auto& bit : lambda) {
        bit = rng.bit() ? 1 : 0;
    }
    return coghi_build_challenge(pk.n, r_points, t_points, std::move(randomness), std::move(lambda));
}

ProofStep<CoGhiProverState> coghi_prover_answer(const PrivateKey& sk, const PublicKey& pk,
                                                const ProofPoints& r_points,
                                                const ProofPoints& t_points,
                                                const CoGhiChallenge& challenge, RandomSource& rng)
{
    if (sk.n() != pk.n) {
        throw DomainError("coghi: key pair mismatch");
    }
    if (!well_formed(r_points) || !well_formed(t_points)) {
        return ProofAbort{"malformed point set"};
    }
    const std::size_t t = t_points.size();
    if (challenge.u.empty() || challenge.u.size() % t != 0 || challenge.w.size() != challenge.u.size()) {
        return ProofAbort{"challenge has the wrong shape"};
    }
    const std::size_t l = challenge.u.size() / t;
    if (l > kMaxProofIterations) {
        return ProofAbort{"challenge size out of range"};
    }
    for (std::uint8_t bit : challenge.w) {
        if (bit > 1) {
            return ProofAbort{"challenge value outside Z_2"};
        }
    }
    for (const auto& u : challenge.u) {
        if (!is_unit(u, pk.n)) {
            return ProofAbort{"challenge element outside Z_n*"};
        }
    }

    Bits key_images;
    Bits true_images;
    try {
        key_images = kernels::homomorphism_batch(r_points.x, sk);
        true_images = kernels::homomorphism_batch(t_points.x, sk);
    } catch (const DomainError&) {
        return ProofAbort{"point outside Z_n*"};
    }
    if (key_images != r_points.y) {
        return ProofAbort{"key points do not interpolate"};
    }

    std::vector<std::size_t> differing;
    for (std::size_t k = 0; k < t; ++k) {
        if (true_images[k] != t_points.y[k]) {
            differing.push_back(k);
        }
    }
    if (differing.empty()) {
        return ProofAbort{"claimed points interpolate; denial impossible"};
    }

    const Bits v = kernels::homomorphism_batch(challenge.u, sk);

    CoGhiProverState state;
    state.n_ = pk.n;
    state.r_points_ = r_points;
    state.t_points_ = t_points;
    state.challenge_ = challenge;
    state.lambda_.resize(l);
    for (std::size_t i = 0; i < l; ++i) {
        const std::size_t first = i * t + differing.front();
        const std::uint8_t lambda_i = challenge.w[first] ^ v[first];
        bool consistent = true;
        for (std::size_t k : differing) {
            if ((challenge.w[i * t + k] ^ v[i * t + k]) != lambda_i) {
                consistent = false;
                break;
            }
        }
        if (consistent) {
            state.lambda_[i] = lambda_i;
        } else {
            state.consistent_ = false;
            state.lambda_[i] = rng.bit() ? 1 : 0;
        }
    }
    state.commitment_ = commit(serialize_bit_payload(state.lambda_), rng);
    return state;
}

ProofStep<CoGhiOpening> coghi_prover_open(CoGhiProverState&& state, const CoGhiReveal& reveal)
{
    const std::size_t l = state.lambda_.size();
    const std::size_t t = state.t_points_.size();
    const std::size_t s = state.r_points_.size();
    if (reveal.r.size() != l * t || reveal.a.size() != l * t * s) {
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
    auto u = kernels::blind_coghi(state.n_, reveal.r, reveal.a, state.lambda_, state.r_points_.x,
                                  state.t_points_.x);
    auto w = kernels::combine_coghi(reveal.a, state.lambda_, state.r_points_.y, state.t_points_.y);
    if (u != state.challenge_.u || w != state.challenge_.w) {
        return ProofAbort{"challenge does not match revealed randomness"};
    }
    return CoGhiOpening{std::move(state.lambda_), state.commitment_.decommit};
}

bool coghi_verifier_check(const CoGhiVerifierSecret& secret, const Bits& lambda_tilde, ByteView c,
                          ByteView decommit)
{
    const auto& received = secret.received_commitment();
    if (!received || c.size() != received->size() ||
        !std::equal(c.begin(), c.end(), received->begin())) {
        return false;
    }
    if (lambda_tilde.size() != secret.iterations()) {
        return false;
    }
    for (std::uint8_t bit : lambda_tilde) {
        if (bit > 1) {
            return false;
        }
    }
    if (!open(serialize_bit_payload(lambda_tilde), c, decommit)) {
        return false;
    }
    return lambda_tilde == secret.lambda();
}

}  // namespace mova
