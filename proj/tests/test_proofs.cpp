#include <gtest/gtest.h>

#include <type_traits>

#include "mova/coghi.hpp"
#include "mova/error.hpp"
#include "mova/ghi.hpp"
#include "mova/kernels.hpp"
#include "mova/signing.hpp"
#include "support/adversary.hpp"
#include "support/fixture.hpp"
#include "support/oracle.hpp"

using namespace mova;
using mova::test::shared_keys;

static_assert(!std::is_default_constructible_v<GhiProverState>);
static_assert(!std::is_default_constructible_v<CoGhiProverState>);
static_assert(!std::is_copy_constructible_v<Sha256>);

namespace {

struct Ticket {
    std::string message;
    Signature sig;
};

Ticket genuine(const KeyPair& keys, std::string message)
{
    Signature sig = sign(message, keys.priv, keys.pub);
    return {std::move(message), std::move(sig)};
}

Signature flipped(Signature sig, std::size_t bit)
{
    sig.bits[bit] ^= 1;
    return sig;
}

/// Runs an honest confirmation end to end. nullopt when the prover aborts before committing.
std::optional<bool> run_ghi(const KeyPair& keys, const ProofPoints& points, std::size_t l, RandomSource& rng)
{
    auto [challenge, secret] = ghi_verifier_challenge(keys.pub, points, l, rng);
    auto answer = ghi_prover_answer(keys.priv, keys.pub, points, challenge, rng);
    if (is_abort(answer)) {
        return std::nullopt;
    }
    auto state = std::get<GhiProverState>(std::move(answer));
    Digest c = state.commitment();
    auto opened = ghi_prover_open(std::move(state), secret.reveal(c));
    if (is_abort(opened)) {
        return false;
    }
    const auto& o = std::get<GhiOpening>(opened);
    return ghi_verifier_check(secret, o.w, c, o.decommit);
}

std::optional<bool> run_coghi(const KeyPair& keys, const ProofPoints& t_points, std::size_t l, RandomSource& rng)
{
    ProofPoints r_points = generator_points(keys.pub);
    auto [challenge, secret] = coghi_verifier_challenge(keys.pub, r_points, t_points, l, rng);
    auto answer = coghi_prover_answer(keys.priv, keys.pub, r_points, t_points, challenge, rng);
    if (is_abort(answer)) {
        return std::nullopt;
    }
    auto state = std::get<CoGhiProverState>(std::move(answer));
    EXPECT_TRUE(state.recovered_consistently());
    Digest c = state.commitment();
    auto opened = coghi_prover_open(std::move(state), secret.reveal(c));
    if (is_abort(opened)) {
        return false;
    }
    const auto& o = std::get<CoGhiOpening>(opened);
    return coghi_verifier_check(secret, o.lambda, c, o.decommit);
}

}  // namespace

TEST(Ghi, ChallengeMatchesDefinition)
{
    const KeyPair& keys = shared_keys();
    DeterministicRandom rng(100);
    ProofPoints points = generator_points(keys.pub);
    auto [challenge, secret] = ghi_verifier_challenge(keys.pub, points, 5, rng);
    const auto& rnd = secret.randomness();
    const std::size_t s = points.size();
    for (std::size_t i = 0; i < 5; ++i) {
        BigInt u = rnd.r[i] * rnd.r[i];
        unsigned w = 0;
        for (std::size_t j = 0; j < s; ++j) {
            if (rnd.a[i * s + j]) {
                u = u * points.x[j] % keys.pub.n;
                w ^= points.y[j];
            }
        }
        EXPECT_EQ(challenge.u[i], u % keys.pub.n);
        EXPECT_EQ(secret.expected()[i], w);
        // h(u_i) agrees with w_i because the points interpolate
        EXPECT_EQ(test::gmp_legendre(challenge.u[i], keys.priv.p()), bit_to_sign(static_cast<std::uint8_t>(w)));
    }
}

TEST(Ghi, CompletenessOnGenuineSignatures)
{
    const KeyPair& keys = shared_keys();
    DeterministicRandom rng(101);
    for (int i = 0; i < 50; ++i) {
        Ticket t = genuine(keys, test::random_message(rng));
        auto result = run_ghi(keys, confirmation_points(keys.pub, t.message, t.sig), 20, rng);
        ASSERT_TRUE(result.has_value());
        EXPECT_TRUE(*result);
    }
}

TEST(Ghi, ProverAbortsOnNonInterpolatingPoints)
{
    const KeyPair& keys = shared_keys();
    DeterministicRandom rng(102);
    Ticket t = genuine(keys, "MOVA|Bern|Thun|2026-01-01|2|Ada");
    for (std::size_t bit = 0; bit < 20; ++bit) {
        auto result = run_ghi(keys, confirmation_points(keys.pub, t.message, flipped(t.sig, bit)), 20, rng);
        EXPECT_FALSE(result.has_value());
    }
}

TEST(Ghi, CheatingVerifierGetsNothing)
{
    const KeyPair& keys = shared_keys();
    DeterministicRandom rng(103);
    Ticket t = genuine(keys, "cheat");
    ProofPoints points = confirmation_points(keys.pub, t.message, t.sig);
    auto [challenge, secret] = ghi_verifier_challenge(keys.pub, points, 20, rng);
    auto state = std::get<GhiProverState>(ghi_prover_answer(keys.priv, keys.pub, points, challenge, rng));

    GhiReveal lie = secret.randomness();
    lie.a[3] ^= 1;
    auto opened = ghi_prover_open(std::move(state), lie);
    ASSERT_TRUE(is_abort(opened));
    EXPECT_FALSE(std::get<ProofAbort>(opened).reason.empty());
}

TEST(Ghi, CheckRequiresRevealAgainstSameCommitment)
{
    const KeyPair& keys = shared_keys();
    DeterministicRandom rng(104);
    Ticket t = genuine(keys, "bind");
    ProofPoints points = confirmation_points(keys.pub, t.message, t.sig);
    auto [challenge, secret] = ghi_verifier_challenge(keys.pub, points, 10, rng);
    auto state = std::get<GhiProverState>(ghi_prover_answer(keys.priv, keys.pub, points, challenge, rng));
    Digest c = state.commitment();

    // No reveal yet: the check refuses even correct answers.
    auto opened = ghi_prover_open(std::move(state), secret.randomness());
    const auto& o = std::get<GhiOpening>(opened);
    EXPECT_FALSE(ghi_verifier_check(secret, o.w, c, o.decommit));

    secret.reveal(c);
    EXPECT_TRUE(ghi_verifier_check(secret, o.w, c, o.decommit));
    Digest other = c;
    other[0] ^= 1;
    EXPECT_FALSE(ghi_verifier_check(secret, o.w, other, o.decommit));
    Bits wrong = o.w;
    wrong[0] ^= 1;
    EXPECT_FALSE(ghi_verifier_check(secret, wrong, c, o.decommit));
}

TEST(Ghi, MalformedChallengeRejected)
{
    const KeyPair& keys = shared_keys();
    DeterministicRandom rng(105);
    Ticket t = genuine(keys, "shape");
    ProofPoints points = confirmation_points(keys.pub, t.message, t.sig);
    GhiChallenge empty;
    EXPECT_TRUE(is_abort(ghi_prover_answer(keys.priv, keys.pub, points, empty, rng)));
    GhiChallenge bad{{BigInt(0)}};
    EXPECT_TRUE(is_abort(ghi_prover_answer(keys.priv, keys.pub, points, bad, rng)));
    GhiChallenge huge{std::vector<BigInt>(kMaxProofIterations + 1, BigInt(2))};
    EXPECT_TRUE(is_abort(ghi_prover_answer(keys.priv, keys.pub, points, huge, rng)));
}

TEST(Ghi, GuessingProverSucceedsAboutHalfPerIteration)
{
    const KeyPair& keys = shared_keys();
    DeterministicRandom verifier(106);
    DeterministicRandom prover(107);
    Ticket t = genuine(keys, "guess");
    ProofPoints points = confirmation_points(keys.pub, t.message, t.sig);
    int accepted = 0;
    for (int i = 0; i < 2000; ++i) {
        accepted += test::guessing_ghi_accepted(keys.pub, points, 1, verifier, prover) ? 1 : 0;
    }
    EXPECT_GE(accepted, 900);
    EXPECT_LE(accepted, 1100);

    int full = 0;
    for (int i = 0; i < 200; ++i) {
        full += test::guessing_ghi_accepted(keys.pub, points, 20, verifier, prover) ? 1 : 0;
    }
    EXPECT_EQ(full, 0);
}

TEST(Ghi, ForgingProverFailsAtFullStrength)
{
    const KeyPair& keys = shared_keys();
    DeterministicRandom verifier(108);
    DeterministicRandom prover(109);
    Ticket t = genuine(keys, "forge");
    int accepted = 0;
    for (int i = 0; i < 200; ++i) {
        Signature fake{test::random_bits(20, verifier)};
        if (fake.bits == t.sig.bits) {
            continue;
        }
        accepted += test::forging_ghi_accepted(keys, confirmation_points(keys.pub, t.message, fake), 20, verifier,
                                               prover)
                        ? 1
                        : 0;
    }
    EXPECT_EQ(accepted, 0);
}

TEST(CoGhi, DenialCompletenessOnFlippedBits)
{
    const KeyPair& keys = shared_keys();
    DeterministicRandom rng(110);
    for (int i = 0; i < 40; ++i) {
        Ticket t = genuine(keys, test::random_message(rng));
        std::size_t bit = rng.below(20).get_ui();
        auto result = run_coghi(keys, signature_points(keys.pub, t.message, flipped(t.sig, bit)), 20, rng);
        ASSERT_TRUE(result.has_value());
        EXPECT_TRUE(*result);
    }
}

TEST(CoGhi, DenialOfRandomSignatures)
{
    const KeyPair& keys = shared_keys();
    DeterministicRandom rng(111);
    Ticket t = genuine(keys, "random denial");
    for (int i = 0; i < 20; ++i) {
        Signature fake{test::random_bits(20, rng)};
        if (fake.bits == t.sig.bits) {
            continue;
        }
        auto result = run_coghi(keys, signature_points(keys.pub, t.message, fake), 20, rng);
        ASSERT_TRUE(result.has_value());
        EXPECT_TRUE(*result);
    }
}

TEST(CoGhi, ProverRefusesToDenyGenuine)
{
    const KeyPair& keys = shared_keys();
    DeterministicRandom rng(112);
    Ticket t = genuine(keys, "genuine");
    EXPECT_FALSE(run_coghi(keys, signature_points(keys.pub, t.message, t.sig), 20, rng).has_value());
}

TEST(CoGhi, ChallengeMatchesDefinition)
{
    const KeyPair& keys = shared_keys();
    DeterministicRandom rng(113);
    Ticket t = genuine(keys, "definition");
    ProofPoints r_points = generator_points(keys.pub);
    ProofPoints t_points = signature_points(keys.pub, t.message, flipped(t.sig, 0));
    const std::size_t l = 3;
    const std::size_t tt = t_points.size();
    const std::size_t s = r_points.size();
    auto [challenge, secret] = coghi_verifier_challenge(keys.pub, r_points, t_points, l, rng);
    const auto& rnd = secret.randomness();
    for (std::size_t i = 0; i < l; ++i) {
        for (std::size_t k = 0; k < tt; ++k) {
            BigInt u = rnd.r[i * tt + k] * rnd.r[i * tt + k];
            unsigned w = 0;
            for (std::size_t j = 0; j < s; ++j) {
                if (rnd.a[(i * tt + k) * s + j]) {
                    u = u * r_points.x[j] % keys.pub.n;
                    w ^= r_points.y[j];
                }
            }
            if (secret.lambda()[i]) {
                u = u * t_points.x[k] % keys.pub.n;
                w ^= t_points.y[k];
            }
            EXPECT_EQ(challenge.u[i * tt + k], u % keys.pub.n);
            EXPECT_EQ(challenge.w[i * tt + k], w);
        }
    }
}

TEST(CoGhi, CheatingVerifierAborts)
{
    const KeyPair& keys = shared_keys();
    DeterministicRandom rng(114);
    Ticket t = genuine(keys, "cheat denial");
    ProofPoints r_points = generator_points(keys.pub);
    ProofPoints t_points = signature_points(keys.pub, t.message, flipped(t.sig, 5));
    auto [challenge, secret] = coghi_verifier_challenge(keys.pub, r_points, t_points, 20, rng);
    auto state = std::get<CoGhiProverState>(
        coghi_prover_answer(keys.priv, keys.pub, r_points, t_points, challenge, rng));
    CoGhiReveal lie = secret.randomness();
    lie.r[0] += 1;
    EXPECT_TRUE(is_abort(coghi_prover_open(std::move(state), lie)));
}

TEST(CoGhi, InconsistentChallengeFallsBackToRandomLambda)
{
    const KeyPair& keys = shared_keys();
    DeterministicRandom rng(115);
    Ticket t = genuine(keys, "inconsistent");
    Signature two = flipped(flipped(t.sig, 2), 9);
    ProofPoints r_points = generator_points(keys.pub);
    ProofPoints t_points = signature_points(keys.pub, t.message, two);
    auto [challenge, secret] = coghi_verifier_challenge(keys.pub, r_points, t_points, 4, rng);
    // Corrupt the w entry of one differing index so the two recoveries disagree in row 0.
    challenge.w[0 * t_points.size() + 9] ^= 1;
    auto state = std::get<CoGhiProverState>(
        coghi_prover_answer(keys.priv, keys.pub, r_points, t_points, challenge, rng));
    EXPECT_FALSE(state.recovered_consistently());
}

TEST(CoGhi, GuessingProverSucceedsAboutHalfPerIteration)
{
    const KeyPair& keys = shared_keys();
    DeterministicRandom verifier(116);
    DeterministicRandom prover(117);
    Ticket t = genuine(keys, "guess denial");
    ProofPoints r_points = generator_points(keys.pub);
    ProofPoints t_points = signature_points(keys.pub, t.message, flipped(t.sig, 1));
    int accepted = 0;
    for (int i = 0; i < 2000; ++i) {
        accepted += test::guessing_coghi_accepted(keys.pub, r_points, t_points, 1, verifier, prover) ? 1 : 0;
    }
    EXPECT_GE(accepted, 900);
    EXPECT_LE(accepted, 1100);
}

TEST(Kernels, ParallelMatchesReference)
{
    const KeyPair& keys = shared_keys();
    DeterministicRandom rng(118);
    const BigInt& n = keys.pub.n;
    for (std::size_t l : {1u, 7u, 20u, 33u}) {
        const std::size_t s = 84;
        const std::size_t t = 20;
        std::vector<BigInt> x(s);
        std::vector<BigInt> xh(t);
        for (auto& v : x) v = rng.unit_mod(n);
        for (auto& v : xh) v = rng.unit_mod(n);
        std::vector<BigInt> r(l * t);
        for (auto& v : r) v = rng.unit_mod(n);
        Bits a = test::random_bits(l * s, rng);
        Bits a3 = test::random_bits(l * t * s, rng);
        Bits lambda = test::random_bits(l, rng);

        std::vector<BigInt> r_ghi(r.begin(), r.begin() + static_cast<long>(l));
        EXPECT_EQ(kernels::blind_ghi(n, r_ghi, a, x), kernels::reference::blind_ghi(n, r_ghi, a, x));
        EXPECT_EQ(kernels::blind_coghi(n, r, a3, lambda, x, xh),
                  kernels::reference::blind_coghi(n, r, a3, lambda, x, xh));
        EXPECT_EQ(kernels::homomorphism_batch(r, keys.priv), kernels::reference::homomorphism_batch(r, keys.priv));
    }
}

TEST(Kernels, HomomorphismBatchMatchesGmp)
{
    const KeyPair& keys = shared_keys();
    DeterministicRandom rng(119);
    std::vector<BigInt> xs(100);
    for (auto& v : xs) v = rng.unit_mod(keys.pub.n);
    Bits bits = kernels::homomorphism_batch(xs, keys.priv);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        EXPECT_EQ(bit_to_sign(bits[i]), test::gmp_legendre(xs[i], keys.priv.p()));
    }
    xs[50] = keys.priv.p();
    EXPECT_THROW(kernels::homomorphism_batch(xs, keys.priv), DomainError);
    EXPECT_THROW(kernels::reference::homomorphism_batch(xs, keys.priv), DomainError);
}

TEST(Kernels, ShapeErrors)
{
    const KeyPair& keys = shared_keys();
    std::vector<BigInt> x(3, BigInt(2));
    std::vector<BigInt> r(2, BigInt(3));
    EXPECT_THROW(kernels::blind_ghi(keys.pub.n, r, Bits(5, 0), x), DomainError);
    EXPECT_THROW(kernels::reference::blind_ghi(keys.pub.n, r, Bits(5, 0), x), DomainError);
    EXPECT_EQ(kernels::combine_ghi(Bits{1, 1, 0, 0, 1, 1}, Bits{1, 0, 1}, 2), (Bits{1, 1}));
}
