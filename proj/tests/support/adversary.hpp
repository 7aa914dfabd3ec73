#pragma once

// Dishonest protocol parties for soundness and robustness tests.

#include "mova/coghi.hpp"
#include "mova/ghi.hpp"
#include "mova/keys.hpp"

namespace mova::test {

/// One confirmation run against a prover with no key that commits to uniformly random answers.
bool guessing_ghi_accepted(const PublicKey& pk, const ProofPoints& points, std::size_t iterations,
                           RandomSource& verifier_rng, RandomSource& prover_rng);

/// One denial run against a prover with no key that commits to a uniformly random lambda.
bool guessing_coghi_accepted(const PublicKey& pk, const ProofPoints& r_points, const ProofPoints& t_points,
                             std::size_t iterations, RandomSource& verifier_rng, RandomSource& prover_rng);

/// One confirmation run against a prover that holds the key but skips the interpolation check,
/// answering the true homomorphism values for whatever points the verifier used.
bool forging_ghi_accepted(const KeyPair& keys, const ProofPoints& points, std::size_t iterations,
                          RandomSource& verifier_rng, RandomSource& prover_rng);

}  // namespace mova::test
