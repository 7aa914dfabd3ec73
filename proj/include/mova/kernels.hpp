#pragma once

// Batch kernels behind signing and the proof protocols.
//
// Two implementations share one contract: `mova::kernels::reference` is the plain serial
// version kept as the test oracle, and `mova::kernels` is the OpenMP version the protocol code
// calls. Both must produce identical output for identical input.
//
// Exponent layouts (all entries 0/1):
//   GHI     a[i * s + j]             i < l, j < s
//   co-GHI  a[(i * t + k) * s + j]   i < l, k < t, j < s
// co-GHI outputs are row-major over (i, k).

#include <span>
#include <vector>

#include "mova/bigint.hpp"
#include "mova/bits.hpp"
#include "mova/keys.hpp"

namespace mova::kernels {

/// h(x) for every x, as bits. Throws DomainError("invalid element") if any x is not a unit.
Bits homomorphism_batch(std::span<const BigInt> xs, const PrivateKey& sk);

/// u_i = r_i^2 * prod_j x_j^{a_ij} mod n.
std::vector<BigInt> blind_ghi(const BigInt& n, std::span<const BigInt> r, const Bits& a,
                              std::span<const BigInt> x);

/// u_ik = r_ik^2 * prod_j x_j^{a_ijk} * xhat_k^{lambda_i} mod n.
std::vector<BigInt> blind_coghi(const BigInt& n, std::span<const BigInt> r, const Bits& a,
                                const Bits& lambda, std::span<const BigInt> x,
                                std::span<const BigInt> x_hat);

/// w_i = XOR_j (a_ij AND y_j).
Bits combine_ghi(const Bits& a, const Bits& y, std::size_t l);

/// w_ik = XOR_j (a_ijk AND y_j) XOR (lambda_i AND yhat_k).
Bits combine_coghi(const Bits& a, const Bits& lambda, const Bits& y, const Bits& y_hat);

namespace reference {

Bits homomorphism_batch(std::span<const BigInt> xs, const PrivateKey& sk);
std::vector<BigInt> blind_ghi(const BigInt& n, std::span<const BigInt> r, const Bits& a,
                              std::span<const BigInt> x);
std::vector<BigInt> blind_coghi(const BigInt& n, std::span<const BigInt> r, const Bits& a,
                                const Bits& lambda, std::span<const BigInt> x,
                                std::span<const BigInt> x_hat);

}  // namespace reference

/// Threads the parallel kernels may use (1 when built without OpenMP).
int max_threads();

}  // namespace mova::kernels
