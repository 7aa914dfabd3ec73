#pragma once

// Independent re-derivations used as test oracles. Nothing here calls the library's
// Legendre, hashing or derivation code.

#include <string>
#include <string_view>
#include <vector>

#include "mova/bigint.hpp"

namespace mova::test {

/// +1 if a is a nonzero square mod p (found by enumerating all squares), -1 otherwise.
int brute_legendre(unsigned long a, unsigned long p);

/// GMP's own Legendre routine.
int gmp_legendre(const BigInt& a, const BigInt& p);

/// Element derivation rebuilt from its description with one-shot OpenSSL SHA-256.
std::vector<BigInt> oracle_derive(const Bytes& seed, std::string_view label, std::size_t count, const BigInt& n);

/// One-shot OpenSSL SHA-256.
Bytes oracle_sha256(std::string_view data);

/// HMAC-SHA-256 through the EVP_MAC interface.
Bytes oracle_hmac_sha256(const Bytes& key, const Bytes& data);

std::vector<unsigned long> odd_primes_below(unsigned long limit);

}  // namespace mova::test
