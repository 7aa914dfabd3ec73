#pragma once

#include "mova/bigint.hpp"

namespace mova {

/// Legendre symbol (a/p) by Euler's criterion: a^((p-1)/2) mod p is 1 or p-1.
/// Throws DomainError if p is not an odd prime or a is divisible by p.
int legendre(const BigInt& a, const BigInt& p);

/// Euler's criterion without any validation. `half` must be (p-1)/2 and `a` coprime to p.
/// Returns 0 when the power is neither 1 nor p-1 (p not prime).
int legendre_euler(const BigInt& a, const BigInt& p, const BigInt& half);

}  // namespace mova
