#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace mova {

using BigInt = mpz_class;
using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// Minimal big-endian magnitude of a non-negative integer (zero encodes as an empty string).
Bytes to_bytes(const BigInt& value);

/// Big-endian magnitude, left-padded with zeros to exactly `width` bytes.
/// Throws std::invalid_argument if the value does not fit.
Bytes to_bytes_padded(const BigInt& value, std::size_t width);

BigInt from_bytes(ByteView bytes);

/// Lowercase hex without prefix; zero is "0".
std::string to_hex(const BigInt& value);
BigInt from_hex(std::string_view hex);

std::string bytes_to_hex(ByteView bytes);
Bytes hex_to_bytes(std::string_view hex);

std::size_t bit_length(const BigInt& value);

inline BigInt mul_mod(const BigInt& a, const BigInt& b, const BigInt& n)
{
    BigInt r = a * b;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline BigInt pow_mod(const BigInt& base, const BigInt& exp, const BigInt& n)
{
    BigInt r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline BigInt gcd(const BigInt& a, const BigInt& b)
{
    BigInt r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Miller-Rabin with 40 rounds: error probability below 2^-80.
bool is_probable_prime(const BigInt& value);

}  // namespace mova
