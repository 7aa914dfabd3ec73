#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "mova/bigint.hpp"

namespace mova {

/// Entropy source. Implementations need not be thread-safe; use one per activity.
class RandomSource {
public:
    virtual ~RandomSource() = default;
    virtual void fill(std::span<std::uint8_t> out) = 0;

    Bytes bytes(std::size_t count);
    bool bit();
    /// Uniform in [0, bound). bound must be positive.
    BigInt below(const BigInt& bound);
    /// Uniform in Z_n^*, i.e. [1, n-1] with gcd(x, n) = 1.
    BigInt unit_mod(const BigInt& n);
    /// Uniform integer with exactly `bits` bits (top bit set).
    BigInt exact_bits(std::size_t bits);
};

/// Operating-system CSPRNG (OpenSSL RAND_bytes).
class OsRandom final : public RandomSource {
public:
    void fill(std::span<std::uint8_t> out) override;
};

/// SHA-256 counter-mode generator. Reproducible, for tests and simulations only.
class DeterministicRandom final : public RandomSource {
public:
    explicit DeterministicRandom(std::uint64_t seed);
    void fill(std::span<std::uint8_t> out) override;

private:
    std::array<std::uint8_t, 32> key_{};
    std::uint64_t counter_ = 0;
    std::array<std::uint8_t, 32> block_{};
    std::size_t used_ = 32;
};

}  // namespace mova
