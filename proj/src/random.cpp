#include "mova/random.hpp"

#include <stdexcept>

#include <openssl/rand.h>

#include "mova/hash.hpp"

namespace mova {

Bytes RandomSource::bytes(std::size_t count)
{
    Bytes out(count);
    fill(out);
    return out;
}

bool RandomSource::bit()
{
    std::uint8_t b = 0;
    fill({&b, 1});
    return (b & 1) != 0;
}

BigInt RandomSource::below(const BigInt& bound)
{
    if (sgn(bound) <= 0) {
        throw std::invalid_argument("RandomSource::below: bound must be positive");
    }
    const std::size_t bits = bit_length(bound);
    const std::size_t len = (bits + 7) / 8;
    const unsigned excess = static_cast<unsigned>(len * 8 - bits);
    Bytes buf(len);
    while (true) {
        fill(buf);
        buf[0] &= static_cast<std::uint8_t>(0xff >> excess);
        BigInt candidate = from_bytes(buf);
        if (candidate < bound) {
            return candidate;
        }
    }
}

BigInt RandomSource::unit_mod(const BigInt& n)
{
    if (n < 3) {
        throw std::invalid_argument("RandomSource::unit_mod: modulus too small");
    }
    while (true) {
        BigInt x = below(n);
        if (x >= 1 && gcd(x, n) == 1) {
            return x;
        }
    }
}

BigInt RandomSource::exact_bits(std::size_t bits)
{
    if (bits < 2) {
        throw std::invalid_argument("RandomSource::exact_bits: need at least 2 bits");
    }
    BigInt x = below(BigInt(1) << static_cast<mp_bitcnt_t>(bits - 1));
    mpz_setbit(x.get_mpz_t(), bits - 1);
    return x;
}

void OsRandom::fill(std::span<std::uint8_t> out)
{
    if (out.empty()) {
        return;
    }
    if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
        throw std::runtime_error("OsRandom: RAND_bytes failed");
    }
}

DeterministicRandom::DeterministicRandom(std::uint64_t seed)
{
    std::uint8_t raw[8];
    for (int i = 0; i < 8; ++i) {
        raw[i] = static_cast<std::uint8_t>(seed >> (56 - 8 * i));
    }
    key_ = sha256(raw);
}

void DeterministicRandom::fill(std::span<std::uint8_t> out)
{
    for (auto& byte : out) {
        if (used_ == block_.size()) {
            Sha256 h;
            h.update(key_);
            std::uint8_t ctr[8];
            for (int i = 0; i < 8; ++i) {
                ctr[i] = static_cast<std::uint8_t>(counter_ >> (56 - 8 * i));
            }
            h.update(ctr);
            block_ = h.finish();
            ++counter_;
            used_ = 0;
        }
        byte = block_[used_++];
    }
}

}  // namespace mova
