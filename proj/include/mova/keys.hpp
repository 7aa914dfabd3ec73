#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mova/bigint.hpp"
#include "mova/bits.hpp"
#include "mova/params.hpp"
#include "mova/random.hpp"

namespace mova {

inline constexpr std::string_view kKeyLabel = "key";
inline constexpr std::string_view kSigLabel = "sig";
inline constexpr std::size_t kSeedBytes = 32;
inline constexpr std::size_t kMaxDeriveRetries = 10000;

struct PublicKey {
    BigInt n;
    unsigned d = 2;
    Bytes k;        // public seed of the key generator points
    Bits y_gen;     // images of the generator points
    DomainParams params;

    friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

/// The secret homomorphism x -> (x mod p / p). q is kept so that n can be rebuilt.
class PrivateKey {
public:
    /// Validates that p and q are distinct odd probable primes.
    PrivateKey(BigInt p, BigInt q);

    const BigInt& p() const { return p_; }
    const BigInt& q() const { return q_; }
    const BigInt& n() const { return n_; }
    /// (p-1)/2, the Euler-criterion exponent.
    const BigInt& half() const { return half_; }

    friend bool operator==(const PrivateKey& a, const PrivateKey& b)
    {
        return a.p_ == b.p_ && a.q_ == b.q_;
    }

private:
    BigInt p_;
    BigInt q_;
    BigInt n_;
    BigInt half_;
};

struct KeyPair {
    PublicKey pub;
    PrivateKey priv;
};

/// Deterministic expansion of (seed, label) into `count` elements of Z_n^* \ {1}.
///
/// Candidate t is SHA-256(seed || label || be32(t) || be32(j)) for j = 0, 1, ... until
/// bit_length(n) + 64 bits are collected, reduced mod n. Candidates that are <= 1 or share
/// a factor with n are skipped; t counts every candidate, accepted or not.
std::vector<BigInt> derive_elements(ByteView seed, std::string_view label, std::size_t count,
                                    const BigInt& n);

/// The secret homomorphism h(x) = (x/p) as +1/-1.
/// Throws DomainError("invalid element") when gcd(x, n) != 1; the message never names a factor.
int homomorphism(const BigInt& x, const PrivateKey& sk);

/// Draws a `bits`-bit prime. Throws DomainError after a bounded number of candidates.
BigInt random_prime(std::size_t bits, RandomSource& rng);

KeyPair keygen(const DomainParams& params, RandomSource& rng);

/// Builds the key pair for fixed primes and seed. Exposed for tests with tiny moduli.
KeyPair make_keypair(const DomainParams& params, const BigInt& p, const BigInt& q, Bytes seed);

/// X_gen: the generator points recomputed from the public seed.
std::vector<BigInt> key_points(const PublicKey& pk);

// Key files: one `field=hex` line per field.
std::string format_public_key(const PublicKey& pk);
PublicKey parse_public_key(std::string_view text);
std::string format_private_key(const PrivateKey& sk);
PrivateKey parse_private_key(std::string_view text);

/// Consistency of a loaded pair: n = pq and y_gen matches h on the generator points.
void check_keypair(const PublicKey& pk, const PrivateKey& sk);

/// SHA-256 over the public key file text; used for out-of-band key comparison.
std::string public_key_fingerprint(const PublicKey& pk);

std::string read_text_file(const std::filesystem::path& path);
/// Writes via a temporary file and rename so readers never see a partial file.
void write_text_file_atomic(const std::filesystem::path& path, std::string_view text);

}  // namespace mova
