#pragma once

#include <array>

#include "mova/bigint.hpp"
#include "mova/hash.hpp"
#include "mova/random.hpp"

namespace mova {

inline constexpr std::size_t kDecommitBytes = 128;

using Decommit = std::array<std::uint8_t, kDecommitBytes>;

/// Hash commitment c = SHA-256(payload || decommit) with 128 fresh random bytes.
struct Commitment {
    Digest c{};
    Decommit decommit{};
};

/// Throws DomainError on an empty payload.
Commitment commit(ByteView payload, RandomSource& rng);

/// True iff SHA-256(payload || decommit) == c. Wrong-sized c or decommit is a failed open.
bool open(ByteView payload, ByteView c, ByteView decommit);

}  // namespace mova
