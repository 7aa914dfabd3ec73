#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mova/bigint.hpp"

namespace mova {

/// Elements of the Y group {+1, -1} carried additively in Z_2: +1 <-> 0, -1 <-> 1.
using Bits = std::vector<std::uint8_t>;

inline std::uint8_t sign_to_bit(int sign) { return sign < 0 ? 1 : 0; }
inline int bit_to_sign(std::uint8_t bit) { return bit != 0 ? -1 : 1; }

/// MSB-first packing into ceil(n/8) bytes; trailing pad bits are zero.
Bytes pack_bits(const Bits& bits);

/// Inverse of pack_bits. Throws std::invalid_argument when `packed` is the wrong size
/// or a pad bit is set.
Bits unpack_bits(ByteView packed, std::size_t count);

/// Commitment payload form: 4-byte big-endian count followed by pack_bits.
Bytes serialize_bit_payload(const Bits& bits);

}  // namespace mova
