#include "mova/bits.hpp"

#include <stdexcept>

namespace mova {

Bytes pack_bits(const Bits& bits)
{
    Bytes out((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] > 1) {
            throw std::invalid_argument("pack_bits: value is not a bit");
        }
        if (bits[i] != 0) {
            out[i / 8] |= static_cast<std::uint8_t>(0x80 >> (i % 8));
        }
    }
    return out;
}

Bits unpack_bits(ByteView packed, std::size_t count)
{
    if (packed.size() != (count + 7) / 8) {
        throw std::invalid_argument("unpack_bits: size mismatch");
    }
    Bits out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = (packed[i / 8] >> (7 - i % 8)) & 1;
    }
    for (std::size_t i = count; i < packed.size() * 8; ++i) {
        if ((packed[i / 8] >> (7 - i % 8)) & 1) {
            throw std::invalid_argument("unpack_bits: non-zero padding");
        }
    }
    return out;
}

Bytes serialize_bit_payload(const Bits& bits)
{
    const auto n = static_cast<std::uint32_t>(bits.size());
    Bytes out{static_cast<std::uint8_t>(n >> 24), static_cast<std::uint8_t>(n >> 16),
              static_cast<std::uint8_t>(n >> 8), static_cast<std::uint8_t>(n)};
    Bytes packed = pack_bits(bits);
    out.insert(out.end(), packed.begin(), packed.end());
    return out;
}

}  // namespace mova
