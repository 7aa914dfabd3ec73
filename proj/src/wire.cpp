#include "mova/wire.hpp"

namespace mova {

ByteWriter& ByteWriter::u8(std::uint8_t v)
{
    out_.push_back(v);
    return *this;
}

ByteWriter& ByteWriter::u32(std::uint32_t v)
{
    for (int shift = 24; shift >= 0; shift -= 8) {
        out_.push_back(static_cast<std::uint8_t>(v >> shift));
    }
    return *this;
}

ByteWriter& ByteWriter::i64(std::int64_t v)
{
    const auto u = static_cast<std::uint64_t>(v);
    for (int shift = 56; shift >= 0; shift -= 8) {
        out_.push_back(static_cast<std::uint8_t>(u >> shift));
    }
    return *this;
}

ByteWriter& ByteWriter::raw(ByteView data)
{
    out_.insert(out_.end(), data.begin(), data.end());
    return *this;
}

ByteWriter& ByteWriter::bytes(ByteView data)
{
    u32(static_cast<std::uint32_t>(data.size()));
    return raw(data);
}

ByteWriter& ByteWriter::text(std::string_view s)
{
    return bytes({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()});
}

ByteWriter& ByteWriter::bigint(const BigInt& v)
{
    if (sgn(v) < 0) {
        throw WireError("cannot encode a negative integer");
    }
    return bytes(to_bytes(v));
}

ByteWriter& ByteWriter::bigints(const std::vector<BigInt>& vs)
{
    u32(static_cast<std::uint32_t>(vs.size()));
    for (const auto& v : vs) {
        bigint(v);
    }
    return *this;
}

ByteWriter& ByteWriter::bits(const Bits& b)
{
    u32(static_cast<std::uint32_t>(b.size()));
    return raw(pack_bits(b));
}

namespace {

// Generous ceiling for any single field; frames are capped at 1 MiB anyway.
constexpr std::size_t kMaxField = 1u << 20;

}  // namespace

ByteView ByteReader::need(std::size_t n)
{
    if (n > remaining()) {
        throw WireError("truncated message");
    }
    ByteView out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
}

std::uint8_t ByteReader::u8()
{
    return need(1)[0];
}

std::uint32_t ByteReader::u32()
{
    ByteView b = need(4);
    return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) | (std::uint32_t{b[2]} << 8) |
           std::uint32_t{b[3]};
}

std::int64_t ByteReader::i64()
{
    ByteView b = need(8);
    std::uint64_t u = 0;
    for (std::uint8_t byte : b) {
        u = (u << 8) | byte;
    }
    return static_cast<std::int64_t>(u);
}

Bytes ByteReader::raw(std::size_t n)
{
    ByteView b = need(n);
    return Bytes(b.begin(), b.end());
}

Bytes ByteReader::bytes()
{
    const std::uint32_t len = u32();
    if (len > kMaxField) {
        throw WireError("field too large");
    }
    return raw(len);
}

std::string ByteReader::text()
{
    Bytes b = bytes();
    return std::string(b.begin(), b.end());
}

BigInt ByteReader::bigint()
{
    return from_bytes(bytes());
}

std::vector<BigInt> ByteReader::bigints()
{
    const std::uint32_t count = u32();
    // Every element needs at least its 4-byte length prefix.
    if (count > remaining() / 4) {
        throw WireError("element count exceeds message size");
    }
    std::vector<BigInt> out;
    out.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        out.push_back(bigint());
    }
    return out;
}

Bits ByteReader::bits()
{
    const std::uint32_t count = u32();
    const std::size_t packed = (std::size_t{count} + 7) / 8;
    if (packed > remaining()) {
        throw WireError("truncated bit vector");
    }
    try {
        return unpack_bits(need(packed), count);
    } catch (const std::invalid_argument& e) {
        throw WireError(e.what());
    }
}

void ByteReader::expect_done() const
{
    if (!done()) {
        throw WireError("trailing bytes in message");
    }
}

}  // namespace mova
