#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mova/bigint.hpp"
#include "mova/bits.hpp"
#include "mova/error.hpp"

namespace mova {

class WireError : public Error {
public:
    using Error::Error;
};

/// Big-endian encoder. Variable fields carry a 4-byte length prefix:
///   bytes   be32(len) || raw
///   bigint  be32(len) || minimal big-endian magnitude (non-negative only)
///   bits    be32(count) || MSB-first packed bits
class ByteWriter {
public:
    ByteWriter& u8(std::uint8_t v);
    ByteWriter& u32(std::uint32_t v);
    ByteWriter& i64(std::int64_t v);
    ByteWriter& raw(ByteView data);
    ByteWriter& bytes(ByteView data);
    ByteWriter& text(std::string_view s);
    ByteWriter& bigint(const BigInt& v);
    ByteWriter& bigints(const std::vector<BigInt>& vs);
    ByteWriter& bits(const Bits& b);

    const Bytes& data() const { return out_; }
    Bytes take() { return std::move(out_); }

private:
    Bytes out_;
};

/// Decoder matching ByteWriter. Throws WireError on truncation or oversized fields.
class ByteReader {
public:
    explicit ByteReader(ByteView data) : data_(data) {}

    std::uint8_t u8();
    std::uint32_t u32();
    std::int64_t i64();
    Bytes raw(std::size_t n);
    Bytes bytes();
    std::string text();
    BigInt bigint();
    std::vector<BigInt> bigints();
    Bits bits();

    bool done() const { return pos_ == data_.size(); }
    std::size_t remaining() const { return data_.size() - pos_; }
    /// Throws WireError if unread bytes remain.
    void expect_done() const;

private:
    ByteView need(std::size_t n);

    ByteView data_;
    std::size_t pos_ = 0;
};

}  // namespace mova
