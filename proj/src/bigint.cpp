#include "mova/bigint.hpp"

#include <stdexcept>

namespace mova {

Bytes to_bytes(const BigInt& value)
{
    if (sgn(value) < 0) {
        throw std::invalid_argument("to_bytes: negative value");
    }
    if (sgn(value) == 0) {
        return {};
    }
    Bytes out((mpz_sizeinbase(value.get_mpz_t(), 2) + 7) / 8);
    std::size_t written = 0;
    mpz_export(out.data(), &written, 1, 1, 1, 0, value.get_mpz_t());
    out.resize(written);
    return out;
}

Bytes to_bytes_padded(const BigInt& value, std::size_t width)
{
    Bytes raw = to_bytes(value);
    if (raw.size() > width) {
        throw std::invalid_argument("to_bytes_padded: value wider than field");
    }
    Bytes out(width - raw.size(), 0);
    out.insert(out.end(), raw.begin(), raw.end());
    return out;
}

BigInt from_bytes(ByteView bytes)
{
    BigInt out;
    if (!bytes.empty()) {
        mpz_import(out.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
    }
    return out;
}

std::string to_hex(const BigInt& value)
{
    return value.get_str(16);
}

BigInt from_hex(std::string_view hex)
{
    if (hex.empty()) {
        throw std::invalid_argument("from_hex: empty string");
    }
    for (char c : hex) {
        bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
        if (!ok) {
            throw std::invalid_argument("from_hex: invalid hex digit");
        }
    }
    return BigInt(std::string(hex), 16);
}

std::string bytes_to_hex(ByteView bytes)
{
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0x0f]);
    }
    return out;
}

namespace {

int hex_value(char c)
{
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

Bytes hex_to_bytes(std::string_view hex)
{
    if (hex.size() % 2 != 0) {
        throw std::invalid_argument("hex_to_bytes: odd length");
    }
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        int hi = hex_value(hex[2 * i]);
        int lo = hex_value(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) {
            throw std::invalid_argument("hex_to_bytes: invalid hex digit");
        }
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

std::size_t bit_length(const BigInt& value)
{
    if (sgn(value) == 0) {
        return 0;
    }
    return mpz_sizeinbase(value.get_mpz_t(), 2);
}

bool is_probable_prime(const BigInt& value)
{
    return mpz_probab_prime_p(value.get_mpz_t(), 40) > 0;
}

}  // namespace mova
