#include "mova/encoding.hpp"

#include "mova/error.hpp"

namespace mova {

std::string encode_signature(const Signature& sig, std::string_view alphabet)
{
    if (alphabet.size() != 32) {
        throw DomainError("encode_signature: alphabet must have 32 characters");
    }
    if (sig.bits.size() % 5 != 0) {
        throw DomainError("encode_signature: bit count must be a multiple of 5");
    }
    std::string out;
    out.reserve(sig.bits.size() / 5);
    for (std::size_t i = 0; i < sig.bits.size(); i += 5) {
        unsigned index = 0;
        for (std::size_t j = 0; j < 5; ++j) {
            index = (index << 1) | (sig.bits[i + j] & 1u);
        }
        out.push_back(alphabet[index]);
    }
    return out;
}

Signature decode_signature(std::string_view text, std::string_view alphabet)
{
    if (alphabet.size() != 32) {
        throw DomainError("decode_signature: alphabet must have 32 characters");
    }
    Signature sig;
    sig.bits.reserve(text.size() * 5);
    for (char c : text) {
        auto pos = alphabet.find(c);
        if (pos == std::string_view::npos) {
            throw DomainError(std::string("decode_signature: character '") + c + "' not in alphabet");
        }
        for (int j = 4; j >= 0; --j) {
            sig.bits.push_back(static_cast<std::uint8_t>((pos >> j) & 1u));
        }
    }
    return sig;
}

std::string Ticket::render() const
{
    return message + ' ' + signature_text;
}

std::optional<Ticket> Ticket::parse(std::string_view text)
{
    auto pos = text.rfind(' ');
    if (pos == std::string_view::npos || pos == 0 || pos + 1 == text.size()) {
        return std::nullopt;
    }
    return Ticket{std::string(text.substr(0, pos)), std::string(text.substr(pos + 1))};
}

}  // namespace mova
