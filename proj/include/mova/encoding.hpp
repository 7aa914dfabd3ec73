#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "mova/params.hpp"
#include "mova/signing.hpp"

namespace mova {

/// Five bits per character, big-endian within each chunk. Bit count must be a multiple of 5.
std::string encode_signature(const Signature& sig, std::string_view alphabet = kDefaultAlphabet);

/// Throws DomainError for characters outside the alphabet.
Signature decode_signature(std::string_view text, std::string_view alphabet = kDefaultAlphabet);

/// SMS ticket: `<message> <signature_text>`.
struct Ticket {
    std::string message;
    std::string signature_text;

    std::string render() const;
    /// Splits at the last space. Returns nullopt if there is no separator or either part is empty.
    static std::optional<Ticket> parse(std::string_view text);

    friend bool operator==(const Ticket&, const Ticket&) = default;
};

}  // namespace mova
