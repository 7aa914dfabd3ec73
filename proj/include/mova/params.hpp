#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace mova {

/// Digits 2-9 and A-Z without I and O.
inline constexpr std::string_view kDefaultAlphabet = "23456789ABCDEFGHJKLMNPQRSTUVWXYZ";

/// Longest journey message that still fits an SMS ticket once the separator and
/// four signature characters are appended.
inline constexpr std::size_t kMaxMessageLength = 155;
inline constexpr std::size_t kMaxTicketLength = 160;

struct DomainParams {
    std::size_t l_key = 64;
    std::size_t l_sig = 20;
    std::size_t i_con = 20;
    std::size_t i_den = 20;
    std::size_t modulus_bits = 512;
    std::string alphabet{kDefaultAlphabet};

    /// Throws DomainError describing the first violated constraint.
    void validate() const;

    /// Characters in an encoded signature (5 bits per character, d = 2).
    std::size_t signature_chars() const { return l_sig / 5; }

    friend bool operator==(const DomainParams&, const DomainParams&) = default;
};

}  // namespace mova
