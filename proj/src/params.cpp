#include "mova/params.hpp"

#include <bitset>

#include "mova/error.hpp"

namespace mova {

void DomainParams::validate() const
{
    if (l_key == 0 || l_sig == 0 || i_con == 0 || i_den == 0) {
        throw DomainError("domain parameters: counts must be positive");
    }
    if (l_sig % 5 != 0) {
        throw DomainError("domain parameters: l_sig must be a multiple of 5");
    }
    if (modulus_bits < 16) {
        throw DomainError("domain parameters: modulus_bits must be at least 16");
    }
    if (alphabet.size() != 32) {
        throw DomainError("domain parameters: alphabet must have 32 characters");
    }
    std::bitset<256> seen;
    for (char c : alphabet) {
        auto u = static_cast<unsigned char>(c);
        if (u < 0x21 || u > 0x7e) {
            throw DomainError("domain parameters: alphabet must be printable ASCII");
        }
        if (seen[u]) {
            throw DomainError("domain parameters: alphabet characters must be distinct");
        }
        seen[u] = true;
    }
    for (char c : std::string_view("0Oo1Il")) {
        if (seen[static_cast<unsigned char>(c)]) {
            throw DomainError("domain parameters: alphabet contains a confusable character");
        }
    }
}

}  // namespace mova
