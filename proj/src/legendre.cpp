#include "mova/legendre.hpp"

#include "mova/error.hpp"

namespace mova {

int legendre_euler(const BigInt& a, const BigInt& p, const BigInt& half)
{
    BigInt x = pow_mod(a, half, p);
    if (x == 1) {
        return 1;
    }
    if (x == p - 1) {
        return -1;
    }
    return 0;
}

int legendre(const BigInt& a, const BigInt& p)
{
    if (p < 3 || mpz_even_p(p.get_mpz_t())) {
        throw DomainError("legendre: modulus must be an odd prime");
    }
    BigInt reduced = a % p;
    if (reduced < 0) {
        reduced += p;
    }
    if (reduced == 0) {
        throw DomainError("legendre: symbol undefined for multiples of the modulus");
    }
    if (!is_probable_prime(p)) {
        throw DomainError("legendre: modulus must be an odd prime");
    }
    const BigInt half = (p - 1) / 2;
    int value = legendre_euler(reduced, p, half);
    if (value == 0) {
        throw DomainError("legendre: modulus must be an odd prime");
    }
    return value;
}

}  // namespace mova
