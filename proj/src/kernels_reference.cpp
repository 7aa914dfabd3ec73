#include "kernels_shape.hpp"
#include "mova/error.hpp"
#include "mova/kernels.hpp"

namespace mova::kernels {

Bits combine_ghi(const Bits& a, const Bits& y, std::size_t l)
{
    const std::size_t s = y.size();
    if (a.size() != l * s) {
        throw DomainError("combine_ghi: exponent matrix has the wrong size");
    }
    Bits w(l, 0);
    for (std::size_t i = 0; i < l; ++i) {
        std::uint8_t acc = 0;
        for (std::size_t j = 0; j < s; ++j) {
            acc ^= a[i * s + j] & y[j];
        }
        w[i] = acc;
    }
    return w;
}

Bits combine_coghi(const Bits& a, const Bits& lambda, const Bits& y, const Bits& y_hat)
{
    const std::size_t l = lambda.size();
    const std::size_t t = y_hat.size();
    const std::size_t s = y.size();
    if (a.size() != l * t * s) {
        throw DomainError("combine_coghi: exponent array has the wrong size");
    }
    Bits w(l * t, 0);
    for (std::size_t i = 0; i < l; ++i) {
        for (std::size_t k = 0; k < t; ++k) {
            std::uint8_t acc = lambda[i] & y_hat[k];
            const std::size_t row = (i * t + k) * s;
            for (std::size_t j = 0; j < s; ++j) {
                acc ^= a[row + j] & y[j];
            }
            w[i * t + k] = acc;
        }
    }
    return w;
}

namespace reference {

Bits homomorphism_batch(std::span<const BigInt> xs, const PrivateKey& sk)
{
    Bits out;
    out.reserve(xs.size());
    for (const auto& x : xs) {
        out.push_back(sign_to_bit(homomorphism(x, sk)));
    }
    return out;
}

std::vector<BigInt> blind_ghi(const BigInt& n, std::span<const BigInt> r, const Bits& a,
                              std::span<const BigInt> x)
{
    check_ghi_shape(r, a, x);
    const std::size_t s = x.size();
    std::vector<BigInt> u;
    u.reserve(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        BigInt acc = mul_mod(r[i], r[i], n);
        for (std::size_t j = 0; j < s; ++j) {
            if (a[i * s + j]) {
                acc = mul_mod(acc, x[j], n);
            }
        }
        u.push_back(std::move(acc));
    }
    return u;
}

std::vector<BigInt> blind_coghi(const BigInt& n, std::span<const BigInt> r, const Bits& a,
                                const Bits& lambda, std::span<const BigInt> x,
                                std::span<const BigInt> x_hat)
{
    check_coghi_shape(r, a, lambda, x, x_hat);
    const std::size_t l = lambda.size();
    const std::size_t t = x_hat.size();
    const std::size_t s = x.size();
    std::vector<BigInt> u;
    u.reserve(l * t);
    for (std::size_t i = 0; i < l; ++i) {
        for (std::size_t k = 0; k < t; ++k) {
            const std::size_t idx = i * t + k;
            BigInt acc = mul_mod(r[idx], r[idx], n);
            for (std::size_t j = 0; j < s; ++j) {
                if (a[idx * s + j]) {
                    acc = mul_mod(acc, x[j], n);
                }
            }
            if (lambda[i]) {
                acc = mul_mod(acc, x_hat[k], n);
            }
            u.push_back(std::move(acc));
        }
    }
    return u;
}

}  // namespace reference

}  // namespace mova::kernels
