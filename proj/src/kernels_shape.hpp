#pragma once

#include "mova/error.hpp"
#include "mova/kernels.hpp"

namespace mova::kernels {

inline void check_ghi_shape(std::span<const BigInt> r, const Bits& a, std::span<const BigInt> x)
{
    if (a.size() != r.size() * x.size()) {
        throw DomainError("blind_ghi: exponent matrix has the wrong size");
    }
}

inline void check_coghi_shape(std::span<const BigInt> r, const Bits& a, const Bits& lambda,
                              std::span<const BigInt> x, std::span<const BigInt> x_hat)
{
    const std::size_t l = lambda.size();
    const std::size_t t = x_hat.size();
    if (r.size() != l * t || a.size() != l * t * x.size()) {
        throw DomainError("blind_coghi: input dimensions do not agree");
    }
}

}  // namespace mova::kernels
