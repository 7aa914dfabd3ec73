#include <atomic>

#ifdef MOVA_USE_OPENMP
#include <omp.h>
#endif

#include "kernels_shape.hpp"
#include "mova/error.hpp"
#include "mova/kernels.hpp"
#include "mova/legendre.hpp"

namespace mova::kernels {

namespace {

// Below this many elements the fork/join cost outweighs the work.
constexpr long kParallelThreshold = 8;

}  // namespace

int max_threads()
{
#ifdef MOVA_USE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

Bits homomorphism_batch(std::span<const BigInt> xs, const PrivateKey& sk)
{
    const long count = static_cast<long>(xs.size());
    Bits out(xs.size(), 0);
    std::atomic<bool> invalid{false};

#pragma omp parallel for schedule(static) if (count >= kParallelThreshold)
    for (long i = 0; i < count; ++i) {
        BigInt reduced = xs[i] % sk.n();
        if (reduced < 0) {
            reduced += sk.n();
        }
        if (reduced == 0 || gcd(reduced, sk.n()) != 1) {
            invalid.store(true, std::memory_order_relaxed);
            continue;
        }
        reduced %= sk.p();
        out[i] = sign_to_bit(legendre_euler(reduced, sk.p(), sk.half()));
    }

    if (invalid.load()) {
        throw DomainError("invalid element");
    }
    return out;
}

std::vector<BigInt> blind_ghi(const BigInt& n, std::span<const BigInt> r, const Bits& a,
                              std::span<const BigInt> x)
{
    check_ghi_shape(r, a, x);
    const long l = static_cast<long>(r.size());
    const std::size_t s = x.size();
    std::vector<BigInt> u(r.size());

#pragma omp parallel for schedule(dynamic) if (l >= kParallelThreshold)
    for (long i = 0; i < l; ++i) {
        BigInt acc = mul_mod(r[i], r[i], n);
        const std::size_t row = static_cast<std::size_t>(i) * s;
        for (std::size_t j = 0; j < s; ++j) {
            if (a[row + j]) {
                acc = mul_mod(acc, x[j], n);
            }
        }
        u[i] = std::move(acc);
    }
    return u;
}

std::vector<BigInt> blind_coghi(const BigInt& n, std::span<const BigInt> r, const Bits& a,
                                const Bits& lambda, std::span<const BigInt> x,
                                std::span<const BigInt> x_hat)
{
    check_coghi_shape(r, a, lambda, x, x_hat);
    const std::size_t t = x_hat.size();
    const std::size_t s = x.size();
    const long cells = static_cast<long>(r.size());
    std::vector<BigInt> u(r.size());

#pragma omp parallel for schedule(dynamic, 4) if (cells >= kParallelThreshold)
    for (long idx = 0; idx < cells; ++idx) {
        const std::size_t cell = static_cast<std::size_t>(idx);
        const std::size_t i = cell / t;
        const std::size_t k = cell % t;
        BigInt acc = mul_mod(r[cell], r[cell], n);
        for (std::size_t j = 0; j < s; ++j) {
            if (a[cell * s + j]) {
                acc = mul_mod(acc, x[j], n);
            }
        }
        if (lambda[i]) {
            acc = mul_mod(acc, x_hat[k], n);
        }
        u[cell] = std::move(acc);
    }
    return u;
}

}  // namespace mova::kernels
