#ifndef QTORUS_FIELD_HPP
#define QTORUS_FIELD_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "qtorus/errors.hpp"

namespace qtorus {

using Scalar = std::int64_t;
using cplx = std::complex<double>;

// Arithmetic context for a fixed odd prime p, 5 <= p <= 499.
//
// Holds the precomputed tables every other module reads:
//   psi(t)      = exp(2*pi*i*t/p), the standard additive character,
//   legendre(t) = the quadratic character sigma with sigma(0) = 0,
//   inv(t)      = multiplicative inverse,
// plus the distinguished constants half = (p+1)/2 (the inverse of 2)
// and quarter = inverse of 4. Immutable after construction and safe to
// share across threads.
class PrimeContext {
public:
    explicit PrimeContext(Scalar p);

    Scalar p() const { return p_; }
    Scalar half() const { return half_; }
    Scalar quarter() const { return quarter_; }

    // Reduces any integer into [0, p).
    Scalar reduce(Scalar x) const {
        x %= p_;
        return x < 0 ? x + p_ : x;
    }
    Scalar add(Scalar a, Scalar b) const { return reduce(a + b); }
    Scalar sub(Scalar a, Scalar b) const { return reduce(a - b); }
    Scalar mul(Scalar a, Scalar b) const { return reduce(reduce(a) * reduce(b)); }
    Scalar neg(Scalar a) const { return reduce(-a); }

    // Throws ZeroParameter on t = 0.
    Scalar inv(Scalar t) const;
    Scalar pow(Scalar base, Scalar exponent) const;

    // psi(t) = exp(2*pi*i*t/p), read from the table built once at construction.
    cplx psi(Scalar t) const { return psi_[reduce(t)]; }

    // The Legendre character; sigma(0) = 0 by the Gauss-sum convention.
    int legendre(Scalar t) const { return legendre_[reduce(t)]; }

private:
    Scalar p_;
    Scalar half_;
    Scalar quarter_;
    std::vector<cplx> psi_;
    std::vector<int> legendre_;
    std::vector<Scalar> inv_;
};

inline int legendre(const PrimeContext& ctx, Scalar t) { return ctx.legendre(t); }
inline cplx additive_character(const PrimeContext& ctx, Scalar t) { return ctx.psi(t); }

// a_g = (1/p) * sum_t psi((b/2) t) sigma(t), the big-cell kernel normalizer.
// Modulus is p^{-1/2}. Throws ZeroParameter when b = 0.
cplx big_cell_normalizer(const PrimeContext& ctx, Scalar b);

inline constexpr Scalar kMinPrime = 5;
inline constexpr Scalar kMaxPrime = 499;

bool is_supported_prime(Scalar p);

} // namespace qtorus

#endif
