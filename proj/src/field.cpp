#include "qtorus/field.hpp"

#include <cmath>
#include <numbers>

namespace qtorus {

bool is_supported_prime(Scalar p) {
    if (p < kMinPrime || p > kMaxPrime || p % 2 == 0) return false;
    for (Scalar d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

PrimeContext::PrimeContext(Scalar p) : p_(p) {
    if (!is_supported_prime(p))
        throw InvalidPrime("PrimeContext: p must be an odd prime with 5 <= p <= 499, got " +
                           std::to_string(p));
    half_ = (p_ + 1) / 2;

    psi_.resize(static_cast<std::size_t>(p_));
    for (Scalar t = 0; t < p_; ++t)
        psi_[static_cast<std::size_t>(t)] =
            std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(p_));

    // Mark squares; everything nonzero and unmarked is a non-residue.
    legendre_.assign(static_cast<std::size_t>(p_), -1);
    legendre_[0] = 0;
    for (Scalar t = 1; t < p_; ++t)
        legendre_[static_cast<std::size_t>(mul(t, t))] = 1;

    // inv[t] = -(p/t) * inv[p mod t] mod p, the linear-time recurrence.
    inv_.assign(static_cast<std::size_t>(p_), 0);
    inv_[1] = 1;
    for (Scalar t = 2; t < p_; ++t)
        inv_[static_cast<std::size_t>(t)] = reduce(-(p_ / t) * inv_[static_cast<std::size_t>(p_ % t)]);

    quarter_ = inv(4 % p_);
}

Scalar PrimeContext::inv(Scalar t) const {
    t = reduce(t);
    if (t == 0) throw ZeroParameter("inverse of 0 mod " + std::to_string(p_));
    return inv_[static_cast<std::size_t>(t)];
}

Scalar PrimeContext::pow(Scalar base, Scalar exponent) const {
    base = reduce(base);
    Scalar result = 1;
    while (exponent > 0) {
        if (exponent & 1) result = mul(result, base);
        base = mul(base, base);
        exponent >>= 1;
    }
    return result;
}

cplx big_cell_normalizer(const PrimeContext& ctx, Scalar b) {
    b = ctx.reduce(b);
    if (b == 0)
        throw ZeroParameter("big_cell_normalizer: b = 0 does not lie in the big cell");
    cplx sum = 0.0;
    const Scalar coeff = ctx.mul(ctx.half(), b);
    for (Scalar t = 1; t < ctx.p(); ++t)
        sum += ctx.psi(ctx.mul(coeff, t)) * static_cast<double>(ctx.legendre(t));
    return sum / static_cast<double>(ctx.p());
}

} // namespace qtorus
