#ifndef QTORUS_GROUP_HPP
#define QTORUS_GROUP_HPP

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <variant>
#include <vector>

#include "qtorus/field.hpp"

namespace qtorus {

// Integral 2x2 matrix with det = 1 over the integers; the global input A.
struct IntegralSL2 {
    long long a = 1, b = 0, c = 0, d = 1;

    long long det() const { return a * d - b * c; }
    long long trace() const { return a + d; }
    bool operator==(const IntegralSL2&) const = default;
};

// |tr| > 2 over the integers. Throws NotUnimodular if det != 1.
bool is_hyperbolic(const IntegralSL2& m);

// Free lattice point (l, m); reduced mod p at the CLI boundary.
struct LatticeVector {
    long long l = 0, m = 0;
    bool operator==(const LatticeVector&) const = default;
};

// Element of SL2(F_p); entries stored reduced into [0, p).
struct SL2Element {
    Scalar a = 1, b = 0, c = 0, d = 1;
    bool operator==(const SL2Element&) const = default;
};

// Vector (lambda, mu) in the plane V = F_p^2.
struct PlaneVector {
    Scalar lambda = 0, mu = 0;
    bool operator==(const PlaneVector&) const = default;
    bool is_zero() const { return lambda == 0 && mu == 0; }
};

// Element (v, z) of the Heisenberg group H = V x F_p.
struct HeisenbergElement {
    PlaneVector v;
    Scalar z = 0;
    bool operator==(const HeisenbergElement&) const = default;
};

// The section s(v) = (v, 0) of H -> V.
inline HeisenbergElement section(PlaneVector v) { return {v, 0}; }

SL2Element reduce_mod_p(const PrimeContext& ctx, const IntegralSL2& m);
PlaneVector reduce_mod_p(const PrimeContext& ctx, const LatticeVector& v);
SL2Element sl2_mul(const PrimeContext& ctx, const SL2Element& g, const SL2Element& h);
SL2Element sl2_inverse(const PrimeContext& ctx, const SL2Element& g);
inline SL2Element sl2_identity() { return {1, 0, 0, 1}; }
SL2Element sl2_negate(const PrimeContext& ctx, const SL2Element& g);

// Column action g.(lambda, mu)^T.
PlaneVector apply(const PrimeContext& ctx, const SL2Element& g, const PlaneVector& v);

PlaneVector plane_add(const PrimeContext& ctx, const PlaneVector& u, const PlaneVector& v);
PlaneVector plane_negate(const PrimeContext& ctx, const PlaneVector& v);
PlaneVector plane_scale(const PrimeContext& ctx, Scalar t, const PlaneVector& v);

// omega(u, v) = u.lambda * v.mu - u.mu * v.lambda mod p.
Scalar symplectic_form(const PrimeContext& ctx, const PlaneVector& u, const PlaneVector& v);

// Group law (v,z)(v',z') = (v+v', z+z'+ (1/2) omega(v,v')).
HeisenbergElement heisenberg_mul(const PrimeContext& ctx, const HeisenbergElement& h1,
                                 const HeisenbergElement& h2);
HeisenbergElement heisenberg_inverse(const PrimeContext& ctx, const HeisenbergElement& h);

// Opposite Bruhat decomposition: the big cell is b != 0, the complement is
// lower triangular with diagonal (a, a^{-1}) and lower entry r.
struct BigCell {
    Scalar a, b, c, d;
};
struct LowerTriangular {
    Scalar a, r;
};
using BruhatClass = std::variant<BigCell, LowerTriangular>;
BruhatClass bruhat_classify(const SL2Element& g);

// Multiplicative character chi_k of a torus, chi_k(gen^j) = exp(2 pi i jk/order).
struct TorusCharacter {
    int k = 0;
};

// The Hecke torus T_A: the centralizer {x I + y A} of A in SL2(F_p),
// cyclic of order p-1 (split) or p+1 (inert).
class TorusDescriptor {
public:
    Scalar p() const { return p_; }
    Scalar order() const { return order_; }
    bool split() const { return split_; }
    const std::vector<SL2Element>& elements() const { return elements_; }
    const SL2Element& generator() const { return generator_; }
    const SL2Element& a_mod_p() const { return a_mod_p_; }
    const IntegralSL2& a_integral() const { return a_integral_; }

    // Discrete log with respect to the generator. Throws NotInTorus.
    Scalar dlog(const SL2Element& g) const;
    bool contains(const SL2Element& g) const;

    // exp(2 pi i j / order) from the table built once per torus.
    cplx root_of_unity(Scalar j) const;

    friend TorusDescriptor hecke_torus(const PrimeContext& ctx, const IntegralSL2& A);

private:
    Scalar p_ = 0;
    Scalar order_ = 0;
    bool split_ = false;
    std::vector<SL2Element> elements_;
    SL2Element generator_;
    SL2Element a_mod_p_;
    IntegralSL2 a_integral_;
    std::unordered_map<std::int64_t, Scalar> dlog_;
    std::vector<cplx> roots_;
};

// Enumerates the centralizer via the conic det(xI + yA) = 1 and fixes the
// lexicographically first full-order element as generator. Throws
// NotUnimodular or RamifiedPrime (p | tr^2 - 4).
TorusDescriptor hecke_torus(const PrimeContext& ctx, const IntegralSL2& A);

cplx character_value(const TorusDescriptor& torus, TorusCharacter chi, const SL2Element& g);

// True iff A xi is proportional to xi mod p (zero counts as an eigenvector).
bool is_eigenvector(const PrimeContext& ctx, const SL2Element& a_mod_p, const PlaneVector& xi);

// The orbit T_A . xi, of size |T_A| for non-eigenvector xi.
// Throws EigenvectorInput.
std::vector<PlaneVector> torus_orbit(const PrimeContext& ctx, const TorusDescriptor& torus,
                                     const PlaneVector& xi);

// Enumerations used by the exhaustive sweeps.
std::vector<SL2Element> all_sl2_elements(const PrimeContext& ctx);
std::vector<PlaneVector> all_plane_vectors(const PrimeContext& ctx, bool include_zero);

std::int64_t encode(const PrimeContext& ctx, const SL2Element& g);

} // namespace qtorus

#endif
