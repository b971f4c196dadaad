#ifndef QTORUS_WEIL_HPP
#define QTORUS_WEIL_HPP

#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qtorus/group.hpp"
#include "qtorus/matrix.hpp"

namespace qtorus {

// Outcome of an identity sweep: worst deviation seen, number of checks, and
// descriptions of any violations of the tolerance.
struct CheckReport {
    std::size_t checked = 0;
    double max_deviation = 0.0;
    double tolerance = 1e-8;
    std::size_t violations = 0;
    std::vector<std::string> failures; // capped at a few entries

    bool passed() const { return violations == 0; }
    void record(double deviation, const std::string& label);
};

// Closed form of one operator kernel: prefactor * psi(phase(x, y)), either on
// the whole plane (big Bruhat cell) or supported on the line y = slope x +
// offset (lower-triangular rho, and every pi). The phase is the F_p-valued
// quadratic/affine function
//   phase(x, y) = qxx x^2 + qxy xy + qyy y^2 + lx x + constant.
struct SupportLine {
    Scalar slope = 0, offset = 0;
};
struct KernelPhase {
    cplx prefactor = 1.0;
    Scalar qxx = 0, qxy = 0, qyy = 0, lx = 0, constant = 0;
    std::optional<SupportLine> line; // empty: full support

    Scalar phase(const PrimeContext& ctx, Scalar x, Scalar y) const {
        return ctx.reduce(qxx * x * x + qxy * x * y + qyy * y * y + lx * x + constant);
    }
    bool supported(const PrimeContext& ctx, Scalar x, Scalar y) const {
        return !line || y == ctx.reduce(line->slope * x + line->offset);
    }
    cplx value(const PrimeContext& ctx, Scalar x, Scalar y) const {
        return supported(ctx, x, y) ? prefactor * ctx.psi(phase(ctx, x, y)) : cplx(0.0);
    }
};

// Kernel of rho(g) along the opposite Bruhat decomposition with Weyl element
// w = (0,1;-1,0). Big cell (b != 0):
//   K(x,y) = a_g psi(-(b^{-1}d/2) x^2 + ((b^{-1}-c+ab^{-1}d)/2) xy - (ab^{-1}/2) y^2),
//   a_g = big_cell_normalizer(b).
// Lower triangular (a, r):
//   K(x,y) = sigma(a) psi(-(r a^{-1}/2) x^2) delta_{y = a^{-1} x}.
KernelPhase rho_kernel(const PrimeContext& ctx, const SL2Element& g);

// Kernel of pi(h), h = (q', p', z):
//   K(x,y) = psi(p'q'/2 + p'x + z) delta_{y = x + q'}.
KernelPhase pi_kernel(const PrimeContext& ctx, const HeisenbergElement& h);

// The Weil representation operator rho(g) as a dense p x p matrix. Operators
// act by (K f)(x) = sum_y K(x,y) f(y); composition is the matrix product.
// The family is an honest (linearized) representation.
ComplexMatrix rho_operator(const PrimeContext& ctx, const SL2Element& g);

// The Heisenberg representation pi(h).
ComplexMatrix pi_operator(const PrimeContext& ctx, const HeisenbergElement& h);
inline ComplexMatrix pi_operator(const PrimeContext& ctx, const PlaneVector& xi) {
    return pi_operator(ctx, section(xi));
}

// F(B, xi) = Tr(rho(B) pi(s(xi))). Exploits the line support of both kernels
// to run in O(p); agrees with the dense product to machine precision.
cplx trace_F(const PrimeContext& ctx, const SL2Element& b, const PlaneVector& xi);

// F on the standard punctured torus: sigma(a) psi((1/2)(a+1)/(a-1) lambda mu).
// Throws DegenerateTorusPoint for a in {0, 1}.
cplx torus_closed_form(const PrimeContext& ctx, Scalar a, Scalar lambda, Scalar mu);

// F on the open cell det(g - I) != 0:
//   psi((1/4) omega((g+I)(g-I)^{-1} v, v)) sigma(tr(g) - 2).
// Throws SingularShift when g - I is singular.
cplx invariant_closed_form(const PrimeContext& ctx, const SL2Element& g, const PlaneVector& v);

// Egorov identity rho(B) pi(s(xi)) rho(B)^{-1} = pi(s(B xi)) over the given sets.
CheckReport check_egorov(const PrimeContext& ctx, std::span<const SL2Element> bs,
                         std::span<const PlaneVector> xis, double tol = 1e-8);
CheckReport check_egorov_exhaustive(const PrimeContext& ctx, double tol = 1e-8);
CheckReport check_egorov_sampled(const PrimeContext& ctx, std::size_t pairs, std::uint64_t seed,
                                 double tol = 1e-8);

// rho(g1) rho(g2) = rho(g1 g2), with no projective scalar.
CheckReport check_homomorphism(const PrimeContext& ctx, std::span<const SL2Element> g1s,
                               std::span<const SL2Element> g2s, double tol = 1e-8);
CheckReport check_homomorphism_exhaustive(const PrimeContext& ctx, double tol = 1e-8);
CheckReport check_homomorphism_sampled(const PrimeContext& ctx, std::size_t pairs,
                                       std::uint64_t seed, double tol = 1e-8);

// rho(g) rho(g)* = I.
CheckReport check_unitarity(const PrimeContext& ctx, std::span<const SL2Element> gs,
                            double tol = 1e-9);
CheckReport check_unitarity_exhaustive(const PrimeContext& ctx, double tol = 1e-9);
CheckReport check_unitarity_sampled(const PrimeContext& ctx, std::size_t count,
                                    std::uint64_t seed, double tol = 1e-9);

// The unique sign eps with pi(s(u)) pi(s(v)) = psi(eps/2 omega(u,v)) pi(s(u+v)),
// measured exhaustively. Throws NoConsistentSign if neither sign fits.
struct SignReport {
    int sign = 0;
    double max_deviation = 0.0;
    std::size_t checked = 0;
};
SignReport heisenberg_relation_sign(const PrimeContext& ctx, double tol = 1e-9);

SL2Element random_sl2(const PrimeContext& ctx, std::mt19937_64& rng);
PlaneVector random_nonzero_vector(const PrimeContext& ctx, std::mt19937_64& rng);

} // namespace qtorus

#endif
