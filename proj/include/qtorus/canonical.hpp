#ifndef QTORUS_CANONICAL_HPP
#define QTORUS_CANONICAL_HPP

#include "qtorus/weil.hpp"

namespace qtorus {

// A line L in the symplectic plane together with an orientation: the
// equivariant function rho_L(t . l0) = sign . sigma(t) on L \ {0}, where l0
// is the direction normalized so its first nonzero coordinate is 1.
// There are exactly 2(p+1) of these.
struct OrientedLagrangian {
    PlaneVector direction;
    int sign = +1;

    bool operator==(const OrientedLagrangian&) const = default;
    bool same_line(const OrientedLagrangian& other) const { return direction == other.direction; }
    OrientedLagrangian flipped() const { return {direction, -sign}; }
};

// A vector of the induced model H_{L}: the p values on the fixed transversal.
struct CanonicalVector {
    OrientedLagrangian lagrangian;
    Eigen::VectorXcd values;
};

std::vector<OrientedLagrangian> enumerate_oriented_lagrangians(const PrimeContext& ctx);

// Fixed complement of L: (0,1) unless L is span(0,1), in which case (1,0).
PlaneVector transversal_direction(const OrientedLagrangian& lagrangian);

// rho_L on the whole line; zero at the origin, matching sigma(0) = 0.
int orientation_value(const PrimeContext& ctx, const OrientedLagrangian& lagrangian,
                      const PlaneVector& l);

// Writes h = z . r with z in the extended line and r = s(t . m) in the
// transversal; any f in H_L satisfies f(h) = phase * values[index].
struct CosetCoords {
    cplx phase;
    Scalar index;
};
CosetCoords coset_reduce(const PrimeContext& ctx, const OrientedLagrangian& lagrangian,
                         const HeisenbergElement& h);

cplx evaluate(const PrimeContext& ctx, const CanonicalVector& f, const HeisenbergElement& h);

// Right translation pi_L(h) on transversal coordinates of H_L.
ComplexMatrix heisenberg_action(const PrimeContext& ctx, const OrientedLagrangian& lagrangian,
                                const HeisenbergElement& h);

// Normalization factor a_{L1,L2} of the canonical intertwiner, computed with
// the stored basepoint of L2; independent of that choice.
cplx intertwiner_normalizer(const PrimeContext& ctx, const OrientedLagrangian& from,
                            const OrientedLagrangian& to);
cplx intertwiner_normalizer(const PrimeContext& ctx, const OrientedLagrangian& from,
                            const OrientedLagrangian& to, const PlaneVector& basepoint);

// theta_{L1 -> L2} on transversal coordinates: a_{L1,L2} times the averaging
// operator for distinct lines, +-I for equal lines.
ComplexMatrix intertwiner(const PrimeContext& ctx, const OrientedLagrangian& from,
                          const OrientedLagrangian& to);

// Cocycle constants of a general-position triple: C from the graph map
// r: L2 -> L3 through L1 (l2 + r(l2) in L1), D from the a-factor identity.
// Satisfy C * D = 1 and |C|^2 = p. Throws NotGeneralPosition.
struct CocycleConstants {
    cplx c;
    cplx d;
};
CocycleConstants cocycle_constants(const PrimeContext& ctx, const OrientedLagrangian& l1,
                                   const OrientedLagrangian& l2, const OrientedLagrangian& l3);

// The symplectic action on models: f -> f^g with f^g(h) = f(g^{-1} h),
// realized as a matrix from the transversal coordinates of L to those of
// g L (with the transported orientation rho^g(l) = rho_L(g^{-1} l)).
struct TransportedModel {
    OrientedLagrangian image;
    ComplexMatrix map;
};
TransportedModel symplectic_transport(const PrimeContext& ctx, const SL2Element& g,
                                      const OrientedLagrangian& lagrangian);

// The Weil representation realized through the canonical system:
// f -> theta_{g V2 -> V2}(f^g) with V2 = span(0,1) positively oriented,
// f^g(h) = f(g^{-1} h). Acts on the same coordinates as rho_operator.
ComplexMatrix canonical_weil_operator(const PrimeContext& ctx, const SL2Element& g);

// theta_{L2->L3} theta_{L1->L2} = theta_{L1->L3} over all ordered triples,
// coincident lines and opposite orientations included.
CheckReport check_associativity(const PrimeContext& ctx, double tol = 1e-8);

// Scalar comparing the canonical construction against the kernel formulas:
// the single unit constant c with canonical(g) = c * rho_operator(g) for all g.
struct ProportionalityReport {
    cplx constant = 1.0;
    double max_deviation = 0.0;         // worst |canonical(g) - c rho(g)| entrywise
    double constant_spread = 0.0;       // worst |c_g - c| over the group
    std::size_t checked = 0;
};
ProportionalityReport canonical_kernel_comparison(const PrimeContext& ctx);

} // namespace qtorus

#endif
