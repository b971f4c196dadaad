#ifndef QTORUS_HECKE_HPP
#define QTORUS_HECKE_HPP

#include <optional>

#include "qtorus/weil.hpp"

namespace qtorus {

// P_chi = (1/|T|) sum_B chi(B)^{-1} rho(B), the orthogonal projector onto the
// Hecke eigenspace of chi.
ComplexMatrix projector(const PrimeContext& ctx, const TorusDescriptor& torus, TorusCharacter chi);

// rank(P_chi) = round(Re Tr P_chi), guarded by |Tr - round| < 1e-6. Ranks sum
// to p; every non-quadratic chi has rank 1 and the quadratic one has rank 2
// (split) or 0 (inert).
std::vector<std::pair<int, int>> eigenspace_dimensions(const PrimeContext& ctx,
                                                       const TorusDescriptor& torus);
int eigenspace_rank(const PrimeContext& ctx, const TorusDescriptor& torus, TorusCharacter chi);

// The quadratic character sits at index order/2.
inline int quadratic_character_index(const TorusDescriptor& torus) {
    return static_cast<int>(torus.order() / 2);
}

// sum_{B in T} F(B, xi) chi(B), the chi-twisted torus sum bounded by 2 sqrt(p).
// Throws ZeroFrequency for xi = 0 and EigenvectorInput for eigenvectors.
cplx hecke_sum(const PrimeContext& ctx, const TorusDescriptor& torus, TorusCharacter chi,
               const PlaneVector& xi);

// Tr(P_chi pi(s(xi))) = <Psi | pi(xi) Psi> for the unit eigenstate of a
// one-dimensional eigenspace. Throws NotOneDimensional otherwise.
cplx wigner_value(const PrimeContext& ctx, const TorusDescriptor& torus, TorusCharacter chi,
                  const PlaneVector& xi);

struct WignerRecord {
    Scalar p = 0;
    IntegralSL2 a;
    int chi_index = 0;
    LatticeVector xi;
    PlaneVector xi_mod_p;
    cplx sum_value;
    cplx normalized; // sum_value / sqrt(p)
    double bound = 0.0; // 2 sqrt(p)
    bool pass = false;
    bool split = false;
};

struct SkipRecord {
    Scalar p = 0;
    std::optional<LatticeVector> xi;
    std::string reason;
};

struct RateReport {
    std::vector<WignerRecord> records;
    std::vector<SkipRecord> skipped;

    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& r : records)
            if (!r.pass) ++n;
        return n;
    }
};

// Runs the rate bound |hecke_sum| <= 2 sqrt(p) + tol over every character for
// each admissible (p, xi); inadmissible pairs land in `skipped` with reasons.
// Records are ordered by p, then chi, then xi (lattice-lexicographic).
RateReport rate_check(const IntegralSL2& a, std::vector<LatticeVector> xi_list,
                      std::vector<Scalar> p_list, double tol = 1e-6);

} // namespace qtorus

#endif
