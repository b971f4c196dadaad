#ifndef QTORUS_STATS_HPP
#define QTORUS_STATS_HPP

#include "qtorus/hecke.hpp"

namespace qtorus {

// Multiplicative characters of F_p^*, indexed against the smallest primitive
// root g: chi_k(g^j) = exp(2 pi i jk / (p-1)).
Scalar smallest_primitive_root(const PrimeContext& ctx);

// sum_{a in F_p^* \ {1}} sigma(a) psi((1/2)(a+1)/(a-1) lambda mu) chi_k(a),
// the one-dimensional form of the chi-twisted torus sum at split primes.
// Throws ZeroProduct when lambda mu = 0.
cplx split_closed_sum(const PrimeContext& ctx, int chi_index, Scalar lambda, Scalar mu);

// S in SL2(F_p) with S A S^{-1} diagonal. Throws Error on an inert torus.
SL2Element split_diagonalizer(const PrimeContext& ctx, const TorusDescriptor& torus);

// Av = (1/|T|) sum_B rho(B) pi(s(xi)) rho(B)^{-1}. Throws EigenvectorInput.
ComplexMatrix averaged_operator(const PrimeContext& ctx, const TorusDescriptor& torus,
                                const PlaneVector& xi);

// Tr((Av* Av)^N) for N in {1,2,3}; equals p |T| / |T|^2 at N = 1.
double lnorm_operator_side(const PrimeContext& ctx, const TorusDescriptor& torus,
                           const PlaneVector& xi, int n);

// (p/|T|^{2N}) sum over zero-sum 2N-tuples from the orbit of
// psi((1/2) sum_{i<j} omega(x_i, x_j)). Guarded by |O|^{2N-1} <= 10^7
// (throws TooLarge). Matches the operator side; imaginary part is noise.
cplx lnorm_sum_side(const PrimeContext& ctx, const TorusDescriptor& torus, const PlaneVector& xi,
                    int n);

struct LnormReport {
    Scalar p = 0;
    int n = 0;
    double operator_side = 0.0;
    cplx sum_side;
    bool match = false;
};
LnormReport lnorm_compare(const PrimeContext& ctx, const TorusDescriptor& torus,
                          const PlaneVector& xi, int n, double tol = 1e-7);

struct HistogramRecord {
    double bin_left = 0.0;
    double bin_right = 0.0;
    std::size_t count = 0;
    double density = 0.0;
};

struct SatoTateReport {
    std::vector<HistogramRecord> bins;
    std::vector<double> normalized_values; // real parts, all primes pooled
    double ks_distance = 0.0;              // against the semicircle law
    double max_imag = 0.0;
    double max_abs = 0.0;
    std::vector<SkipRecord> skipped;
};

// Pools hecke_sum(chi, xi)/sqrt(p) over all characters of each admissible
// prime and bins the real parts on [-2 - delta, 2 + delta].
SatoTateReport sato_tate_histogram(const IntegralSL2& a, const LatticeVector& xi,
                                   const std::vector<Scalar>& p_list, std::size_t bins);

// CDF of the semicircle law with density (1/2 pi) sqrt(4 - x^2) on [-2, 2].
double semicircle_cdf(double x);

// Kolmogorov-Smirnov distance of a sample against the semicircle CDF.
double ks_distance_semicircle(std::vector<double> values);

// sum_z psi((1/2) s z) sigma(z) = sum_z psi((1/2) s z^2) for every s != 0.
CheckReport gauss_identity_check(const PrimeContext& ctx, double tol = 1e-9);

} // namespace qtorus

#endif
