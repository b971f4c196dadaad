#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qtorus/stats.hpp"

using namespace qtorus;

TEST_SUITE_BEGIN("stats");

namespace {
const IntegralSL2 kCat{2, 1, 1, 1};
}

TEST_CASE("split closed sum") {
    SUBCASE("Weil bound at p = 13") {
        const PrimeContext ctx(13);
        for (int k = 0; k < 12; ++k)
            CHECK(std::abs(split_closed_sum(ctx, k, 1, 1)) <= 2.0 * std::sqrt(13.0) + 1e-9);
    }
    SUBCASE("zero product is rejected") {
        const PrimeContext ctx(13);
        CHECK_THROWS_AS(split_closed_sum(ctx, 1, 0, 1), ZeroProduct);
        CHECK_THROWS_AS(split_closed_sum(ctx, 1, 1, 0), ZeroProduct);
    }
    SUBCASE("matches hecke_sum after diagonalization at split p = 11") {
        // A is conjugate to diag(a, a^{-1}) over F_11; transporting the torus,
        // the character and the frequency turns the operator sum into the
        // one-dimensional character sum.
        const PrimeContext ctx(11);
        const auto torus = hecke_torus(ctx, kCat);
        REQUIRE(torus.split());

        // Diagonalizer: eigenvalues 9 and 5, eigenvectors (1,7) and (1,3).
        // S^{-1} = columns of eigenvectors, scaled to det 1.
        const SL2Element sinv{1, 1, 7, 3}; // det = 3 - 7 = -4 = 7 mod 11
        const Scalar det = ctx.reduce(sinv.a * sinv.d - sinv.b * sinv.c);
        // Scale one column by det^{-1} to land in SL2.
        const SL2Element sinv1{sinv.a, ctx.mul(sinv.b, ctx.inv(det)), sinv.c,
                               ctx.mul(sinv.d, ctx.inv(det))};
        const SL2Element s = sl2_inverse(ctx, sinv1);
        // Check S A S^{-1} is diagonal.
        const SL2Element conj = sl2_mul(ctx, sl2_mul(ctx, s, torus.a_mod_p()), sinv1);
        REQUIRE(conj.b == 0);
        REQUIRE(conj.c == 0);

        for (const PlaneVector xi : {PlaneVector{1, 0}, PlaneVector{0, 1}}) {
            if (is_eigenvector(ctx, torus.a_mod_p(), xi)) continue;
            const PlaneVector eta = apply(ctx, s, xi);
            REQUIRE(ctx.mul(eta.lambda, eta.mu) != 0);
            for (int k = 0; k < torus.order(); ++k) {
                // chi-tilde on F_p^*: a -> chi(S^{-1} t_a S).
                cplx direct = 0.0;
                for (Scalar a = 2; a < 11; ++a) {
                    const SL2Element ta{a, 0, 0, ctx.inv(a)};
                    const SL2Element back = sl2_mul(ctx, sl2_mul(ctx, sinv1, ta), s);
                    const Scalar ratio = ctx.mul(ctx.add(a, 1), ctx.inv(ctx.sub(a, 1)));
                    const Scalar phase =
                        ctx.mul(ctx.mul(ctx.half(), ratio), ctx.mul(eta.lambda, eta.mu));
                    direct += double(ctx.legendre(a)) * ctx.psi(phase) *
                              character_value(torus, {k}, back);
                }
                CHECK(std::abs(direct - hecke_sum(ctx, torus, {k}, xi)) < 1e-8);
            }
        }
    }
    SUBCASE("index-based sum equals the generic character sum at p = 11") {
        const PrimeContext ctx(11);
        const Scalar root = smallest_primitive_root(ctx);
        for (int k : {0, 1, 5, 9}) {
            cplx direct = 0.0;
            for (Scalar j = 0; j < 10; ++j) {
                const Scalar a = ctx.pow(root, j);
                if (a == 1) continue;
                const Scalar ratio = ctx.mul(ctx.add(a, 1), ctx.inv(ctx.sub(a, 1)));
                direct += double(ctx.legendre(a)) *
                          ctx.psi(ctx.mul(ctx.mul(ctx.half(), ratio), 6)) *
                          std::polar(1.0, 2.0 * std::numbers::pi * double(k) * double(j) / 10.0);
            }
            CHECK(std::abs(direct - split_closed_sum(ctx, k, 2, 3)) < 1e-10);
        }
    }
}

TEST_CASE("averaged operator") {
    const PrimeContext ctx(7);
    const auto torus = hecke_torus(ctx, kCat);
    const PlaneVector xi{1, 0};
    const ComplexMatrix av = averaged_operator(ctx, torus, xi);
    SUBCASE("commutes with every rho(B), B in T") {
        for (const auto& b : torus.elements()) {
            const ComplexMatrix rho = rho_operator(ctx, b);
            CHECK(max_abs_diff(av * rho, rho * av) < 1e-8);
        }
    }
    SUBCASE("equals the orbit average of pi, as operators") {
        ComplexMatrix orbit_avg = ComplexMatrix::Zero(7, 7);
        for (const auto& eta : torus_orbit(ctx, torus, xi))
            orbit_avg += pi_operator(ctx, eta);
        orbit_avg /= double(torus.order());
        CHECK(max_abs_diff(av, orbit_avg) < 1e-9);
    }
    SUBCASE("spectral radius bound 2/sqrt(p)") {
        for (Scalar p : {7, 11, 13}) {
            const PrimeContext c(p);
            const auto t = hecke_torus(c, kCat);
            const ComplexMatrix a = averaged_operator(c, t, {1, 0});
            const Eigen::VectorXcd eigenvalues =
                Eigen::ComplexEigenSolver<ComplexMatrix>(a).eigenvalues();
            CHECK(eigenvalues.cwiseAbs().maxCoeff() <= 2.0 / std::sqrt(double(p)) + 1e-6);
        }
    }
    SUBCASE("eigenvector frequency is rejected") {
        const PrimeContext c11(11);
        const auto t11 = hecke_torus(c11, kCat);
        for (const auto& v : all_plane_vectors(c11, false))
            if (is_eigenvector(c11, t11.a_mod_p(), v)) {
                CHECK_THROWS_AS(averaged_operator(c11, t11, v), EigenvectorInput);
                break;
            }
    }
}

TEST_CASE("L_N identities") {
    SUBCASE("N = 1 closed value p/|T| at p in {7, 11}") {
        // Heisenberg trace orthogonality: only the |T| pairs (x, -x) in the
        // zero-sum constraint survive, each with phase 1, so both sides equal
        // p |T| / |T|^2 = p / |T|.
        for (Scalar p : {7, 11}) {
            const PrimeContext ctx(p);
            const auto torus = hecke_torus(ctx, kCat);
            const double expected = double(p) / double(torus.order());
            CHECK(std::abs(lnorm_operator_side(ctx, torus, {1, 0}, 1) - expected) < 1e-9);
            const cplx sum = lnorm_sum_side(ctx, torus, {1, 0}, 1);
            CHECK(std::abs(sum - cplx(expected)) < 1e-9);
        }
    }
    SUBCASE("operator side equals sum side for N in {1, 2}") {
        const auto cases = {std::pair<Scalar, IntegralSL2>{5, {3, 1, 2, 1}},
                            std::pair<Scalar, IntegralSL2>{7, kCat},
                            std::pair<Scalar, IntegralSL2>{11, kCat}};
        for (const auto& [p, a] : cases) {
            const PrimeContext ctx(p);
            const auto torus = hecke_torus(ctx, a);
            for (int n : {1, 2}) {
                const auto report = lnorm_compare(ctx, torus, {1, 0}, n);
                CHECK(report.match);
                CHECK(std::abs(report.sum_side.imag()) < 1e-9);
                CHECK(report.operator_side >= 0.0);
            }
        }
    }
    SUBCASE("enumeration guard") {
        const PrimeContext ctx(199);
        const auto torus = hecke_torus(ctx, kCat);
        CHECK_THROWS_AS(lnorm_sum_side(ctx, torus, {1, 0}, 3), TooLarge);
    }
}

TEST_CASE("semicircle law") {
    SUBCASE("closed-form CDF endpoints and symmetry") {
        CHECK(semicircle_cdf(-2.0) == 0.0);
        CHECK(semicircle_cdf(2.0) == 1.0);
        CHECK(std::abs(semicircle_cdf(0.0) - 0.5) < 1e-15);
        for (double x : {0.3, 0.9, 1.5})
            CHECK(std::abs(semicircle_cdf(x) + semicircle_cdf(-x) - 1.0) < 1e-12);
    }
    SUBCASE("CDF matches the Haar-on-SU(2) trace oracle") {
        // Monte-Carlo traces of Haar-random SU(2) elements: the trace is
        // 2 cos(theta) with density (2/pi) sin^2(theta) on [0, pi].
        std::mt19937_64 rng(20240812);
        std::normal_distribution<double> normal;
        const std::size_t n = 200000;
        std::vector<double> traces;
        traces.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            // Sample a point of S^3 via four normals; trace = 2 * first coord.
            double q0 = normal(rng), q1 = normal(rng), q2 = normal(rng), q3 = normal(rng);
            const double norm = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
            traces.push_back(2.0 * q0 / norm);
        }
        std::sort(traces.begin(), traces.end());
        double worst = 0.0;
        for (std::size_t i = 0; i < traces.size(); ++i)
            worst = std::max(worst, std::abs(double(i + 1) / double(n) -
                                             semicircle_cdf(traces[i])));
        CHECK(worst < 5e-3); // KS fluctuation scale ~ 1/sqrt(n)
    }
}

TEST_CASE("sato-tate histogram") {
    const auto report = sato_tate_histogram(kCat, {1, 0}, {13, 17, 19}, 20);
    SUBCASE("all normalized values live in [-2, 2]") {
        CHECK(report.max_abs <= 2.0 + 1e-6);
        CHECK(report.max_imag < 1e-9);
    }
    SUBCASE("counts and density bookkeeping") {
        // |T| characters per admissible prime: p = 13, 17 are inert (p+1),
        // p = 19 is split (p-1): 14 + 18 + 18.
        std::size_t total = 0;
        double integral = 0.0;
        for (const auto& bin : report.bins) {
            total += bin.count;
            integral += bin.density * (bin.bin_right - bin.bin_left);
        }
        CHECK(total == 14u + 18u + 18u);
        CHECK(report.normalized_values.size() == total);
        CHECK(std::abs(integral - 1.0) < 1e-12);
        CHECK(report.skipped.empty());
        CHECK(report.ks_distance > 0.0);
        CHECK(report.ks_distance <= 1.0);
    }
    SUBCASE("inadmissible primes are reported") {
        const auto skips = sato_tate_histogram(kCat, {1, 0}, {5, 9, 13}, 10);
        REQUIRE(skips.skipped.size() == 2);
        CHECK(skips.skipped[0].p == 5);
        CHECK(skips.skipped[0].reason == "RamifiedPrime");
        CHECK(skips.skipped[1].p == 9);
        CHECK(skips.skipped[1].reason == "UnsupportedPrime");
    }
}

TEST_CASE("gauss identity suite") {
    for (Scalar p : {5, 97}) {
        const PrimeContext ctx(p);
        const auto report = gauss_identity_check(ctx);
        CHECK(report.checked == static_cast<std::size_t>(p - 1));
        CHECK(report.max_deviation < 1e-9);
        CHECK(report.passed());
    }
    SUBCASE("both sides have modulus sqrt(p)") {
        const PrimeContext ctx(13);
        for (Scalar s = 1; s < 13; ++s) {
            cplx lhs = 0.0;
            for (Scalar z = 0; z < 13; ++z)
                lhs += ctx.psi(ctx.mul(ctx.mul(ctx.half(), s), z)) * double(ctx.legendre(z));
            CHECK(std::abs(std::abs(lhs) - std::sqrt(13.0)) < 1e-9);
        }
    }
}

TEST_SUITE_END();
