#include <doctest.h>

#include <cmath>

#include "qtorus/weil.hpp"

using namespace qtorus;

TEST_SUITE_BEGIN("weil");

TEST_CASE("rho at distinguished elements") {
    const PrimeContext ctx(5);
    SUBCASE("identity maps to the identity matrix") {
        CHECK(max_abs_diff(rho_operator(ctx, sl2_identity()), identity_matrix(5)) == 0.0);
    }
    SUBCASE("Weyl element has flat kernel of modulus p^{-1/2}") {
        const ComplexMatrix w = rho_operator(ctx, {0, 1, 4, 0});
        const double expected = 1.0 / std::sqrt(5.0);
        for (Eigen::Index x = 0; x < 5; ++x)
            for (Eigen::Index y = 0; y < 5; ++y)
                CHECK(std::abs(std::abs(w(x, y)) - expected) < 1e-12);
    }
}

TEST_CASE("kernel phases") {
    const PrimeContext ctx(7);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 25; ++i) {
        const SL2Element g = random_sl2(ctx, rng);
        const KernelPhase k = rho_kernel(ctx, g);
        // Support is the full plane exactly on the big cell, otherwise a line.
        CHECK(k.line.has_value() == (g.b == 0));
        const ComplexMatrix dense = rho_operator(ctx, g);
        for (Scalar x = 0; x < 7; ++x)
            for (Scalar y = 0; y < 7; ++y) {
                CHECK(k.phase(ctx, x, y) >= 0);
                CHECK(k.phase(ctx, x, y) < 7);
                CHECK(std::abs(k.value(ctx, x, y) - dense(x, y)) < 1e-14);
            }
    }
    for (const auto& xi : all_plane_vectors(ctx, true)) {
        const KernelPhase k = pi_kernel(ctx, section(xi));
        REQUIRE(k.line.has_value());
        const ComplexMatrix dense = pi_operator(ctx, xi);
        for (Scalar x = 0; x < 7; ++x)
            for (Scalar y = 0; y < 7; ++y)
                CHECK(std::abs(k.value(ctx, x, y) - dense(x, y)) < 1e-14);
    }
}

TEST_CASE("rho is unitary") {
    const PrimeContext ctx(7);
    std::mt19937_64 rng(20240811);
    for (int i = 0; i < 20; ++i) {
        const SL2Element g = random_sl2(ctx, rng);
        CHECK(unitarity_defect(rho_operator(ctx, g)) < 1e-9);
    }
}

TEST_CASE("pi at distinguished elements") {
    const PrimeContext ctx(7);
    SUBCASE("central elements act by psi(z)") {
        for (Scalar z = 0; z < 7; ++z) {
            const ComplexMatrix m = pi_operator(ctx, HeisenbergElement{{0, 0}, z});
            CHECK(max_abs_diff(m, ctx.psi(z) * identity_matrix(7)) < 1e-14);
        }
    }
    SUBCASE("zero frequency gives the identity") {
        CHECK(max_abs_diff(pi_operator(ctx, PlaneVector{0, 0}), identity_matrix(7)) == 0.0);
    }
    SUBCASE("trace vanishes for every nonzero frequency") {
        for (const auto& xi : all_plane_vectors(ctx, false))
            CHECK(std::abs(pi_operator(ctx, xi).trace()) < 1e-10);
    }
}

TEST_CASE("trace_F basics") {
    const PrimeContext ctx(7);
    SUBCASE("F(I, 0) = p and F(I, xi) = 0") {
        CHECK(std::abs(trace_F(ctx, sl2_identity(), {0, 0}) - cplx(7.0)) < 1e-12);
        for (const auto& xi : all_plane_vectors(ctx, false))
            CHECK(std::abs(trace_F(ctx, sl2_identity(), xi)) < 1e-10);
    }
    SUBCASE("diagonal torus with mu = 0 evaluates to sigma(a)") {
        for (Scalar a = 2; a < 7; ++a)
            for (Scalar lambda = 0; lambda < 7; ++lambda) {
                const SL2Element diag{a, 0, 0, ctx.inv(a)};
                CHECK(std::abs(trace_F(ctx, diag, {lambda, 0}) -
                               cplx(double(ctx.legendre(a)))) < 1e-10);
            }
    }
    SUBCASE("fast path agrees with the dense product") {
        for (Scalar p : {5, 13}) {
            const PrimeContext c(p);
            std::mt19937_64 rng(7);
            for (int i = 0; i < 50; ++i) {
                const SL2Element b = random_sl2(c, rng);
                const PlaneVector xi = random_nonzero_vector(c, rng);
                const cplx dense = (rho_operator(c, b) * pi_operator(c, xi)).trace();
                CHECK(std::abs(trace_F(c, b, xi) - dense) < 1e-10);
            }
        }
    }
}

TEST_CASE("torus closed form") {
    const PrimeContext ctx(7);
    SUBCASE("mu = 0 collapses to sigma(a)") {
        for (Scalar a = 2; a < 7; ++a)
            CHECK(std::abs(torus_closed_form(ctx, a, 3, 0) - cplx(double(ctx.legendre(a)))) <
                  1e-12);
    }
    SUBCASE("frozen example at p=7, a=2, lambda=mu=1") {
        // half = 4, (a+1)/(a-1) = 3, 4*3 = 5 mod 7; sigma(2) = 1.
        CHECK(std::abs(torus_closed_form(ctx, 2, 1, 1) - ctx.psi(5)) < 1e-12);
    }
    SUBCASE("degenerate points") {
        CHECK_THROWS_AS(torus_closed_form(ctx, 0, 1, 1), DegenerateTorusPoint);
        CHECK_THROWS_AS(torus_closed_form(ctx, 1, 1, 1), DegenerateTorusPoint);
    }
    SUBCASE("matches trace_F on the whole punctured torus, p <= 31") {
        for (Scalar p : {5, 7, 11, 13, 17, 19, 23, 29, 31}) {
            const PrimeContext c(p);
            for (Scalar a = 2; a < p; ++a) {
                const SL2Element diag{a, 0, 0, c.inv(a)};
                for (const auto& v : all_plane_vectors(c, true))
                    CHECK(std::abs(trace_F(c, diag, v) -
                                   torus_closed_form(c, a, v.lambda, v.mu)) < 1e-8);
            }
        }
    }
}

TEST_CASE("invariant closed form") {
    SUBCASE("g = -I evaluates to sigma(-4)") {
        const PrimeContext ctx(5);
        const SL2Element minus = sl2_negate(ctx, sl2_identity());
        for (const auto& v : all_plane_vectors(ctx, true))
            CHECK(std::abs(invariant_closed_form(ctx, minus, v) - cplx(1.0)) < 1e-12);
    }
    SUBCASE("g = I is singular") {
        const PrimeContext ctx(5);
        CHECK_THROWS_AS(invariant_closed_form(ctx, sl2_identity(), {1, 1}), SingularShift);
    }
    SUBCASE("agrees with the torus closed form on diagonals, p <= 31") {
        for (Scalar p : {5, 7, 11, 13, 17, 19, 23, 29, 31}) {
            const PrimeContext c(p);
            for (Scalar a = 2; a < p; ++a) {
                if (a == c.reduce(1)) continue;
                const SL2Element diag{a, 0, 0, c.inv(a)};
                if (c.reduce((a - 1) * (c.inv(a) - 1)) == 0) continue;
                for (const auto& v : all_plane_vectors(c, true))
                    CHECK(std::abs(invariant_closed_form(c, diag, v) -
                                   torus_closed_form(c, a, v.lambda, v.mu)) < 1e-9);
            }
        }
    }
    SUBCASE("agrees with trace_F on sampled open-cell pairs") {
        const PrimeContext ctx(13);
        std::mt19937_64 rng(99);
        int done = 0;
        while (done < 200) {
            const SL2Element g = random_sl2(ctx, rng);
            if (ctx.reduce((g.a - 1) * (g.d - 1) - g.b * g.c) == 0) continue;
            const PlaneVector v = random_nonzero_vector(ctx, rng);
            CHECK(std::abs(trace_F(ctx, g, v) - invariant_closed_form(ctx, g, v)) < 1e-8);
            ++done;
        }
    }
}

TEST_CASE("egorov identity") {
    SUBCASE("trivial at B = I") {
        const PrimeContext ctx(5);
        const SL2Element id = sl2_identity();
        const PlaneVector xi{1, 2};
        const auto report = check_egorov(ctx, std::span(&id, 1), std::span(&xi, 1));
        CHECK(report.passed());
        CHECK(report.max_deviation < 1e-14);
    }
    SUBCASE("exhaustive at p = 5") {
        const PrimeContext ctx(5);
        const auto report = check_egorov_exhaustive(ctx);
        CHECK(report.checked == 120u * 24u);
        CHECK(report.max_deviation < 1e-9);
    }
    SUBCASE("sampled at p = 101") {
        const PrimeContext ctx(101);
        const auto report = check_egorov_sampled(ctx, 200, 20240811);
        CHECK(report.checked == 200);
        CHECK(report.max_deviation < 1e-8);
    }
}

TEST_CASE("homomorphism") {
    const PrimeContext ctx(5);
    SUBCASE("inverse pairs give the identity") {
        std::mt19937_64 rng(1);
        for (int i = 0; i < 20; ++i) {
            const SL2Element g = random_sl2(ctx, rng);
            const SL2Element gi = sl2_inverse(ctx, g);
            CHECK(max_abs_diff(rho_operator(ctx, g) * rho_operator(ctx, gi),
                               identity_matrix(5)) < 1e-12);
            // Same fact through the pairwise sweep API.
            const auto report =
                check_homomorphism(ctx, std::span(&g, 1), std::span(&gi, 1), 1e-12);
            CHECK(report.passed());
        }
    }
    SUBCASE("exhaustive at p = 5") {
        const auto report = check_homomorphism_exhaustive(ctx);
        CHECK(report.checked == 14400);
        CHECK(report.max_deviation < 1e-8);
    }
}

TEST_CASE("heisenberg relation sign is measured as +1") {
    for (Scalar p : {5, 7}) {
        const PrimeContext ctx(p);
        const auto report = heisenberg_relation_sign(ctx);
        CHECK(report.sign == +1);
        CHECK(report.max_deviation < 1e-9);
        CHECK(report.checked == static_cast<std::size_t>(p * p) * static_cast<std::size_t>(p * p));
    }
}

TEST_CASE("trace function is conjugation invariant, exhaustive at p = 5") {
    const PrimeContext ctx(5);
    const auto gs = all_sl2_elements(ctx);
    const auto vectors = all_plane_vectors(ctx, true);
    // Cache F on the whole domain first.
    std::vector<cplx> table(gs.size() * vectors.size());
    std::unordered_map<std::int64_t, std::size_t> gindex;
    for (std::size_t i = 0; i < gs.size(); ++i) gindex.emplace(encode(ctx, gs[i]), i);
    for (std::size_t i = 0; i < gs.size(); ++i)
        for (std::size_t j = 0; j < vectors.size(); ++j)
            table[i * vectors.size() + j] = trace_F(ctx, gs[i], vectors[j]);
    const auto vindex = [&](const PlaneVector& v) {
        return static_cast<std::size_t>(v.lambda * ctx.p() + v.mu);
    };
    for (const auto& s : gs) {
        const SL2Element si = sl2_inverse(ctx, s);
        for (std::size_t i = 0; i < gs.size(); ++i) {
            const std::size_t ci = gindex.at(encode(ctx, sl2_mul(ctx, sl2_mul(ctx, s, gs[i]), si)));
            for (std::size_t j = 0; j < vectors.size(); ++j) {
                const cplx lhs = table[i * vectors.size() + j];
                const cplx rhs = table[ci * vectors.size() + vindex(apply(ctx, s, vectors[j]))];
                CHECK(std::abs(lhs - rhs) < 1e-9);
            }
        }
    }
}

TEST_SUITE_END();
