#include <doctest.h>

#include <set>

#include "qtorus/group.hpp"

using namespace qtorus;

TEST_SUITE_BEGIN("group");

TEST_CASE("symplectic form") {
    const PrimeContext ctx(7);
    CHECK(symplectic_form(ctx, {1, 0}, {0, 1}) == 1);
    CHECK(symplectic_form(ctx, {2, 3}, {1, 1}) == 6);
    for (const auto& v : all_plane_vectors(ctx, true)) {
        CHECK(symplectic_form(ctx, v, v) == 0);
        for (const auto& u : {PlaneVector{1, 2}, PlaneVector{3, 0}})
            CHECK(symplectic_form(ctx, u, v) == ctx.neg(symplectic_form(ctx, v, u)));
    }
}

TEST_CASE("bruhat classification") {
    CHECK(std::holds_alternative<BigCell>(bruhat_classify({0, 1, 6, 0})));
    const auto id = bruhat_classify({1, 0, 0, 1});
    REQUIRE(std::holds_alternative<LowerTriangular>(id));
    CHECK(std::get<LowerTriangular>(id).a == 1);
    CHECK(std::get<LowerTriangular>(id).r == 0);
    const auto unipotent = bruhat_classify({1, 0, 3, 1});
    REQUIRE(std::holds_alternative<LowerTriangular>(unipotent));
    CHECK(std::get<LowerTriangular>(unipotent).r == 3);
}

TEST_CASE("is_hyperbolic") {
    CHECK(is_hyperbolic({2, 1, 1, 1}));
    CHECK_FALSE(is_hyperbolic({1, 1, 0, 1}));
    CHECK_FALSE(is_hyperbolic({0, -1, 1, 0}));
    CHECK_THROWS_AS(is_hyperbolic({2, 0, 0, 2}), NotUnimodular);
}

TEST_CASE("heisenberg group law") {
    const PrimeContext ctx(5);
    SUBCASE("half-twist example") {
        const HeisenbergElement prod =
            heisenberg_mul(ctx, section({1, 0}), section({0, 1}));
        CHECK(prod.v == PlaneVector{1, 1});
        CHECK(prod.z == 3); // (p+1)/2 = 3 at p = 5
    }
    SUBCASE("inverses and the center") {
        for (const auto& v : all_plane_vectors(ctx, true)) {
            const HeisenbergElement h{v, 2};
            const HeisenbergElement prod = heisenberg_mul(ctx, h, heisenberg_inverse(ctx, h));
            CHECK(prod == HeisenbergElement{{0, 0}, 0});
        }
        const HeisenbergElement z1{{0, 0}, 2}, z2{{0, 0}, 4};
        CHECK(heisenberg_mul(ctx, z1, z2) == HeisenbergElement{{0, 0}, 1});
    }
    SUBCASE("associativity, spot checks") {
        const HeisenbergElement a{{1, 2}, 3}, b{{4, 0}, 1}, c{{2, 2}, 0};
        CHECK(heisenberg_mul(ctx, heisenberg_mul(ctx, a, b), c) ==
              heisenberg_mul(ctx, a, heisenberg_mul(ctx, b, c)));
    }
}

TEST_CASE("hecke torus enumeration") {
    const IntegralSL2 a{2, 1, 1, 1};
    SUBCASE("split at p=11") {
        const PrimeContext ctx(11);
        const auto torus = hecke_torus(ctx, a);
        CHECK(torus.split());
        CHECK(torus.order() == 10);
        CHECK(torus.elements().size() == 10);
    }
    SUBCASE("inert at p=7") {
        const PrimeContext ctx(7);
        const auto torus = hecke_torus(ctx, a);
        CHECK_FALSE(torus.split());
        CHECK(torus.order() == 8);
    }
    SUBCASE("ramified at p=5") {
        const PrimeContext ctx(5);
        CHECK_THROWS_AS(hecke_torus(ctx, a), RamifiedPrime);
    }
    SUBCASE("non-unimodular input") {
        const PrimeContext ctx(7);
        CHECK_THROWS_AS(hecke_torus(ctx, IntegralSL2{2, 0, 0, 1}), NotUnimodular);
    }
}

TEST_CASE("torus equals the brute-force centralizer") {
    // Exhaustive cross-check {B : BA = AB mod p} at small primes.
    const auto cases = {std::pair<Scalar, IntegralSL2>{5, {3, 1, 2, 1}},
                        std::pair<Scalar, IntegralSL2>{7, {2, 1, 1, 1}},
                        std::pair<Scalar, IntegralSL2>{11, {2, 1, 1, 1}}};
    for (const auto& [p, a] : cases) {
        const PrimeContext ctx(p);
        const SL2Element am = reduce_mod_p(ctx, a);
        std::set<std::int64_t> brute;
        for (const auto& g : all_sl2_elements(ctx))
            if (sl2_mul(ctx, g, am) == sl2_mul(ctx, am, g)) brute.insert(encode(ctx, g));
        const auto torus = hecke_torus(ctx, a);
        std::set<std::int64_t> conic;
        for (const auto& g : torus.elements()) conic.insert(encode(ctx, g));
        CHECK(brute == conic);
    }
}

TEST_CASE("torus structure: abelian, cyclic, contains +-I") {
    const PrimeContext ctx(7);
    const auto torus = hecke_torus(ctx, {2, 1, 1, 1});
    CHECK(torus.contains(sl2_identity()));
    CHECK(torus.contains(sl2_negate(ctx, sl2_identity())));
    for (const auto& g : torus.elements())
        for (const auto& h : torus.elements())
            CHECK(sl2_mul(ctx, g, h) == sl2_mul(ctx, h, g));
    // Generator and dlog invert each other.
    for (const auto& g : torus.elements()) {
        SL2Element power = sl2_identity();
        for (Scalar j = 0; j < torus.dlog(g); ++j) power = sl2_mul(ctx, power, torus.generator());
        CHECK(power == g);
    }
    CHECK(torus.dlog(sl2_identity()) == 0);
}

TEST_CASE("character values") {
    const PrimeContext ctx(7);
    const auto torus = hecke_torus(ctx, {2, 1, 1, 1});
    SUBCASE("trivial character and identity") {
        for (const auto& b : torus.elements())
            CHECK(std::abs(character_value(torus, {0}, b) - cplx(1.0)) < 1e-12);
        for (int k = 0; k < torus.order(); ++k)
            CHECK(std::abs(character_value(torus, {k}, sl2_identity()) - cplx(1.0)) < 1e-12);
    }
    SUBCASE("homomorphism, exhaustive") {
        for (int k = 0; k < torus.order(); ++k)
            for (const auto& b1 : torus.elements())
                for (const auto& b2 : torus.elements())
                    CHECK(std::abs(character_value(torus, {k}, sl2_mul(ctx, b1, b2)) -
                                   character_value(torus, {k}, b1) *
                                       character_value(torus, {k}, b2)) < 1e-12);
    }
    SUBCASE("element outside the torus") {
        CHECK_THROWS_AS(character_value(torus, {1}, SL2Element{1, 1, 0, 1}), NotInTorus);
    }
}

TEST_CASE("torus orbits") {
    const PrimeContext ctx(7);
    const auto torus = hecke_torus(ctx, {2, 1, 1, 1});
    SUBCASE("free action on non-eigenvectors") {
        const auto orbit = torus_orbit(ctx, torus, {1, 0});
        CHECK(orbit.size() == 8);
        std::set<std::pair<Scalar, Scalar>> distinct;
        for (const auto& v : orbit) distinct.emplace(v.lambda, v.mu);
        CHECK(distinct.size() == 8);
        CHECK(distinct.contains({6, 0})); // contains -xi since -I is in T
    }
    SUBCASE("free for every non-eigenvector at p <= 31") {
        for (Scalar p : {7, 11, 13, 17, 19, 23, 29, 31}) {
            const PrimeContext c(p);
            const auto t = hecke_torus(c, {2, 1, 1, 1});
            for (const auto& xi : all_plane_vectors(c, false)) {
                if (is_eigenvector(c, t.a_mod_p(), xi)) continue;
                std::set<std::pair<Scalar, Scalar>> distinct;
                for (const auto& v : torus_orbit(c, t, xi)) distinct.emplace(v.lambda, v.mu);
                CHECK(distinct.size() == static_cast<std::size_t>(t.order()));
            }
        }
    }
    SUBCASE("eigenvector inputs are rejected at split p=11") {
        const PrimeContext c(11);
        const auto t = hecke_torus(c, {2, 1, 1, 1});
        // Eigenvalues of A mod 11 are roots of x^2 - 3x + 1: x = 5, 9.
        bool found = false;
        for (const auto& xi : all_plane_vectors(c, false)) {
            if (!is_eigenvector(c, t.a_mod_p(), xi)) continue;
            found = true;
            CHECK_THROWS_AS(torus_orbit(c, t, xi), EigenvectorInput);
            break;
        }
        CHECK(found);
    }
}

TEST_CASE("sl2 enumeration has the right size") {
    for (Scalar p : {5, 7}) {
        const PrimeContext ctx(p);
        const auto all = all_sl2_elements(ctx);
        CHECK(static_cast<Scalar>(all.size()) == p * p * p - p);
        std::set<std::int64_t> keys;
        for (const auto& g : all) {
            CHECK(ctx.reduce(g.a * g.d - g.b * g.c) == 1);
            keys.insert(encode(ctx, g));
        }
        CHECK(keys.size() == all.size());
    }
}

TEST_SUITE_END();
