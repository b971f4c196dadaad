#include "qtorus/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qtorus {

bool is_hyperbolic(const IntegralSL2& m) {
    if (m.det() != 1)
        throw NotUnimodular("is_hyperbolic: det = " + std::to_string(m.det()));
    return std::llabs(m.trace()) > 2;
}

SL2Element reduce_mod_p(const PrimeContext& ctx, const IntegralSL2& m) {
    return {ctx.reduce(m.a), ctx.reduce(m.b), ctx.reduce(m.c), ctx.reduce(m.d)};
}

PlaneVector reduce_mod_p(const PrimeContext& ctx, const LatticeVector& v) {
    return {ctx.reduce(v.l), ctx.reduce(v.m)};
}

SL2Element sl2_mul(const PrimeContext& ctx, const SL2Element& g, const SL2Element& h) {
    return {ctx.reduce(g.a * h.a + g.b * h.c), ctx.reduce(g.a * h.b + g.b * h.d),
            ctx.reduce(g.c * h.a + g.d * h.c), ctx.reduce(g.c * h.b + g.d * h.d)};
}

SL2Element sl2_inverse(const PrimeContext& ctx, const SL2Element& g) {
    return {g.d, ctx.neg(g.b), ctx.neg(g.c), g.a};
}

SL2Element sl2_negate(const PrimeContext& ctx, const SL2Element& g) {
    return {ctx.neg(g.a), ctx.neg(g.b), ctx.neg(g.c), ctx.neg(g.d)};
}

PlaneVector apply(const PrimeContext& ctx, const SL2Element& g, const PlaneVector& v) {
    return {ctx.reduce(g.a * v.lambda + g.b * v.mu), ctx.reduce(g.c * v.lambda + g.d * v.mu)};
}

PlaneVector plane_add(const PrimeContext& ctx, const PlaneVector& u, const PlaneVector& v) {
    return {ctx.add(u.lambda, v.lambda), ctx.add(u.mu, v.mu)};
}

PlaneVector plane_negate(const PrimeContext& ctx, const PlaneVector& v) {
    return {ctx.neg(v.lambda), ctx.neg(v.mu)};
}

PlaneVector plane_scale(const PrimeContext& ctx, Scalar t, const PlaneVector& v) {
    return {ctx.mul(t, v.lambda), ctx.mul(t, v.mu)};
}

Scalar symplectic_form(const PrimeContext& ctx, const PlaneVector& u, const PlaneVector& v) {
    return ctx.reduce(u.lambda * v.mu - u.mu * v.lambda);
}

HeisenbergElement heisenberg_mul(const PrimeContext& ctx, const HeisenbergElement& h1,
                                 const HeisenbergElement& h2) {
    const Scalar twist = ctx.mul(ctx.half(), symplectic_form(ctx, h1.v, h2.v));
    return {plane_add(ctx, h1.v, h2.v), ctx.reduce(h1.z + h2.z + twist)};
}

HeisenbergElement heisenberg_inverse(const PrimeContext& ctx, const HeisenbergElement& h) {
    return {plane_negate(ctx, h.v), ctx.neg(h.z)};
}

BruhatClass bruhat_classify(const SL2Element& g) {
    if (g.b != 0) return BigCell{g.a, g.b, g.c, g.d};
    return LowerTriangular{g.a, g.c};
}

std::int64_t encode(const PrimeContext& ctx, const SL2Element& g) {
    const std::int64_t p = ctx.p();
    return ((g.a * p + g.b) * p + g.c) * p + g.d;
}

Scalar TorusDescriptor::dlog(const SL2Element& g) const {
    const std::int64_t key = ((g.a * p_ + g.b) * p_ + g.c) * p_ + g.d;
    auto it = dlog_.find(key);
    if (it == dlog_.end())
        throw NotInTorus("dlog: element is not in the Hecke torus");
    return it->second;
}

bool TorusDescriptor::contains(const SL2Element& g) const {
    const std::int64_t key = ((g.a * p_ + g.b) * p_ + g.c) * p_ + g.d;
    return dlog_.contains(key);
}

cplx TorusDescriptor::root_of_unity(Scalar j) const {
    j %= order_;
    if (j < 0) j += order_;
    return roots_[static_cast<std::size_t>(j)];
}

TorusDescriptor hecke_torus(const PrimeContext& ctx, const IntegralSL2& A) {
    if (A.det() != 1)
        throw NotUnimodular("hecke_torus: det(A) = " + std::to_string(A.det()));
    const Scalar tr = ctx.reduce(A.trace());
    const Scalar disc = ctx.reduce(tr * tr - 4);
    if (disc == 0)
        throw RamifiedPrime("hecke_torus: p = " + std::to_string(ctx.p()) +
                            " divides tr(A)^2 - 4");

    TorusDescriptor t;
    t.p_ = ctx.p();
    t.split_ = ctx.legendre(disc) == 1;
    t.order_ = t.split_ ? ctx.p() - 1 : ctx.p() + 1;
    t.a_mod_p_ = reduce_mod_p(ctx, A);
    t.a_integral_ = A;

    // Centralizer of a regular element: {xI + yA : det = 1}, i.e. the conic
    // x^2 + xy tr(A) + y^2 = 1.
    const SL2Element am = t.a_mod_p_;
    for (Scalar x = 0; x < ctx.p(); ++x)
        for (Scalar y = 0; y < ctx.p(); ++y)
            if (ctx.reduce(x * x + x * y * tr + y * y) == 1)
                t.elements_.push_back({ctx.reduce(x + y * am.a), ctx.mul(y, am.b),
                                       ctx.mul(y, am.c), ctx.reduce(x + y * am.d)});

    if (static_cast<Scalar>(t.elements_.size()) != t.order_)
        throw Error("hecke_torus: conic size " + std::to_string(t.elements_.size()) +
                    " does not match expected order " + std::to_string(t.order_));

    // Generator: first enumerated element (lexicographic in (x, y)) of full order.
    const SL2Element id = sl2_identity();
    bool found = false;
    for (const auto& g : t.elements_) {
        Scalar order = 1;
        SL2Element power = g;
        while (!(power == id)) {
            power = sl2_mul(ctx, power, g);
            ++order;
        }
        if (order == t.order_) {
            t.generator_ = g;
            found = true;
            break;
        }
    }
    if (!found)
        throw Error("hecke_torus: no generator of full order found");

    SL2Element power = id;
    for (Scalar j = 0; j < t.order_; ++j) {
        t.dlog_.emplace(encode(ctx, power), j);
        power = sl2_mul(ctx, power, t.generator_);
    }

    t.roots_.resize(static_cast<std::size_t>(t.order_));
    for (Scalar j = 0; j < t.order_; ++j)
        t.roots_[static_cast<std::size_t>(j)] = std::polar(
            1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(t.order_));

    return t;
}

cplx character_value(const TorusDescriptor& torus, TorusCharacter chi, const SL2Element& g) {
    return torus.root_of_unity(static_cast<Scalar>(chi.k) * torus.dlog(g));
}

bool is_eigenvector(const PrimeContext& ctx, const SL2Element& a_mod_p, const PlaneVector& xi) {
    if (xi.is_zero()) return true;
    return symplectic_form(ctx, apply(ctx, a_mod_p, xi), xi) == 0;
}

std::vector<PlaneVector> torus_orbit(const PrimeContext& ctx, const TorusDescriptor& torus,
                                     const PlaneVector& xi) {
    if (is_eigenvector(ctx, torus.a_mod_p(), xi))
        throw EigenvectorInput("torus_orbit: xi is an eigenvector of A mod p");
    std::vector<PlaneVector> orbit;
    orbit.reserve(torus.elements().size());
    for (const auto& g : torus.elements())
        orbit.push_back(apply(ctx, g, xi));
    return orbit;
}

std::vector<SL2Element> all_sl2_elements(const PrimeContext& ctx) {
    const Scalar p = ctx.p();
    std::vector<SL2Element> out;
    out.reserve(static_cast<std::size_t>(p * p * p - p));
    for (Scalar a = 1; a < p; ++a) {
        const Scalar ai = ctx.inv(a);
        for (Scalar b = 0; b < p; ++b)
            for (Scalar c = 0; c < p; ++c)
                out.push_back({a, b, c, ctx.mul(ai, 1 + ctx.mul(b, c))});
    }
    for (Scalar b = 1; b < p; ++b) {
        const Scalar c = ctx.neg(ctx.inv(b));
        for (Scalar d = 0; d < p; ++d)
            out.push_back({0, b, c, d});
    }
    return out;
}

std::vector<PlaneVector> all_plane_vectors(const PrimeContext& ctx, bool include_zero) {
    std::vector<PlaneVector> out;
    out.reserve(static_cast<std::size_t>(ctx.p() * ctx.p()));
    for (Scalar lambda = 0; lambda < ctx.p(); ++lambda)
        for (Scalar mu = 0; mu < ctx.p(); ++mu) {
            if (!include_zero && lambda == 0 && mu == 0) continue;
            out.push_back({lambda, mu});
        }
    return out;
}

} // namespace qtorus
