#include "qtorus/canonical.hpp"

namespace qtorus {

namespace {

const OrientedLagrangian kStandardV2{{0, 1}, +1};

PlaneVector normalize_direction(const PrimeContext& ctx, const PlaneVector& v) {
    if (v.lambda != 0) return plane_scale(ctx, ctx.inv(v.lambda), v);
    return plane_scale(ctx, ctx.inv(v.mu), v);
}

// The t in v = alpha * direction + t * transversal.
Scalar transversal_coordinate(const PrimeContext& ctx, const OrientedLagrangian& lag,
                              const PlaneVector& v) {
    if (lag.direction == PlaneVector{0, 1}) return v.lambda;
    // direction = (1, m), transversal = (0, 1)
    return ctx.sub(v.mu, ctx.mul(lag.direction.mu, v.lambda));
}

} // namespace

std::vector<OrientedLagrangian> enumerate_oriented_lagrangians(const PrimeContext& ctx) {
    std::vector<OrientedLagrangian> out;
    out.reserve(static_cast<std::size_t>(2 * (ctx.p() + 1)));
    for (Scalar m = 0; m < ctx.p(); ++m) {
        out.push_back({{1, m}, +1});
        out.push_back({{1, m}, -1});
    }
    out.push_back({{0, 1}, +1});
    out.push_back({{0, 1}, -1});
    return out;
}

PlaneVector transversal_direction(const OrientedLagrangian& lagrangian) {
    return lagrangian.direction == PlaneVector{0, 1} ? PlaneVector{1, 0} : PlaneVector{0, 1};
}

int orientation_value(const PrimeContext& ctx, const OrientedLagrangian& lagrangian,
                      const PlaneVector& l) {
    // l = t * direction; the orientation is sign * sigma(t).
    const Scalar t = lagrangian.direction.lambda != 0 ? l.lambda : l.mu;
    return lagrangian.sign * ctx.legendre(t);
}

CosetCoords coset_reduce(const PrimeContext& ctx, const OrientedLagrangian& lagrangian,
                         const HeisenbergElement& h) {
    const PlaneVector m = transversal_direction(lagrangian);
    const Scalar t = transversal_coordinate(ctx, lagrangian, h.v);
    // h = z . s(t m) with z = h . s(t m)^{-1} in the extended line.
    const Scalar central =
        ctx.sub(h.z, ctx.mul(ctx.mul(ctx.half(), t), symplectic_form(ctx, h.v, m)));
    return {ctx.psi(central), t};
}

cplx evaluate(const PrimeContext& ctx, const CanonicalVector& f, const HeisenbergElement& h) {
    const auto coords = coset_reduce(ctx, f.lagrangian, h);
    return coords.phase * f.values[static_cast<Eigen::Index>(coords.index)];
}

ComplexMatrix heisenberg_action(const PrimeContext& ctx, const OrientedLagrangian& lagrangian,
                                const HeisenbergElement& h) {
    const Scalar p = ctx.p();
    const PlaneVector m = transversal_direction(lagrangian);
    ComplexMatrix out = ComplexMatrix::Zero(p, p);
    for (Scalar t = 0; t < p; ++t) {
        const HeisenbergElement r = section(plane_scale(ctx, t, m));
        const auto coords = coset_reduce(ctx, lagrangian, heisenberg_mul(ctx, r, h));
        out(t, coords.index) += coords.phase;
    }
    return out;
}

cplx intertwiner_normalizer(const PrimeContext& ctx, const OrientedLagrangian& from,
                            const OrientedLagrangian& to) {
    return intertwiner_normalizer(ctx, from, to, to.direction);
}

cplx intertwiner_normalizer(const PrimeContext& ctx, const OrientedLagrangian& from,
                            const OrientedLagrangian& to, const PlaneVector& basepoint) {
    cplx sum = 0.0;
    const int to_sign = orientation_value(ctx, to, basepoint);
    for (Scalar t = 1; t < ctx.p(); ++t) { // rho_L(0) = 0 drops t = 0
        const PlaneVector l1 = plane_scale(ctx, t, from.direction);
        sum += ctx.psi(ctx.mul(ctx.half(), symplectic_form(ctx, l1, basepoint))) *
               static_cast<double>(orientation_value(ctx, from, l1) * to_sign);
    }
    return sum / static_cast<double>(ctx.p());
}

ComplexMatrix intertwiner(const PrimeContext& ctx, const OrientedLagrangian& from,
                          const OrientedLagrangian& to) {
    const Scalar p = ctx.p();
    if (from.same_line(to)) {
        const double s = from.sign == to.sign ? 1.0 : -1.0;
        return s * identity_matrix(p);
    }
    const PlaneVector m2 = transversal_direction(to);
    ComplexMatrix avg = ComplexMatrix::Zero(p, p);
    for (Scalar t = 0; t < p; ++t) {
        const HeisenbergElement r = section(plane_scale(ctx, t, m2));
        for (Scalar k = 0; k < p; ++k) {
            const HeisenbergElement l2 = section(plane_scale(ctx, k, to.direction));
            const auto coords = coset_reduce(ctx, from, heisenberg_mul(ctx, l2, r));
            avg(t, coords.index) += coords.phase;
        }
    }
    return intertwiner_normalizer(ctx, from, to) * avg;
}

CocycleConstants cocycle_constants(const PrimeContext& ctx, const OrientedLagrangian& l1,
                                   const OrientedLagrangian& l2, const OrientedLagrangian& l3) {
    if (l1.same_line(l2) || l2.same_line(l3) || l1.same_line(l3))
        throw NotGeneralPosition("cocycle_constants: the three lines must be pairwise distinct");

    // r(l2) = the unique l3 in L3 with l2 + l3 in L1. Writing l2 = x1 + x3 in
    // the L1 + L3 decomposition, r(l2) = -x3; solve with the symplectic form.
    const auto graph_map = [&](const PlaneVector& v) {
        // v = s*d1 + k*d3 => omega(d1, v) = k omega(d1, d3).
        const Scalar k = ctx.mul(symplectic_form(ctx, l1.direction, v),
                                 ctx.inv(symplectic_form(ctx, l1.direction, l3.direction)));
        return plane_scale(ctx, ctx.neg(k), l3.direction);
    };

    CocycleConstants out{0.0, 0.0};
    for (Scalar k = 0; k < ctx.p(); ++k) {
        const PlaneVector v = plane_scale(ctx, k, l2.direction);
        out.c += ctx.psi(ctx.mul(ctx.half(), symplectic_form(ctx, v, graph_map(v))));
    }
    const PlaneVector basepoint = l2.direction;
    const PlaneVector r_base = graph_map(basepoint);
    const int base_sign = orientation_value(ctx, l2, basepoint);
    for (Scalar k = 1; k < ctx.p(); ++k) {
        const PlaneVector v = plane_scale(ctx, k, l2.direction);
        out.d += ctx.psi(ctx.neg(ctx.mul(ctx.half(), symplectic_form(ctx, v, r_base)))) *
                 static_cast<double>(orientation_value(ctx, l2, v) * base_sign);
    }
    out.d /= static_cast<double>(ctx.p());
    return out;
}

TransportedModel symplectic_transport(const PrimeContext& ctx, const SL2Element& g,
                                      const OrientedLagrangian& lagrangian) {
    const Scalar p = ctx.p();
    const SL2Element gi = sl2_inverse(ctx, g);

    // g L with the transported orientation rho^g(l) = rho_L(g^{-1} l).
    const PlaneVector dir = normalize_direction(ctx, apply(ctx, g, lagrangian.direction));
    const OrientedLagrangian moved{dir, orientation_value(ctx, lagrangian, apply(ctx, gi, dir))};

    // (f^g)(r'_t) = f(g^{-1} r'_t) on the transversal of g L.
    const PlaneVector m = transversal_direction(moved);
    ComplexMatrix map = ComplexMatrix::Zero(p, p);
    for (Scalar t = 0; t < p; ++t) {
        const PlaneVector v = apply(ctx, gi, plane_scale(ctx, t, m));
        const auto coords = coset_reduce(ctx, lagrangian, section(v));
        map(t, coords.index) = coords.phase;
    }
    return {moved, std::move(map)};
}

ComplexMatrix canonical_weil_operator(const PrimeContext& ctx, const SL2Element& g) {
    auto moved = symplectic_transport(ctx, g, kStandardV2);
    if (moved.image == kStandardV2) return moved.map;
    if (moved.image.same_line(kStandardV2))
        return static_cast<double>(moved.image.sign) * moved.map;
    return intertwiner(ctx, moved.image, kStandardV2) * moved.map;
}

CheckReport check_associativity(const PrimeContext& ctx, double tol) {
    const auto lags = enumerate_oriented_lagrangians(ctx);
    const std::size_t n = lags.size();
    std::vector<ComplexMatrix> thetas(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            thetas[i * n + j] = intertwiner(ctx, lags[i], lags[j]);

    CheckReport report;
    report.tolerance = tol;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const double dev =
                    max_abs_diff(thetas[j * n + k] * thetas[i * n + j], thetas[i * n + k]);
                report.record(dev, "triple (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                       std::to_string(k) + ")");
            }
    return report;
}

ProportionalityReport canonical_kernel_comparison(const PrimeContext& ctx) {
    const auto gs = all_sl2_elements(ctx);
    ProportionalityReport report;
    bool have_reference = false;
    for (const auto& g : gs) {
        const ComplexMatrix canonical = canonical_weil_operator(ctx, g);
        const ComplexMatrix kernel = rho_operator(ctx, g);
        // Read the per-element ratio at the entry of largest kernel modulus.
        Eigen::Index row = 0, col = 0;
        kernel.cwiseAbs().maxCoeff(&row, &col);
        const cplx ratio = canonical(row, col) / kernel(row, col);
        if (!have_reference) {
            report.constant = ratio;
            have_reference = true;
        }
        report.constant_spread = std::max(report.constant_spread, std::abs(ratio - report.constant));
        report.max_deviation =
            std::max(report.max_deviation, max_abs_diff(canonical, report.constant * kernel));
        ++report.checked;
    }
    return report;
}

} // namespace qtorus
