#include "qtorus/weil.hpp"

#include <sstream>

namespace qtorus {

void CheckReport::record(double deviation, const std::string& label) {
    ++checked;
    if (deviation > max_deviation) max_deviation = deviation;
    if (deviation > tolerance) {
        ++violations;
        if (failures.size() < 8)
            failures.push_back(label + ": deviation " + std::to_string(deviation));
    }
}

namespace {

std::string describe(const SL2Element& g) {
    std::ostringstream os;
    os << "(" << g.a << "," << g.b << ";" << g.c << "," << g.d << ")";
    return os.str();
}

std::string describe(const PlaneVector& v) {
    std::ostringstream os;
    os << "(" << v.lambda << "," << v.mu << ")";
    return os.str();
}

} // namespace

KernelPhase rho_kernel(const PrimeContext& ctx, const SL2Element& g) {
    KernelPhase k;
    const auto cls = bruhat_classify(g);
    if (const auto* big = std::get_if<BigCell>(&cls)) {
        const Scalar bi = ctx.inv(big->b);
        k.prefactor = big_cell_normalizer(ctx, big->b);
        k.qxx = ctx.mul(ctx.neg(ctx.mul(bi, big->d)), ctx.half());
        k.qxy = ctx.mul(ctx.reduce(bi - big->c + big->a * bi * big->d), ctx.half());
        k.qyy = ctx.mul(ctx.neg(ctx.mul(big->a, bi)), ctx.half());
    } else {
        const auto& lower = std::get<LowerTriangular>(cls);
        const Scalar ai = ctx.inv(lower.a);
        k.prefactor = static_cast<double>(ctx.legendre(lower.a));
        k.qxx = ctx.mul(ctx.neg(ctx.mul(lower.r, ai)), ctx.half());
        k.line = SupportLine{ai, 0};
    }
    return k;
}

KernelPhase pi_kernel(const PrimeContext& ctx, const HeisenbergElement& h) {
    KernelPhase k;
    k.lx = h.v.mu;
    k.constant = ctx.reduce(ctx.mul(ctx.half(), ctx.mul(h.v.mu, h.v.lambda)) + h.z);
    k.line = SupportLine{1, h.v.lambda};
    return k;
}

ComplexMatrix rho_operator(const PrimeContext& ctx, const SL2Element& g) {
    const Scalar p = ctx.p();
    const KernelPhase k = rho_kernel(ctx, g);
    ComplexMatrix out = ComplexMatrix::Zero(p, p);
    if (k.line) {
        for (Scalar x = 0; x < p; ++x) {
            const Scalar y = ctx.reduce(k.line->slope * x + k.line->offset);
            out(x, y) = k.prefactor * ctx.psi(k.phase(ctx, x, y));
        }
    } else {
        for (Scalar x = 0; x < p; ++x)
            for (Scalar y = 0; y < p; ++y)
                out(x, y) = k.prefactor * ctx.psi(k.phase(ctx, x, y));
    }
    return out;
}

ComplexMatrix pi_operator(const PrimeContext& ctx, const HeisenbergElement& h) {
    const Scalar p = ctx.p();
    const KernelPhase k = pi_kernel(ctx, h);
    ComplexMatrix out = ComplexMatrix::Zero(p, p);
    for (Scalar x = 0; x < p; ++x) {
        const Scalar y = ctx.add(x, h.v.lambda);
        out(x, y) = ctx.psi(k.phase(ctx, x, y));
    }
    return out;
}

cplx trace_F(const PrimeContext& ctx, const SL2Element& b, const PlaneVector& xi) {
    // Tr(rho(B) pi(s(xi))) = sum_x K_rho(x, x - q') K_pi(x - q', x); both
    // kernels vanish off their support lines, so the sum stays O(p).
    const Scalar p = ctx.p();
    const KernelPhase rho = rho_kernel(ctx, b);
    const KernelPhase pi = pi_kernel(ctx, section(xi));
    cplx total = 0.0;
    for (Scalar x = 0; x < p; ++x) {
        const Scalar y = ctx.sub(x, xi.lambda);
        if (!rho.supported(ctx, x, y)) continue;
        total += rho.prefactor * ctx.psi(rho.phase(ctx, x, y)) * ctx.psi(pi.phase(ctx, y, x));
    }
    return total;
}

cplx torus_closed_form(const PrimeContext& ctx, Scalar a, Scalar lambda, Scalar mu) {
    a = ctx.reduce(a);
    if (a == 0 || a == 1)
        throw DegenerateTorusPoint("torus_closed_form: a = " + std::to_string(a));
    const Scalar ratio = ctx.mul(ctx.add(a, 1), ctx.inv(ctx.sub(a, 1)));
    const Scalar phase = ctx.mul(ctx.mul(ctx.half(), ratio), ctx.mul(lambda, mu));
    return static_cast<double>(ctx.legendre(a)) * ctx.psi(phase);
}

cplx invariant_closed_form(const PrimeContext& ctx, const SL2Element& g, const PlaneVector& v) {
    const Scalar det_shift = ctx.reduce((g.a - 1) * (g.d - 1) - g.b * g.c);
    if (det_shift == 0)
        throw SingularShift("invariant_closed_form: g - I is singular");
    const Scalar idet = ctx.inv(det_shift);
    // (g+I)(g-I)^{-1}
    const SL2Element gp{ctx.add(g.a, 1), g.b, g.c, ctx.add(g.d, 1)};
    const SL2Element gm_inv{ctx.mul(ctx.sub(g.d, 1), idet), ctx.mul(ctx.neg(g.b), idet),
                            ctx.mul(ctx.neg(g.c), idet), ctx.mul(ctx.sub(g.a, 1), idet)};
    const SL2Element cayley = sl2_mul(ctx, gp, gm_inv);
    const Scalar om = symplectic_form(ctx, apply(ctx, cayley, v), v);
    const Scalar tr_shift = ctx.reduce(g.a + g.d - 2);
    return ctx.psi(ctx.mul(ctx.quarter(), om)) * static_cast<double>(ctx.legendre(tr_shift));
}

CheckReport check_egorov(const PrimeContext& ctx, std::span<const SL2Element> bs,
                         std::span<const PlaneVector> xis, double tol) {
    CheckReport report;
    report.tolerance = tol;
    for (const auto& b : bs) {
        const ComplexMatrix rho = rho_operator(ctx, b);
        const ComplexMatrix rho_adj = rho.adjoint();
        for (const auto& xi : xis) {
            const ComplexMatrix lhs = rho * pi_operator(ctx, xi) * rho_adj;
            const ComplexMatrix rhs = pi_operator(ctx, apply(ctx, b, xi));
            report.record(max_abs_diff(lhs, rhs), "B=" + describe(b) + " xi=" + describe(xi));
        }
    }
    return report;
}

CheckReport check_egorov_exhaustive(const PrimeContext& ctx, double tol) {
    const auto bs = all_sl2_elements(ctx);
    const auto xis = all_plane_vectors(ctx, /*include_zero=*/false);
    return check_egorov(ctx, bs, xis, tol);
}

CheckReport check_egorov_sampled(const PrimeContext& ctx, std::size_t pairs, std::uint64_t seed,
                                 double tol) {
    std::mt19937_64 rng(seed);
    CheckReport report;
    report.tolerance = tol;
    for (std::size_t i = 0; i < pairs; ++i) {
        const SL2Element b = random_sl2(ctx, rng);
        const PlaneVector xi = random_nonzero_vector(ctx, rng);
        const ComplexMatrix rho = rho_operator(ctx, b);
        const ComplexMatrix lhs = rho * pi_operator(ctx, xi) * rho.adjoint();
        const ComplexMatrix rhs = pi_operator(ctx, apply(ctx, b, xi));
        report.record(max_abs_diff(lhs, rhs), "B=" + describe(b) + " xi=" + describe(xi));
    }
    return report;
}

CheckReport check_homomorphism(const PrimeContext& ctx, std::span<const SL2Element> g1s,
                               std::span<const SL2Element> g2s, double tol) {
    CheckReport report;
    report.tolerance = tol;
    for (const auto& g1 : g1s) {
        const ComplexMatrix r1 = rho_operator(ctx, g1);
        for (const auto& g2 : g2s) {
            const ComplexMatrix lhs = r1 * rho_operator(ctx, g2);
            const ComplexMatrix rhs = rho_operator(ctx, sl2_mul(ctx, g1, g2));
            report.record(max_abs_diff(lhs, rhs), describe(g1) + "*" + describe(g2));
        }
    }
    return report;
}

CheckReport check_homomorphism_exhaustive(const PrimeContext& ctx, double tol) {
    const auto gs = all_sl2_elements(ctx);
    // Cache the full operator table; |SL2| matrices of size p x p.
    std::vector<ComplexMatrix> table;
    table.reserve(gs.size());
    std::unordered_map<std::int64_t, std::size_t> index;
    index.reserve(gs.size());
    for (std::size_t i = 0; i < gs.size(); ++i) {
        table.push_back(rho_operator(ctx, gs[i]));
        index.emplace(encode(ctx, gs[i]), i);
    }
    CheckReport report;
    report.tolerance = tol;
    for (std::size_t i = 0; i < gs.size(); ++i)
        for (std::size_t j = 0; j < gs.size(); ++j) {
            const std::size_t k = index.at(encode(ctx, sl2_mul(ctx, gs[i], gs[j])));
            report.record(max_abs_diff(table[i] * table[j], table[k]),
                          describe(gs[i]) + "*" + describe(gs[j]));
        }
    return report;
}

CheckReport check_homomorphism_sampled(const PrimeContext& ctx, std::size_t pairs,
                                       std::uint64_t seed, double tol) {
    std::mt19937_64 rng(seed);
    CheckReport report;
    report.tolerance = tol;
    for (std::size_t i = 0; i < pairs; ++i) {
        const SL2Element g1 = random_sl2(ctx, rng);
        const SL2Element g2 = random_sl2(ctx, rng);
        const ComplexMatrix lhs = rho_operator(ctx, g1) * rho_operator(ctx, g2);
        const ComplexMatrix rhs = rho_operator(ctx, sl2_mul(ctx, g1, g2));
        report.record(max_abs_diff(lhs, rhs), describe(g1) + "*" + describe(g2));
    }
    return report;
}

CheckReport check_unitarity(const PrimeContext& ctx, std::span<const SL2Element> gs, double tol) {
    CheckReport report;
    report.tolerance = tol;
    for (const auto& g : gs)
        report.record(unitarity_defect(rho_operator(ctx, g)), describe(g));
    return report;
}

CheckReport check_unitarity_exhaustive(const PrimeContext& ctx, double tol) {
    const auto gs = all_sl2_elements(ctx);
    return check_unitarity(ctx, gs, tol);
}

CheckReport check_unitarity_sampled(const PrimeContext& ctx, std::size_t count,
                                    std::uint64_t seed, double tol) {
    std::mt19937_64 rng(seed);
    CheckReport report;
    report.tolerance = tol;
    for (std::size_t i = 0; i < count; ++i) {
        const SL2Element g = random_sl2(ctx, rng);
        report.record(unitarity_defect(rho_operator(ctx, g)), describe(g));
    }
    return report;
}

SignReport heisenberg_relation_sign(const PrimeContext& ctx, double tol) {
    const auto vectors = all_plane_vectors(ctx, /*include_zero=*/true);
    std::vector<ComplexMatrix> pis;
    pis.reserve(vectors.size());
    for (const auto& v : vectors) pis.push_back(pi_operator(ctx, v));

    double worst[2] = {0.0, 0.0}; // index 0: eps = +1, index 1: eps = -1
    std::size_t checked = 0;
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = 0; j < vectors.size(); ++j) {
            const ComplexMatrix product = pis[i] * pis[j];
            const Scalar om = ctx.mul(ctx.half(), symplectic_form(ctx, vectors[i], vectors[j]));
            const PlaneVector sum = plane_add(ctx, vectors[i], vectors[j]);
            // all_plane_vectors enumerates lambda-major, so (lambda, mu) sits at
            // index lambda * p + mu.
            const ComplexMatrix& target = pis[static_cast<std::size_t>(sum.lambda * ctx.p() + sum.mu)];
            worst[0] = std::max(worst[0], max_abs_diff(product, ctx.psi(om) * target));
            worst[1] = std::max(worst[1], max_abs_diff(product, ctx.psi(ctx.neg(om)) * target));
            ++checked;
        }

    SignReport report;
    report.checked = checked;
    if (worst[0] <= tol) {
        report.sign = +1;
        report.max_deviation = worst[0];
    } else if (worst[1] <= tol) {
        report.sign = -1;
        report.max_deviation = worst[1];
    } else {
        throw NoConsistentSign("heisenberg_relation_sign: neither sign fits (dev +1: " +
                               std::to_string(worst[0]) + ", dev -1: " + std::to_string(worst[1]) +
                               ")");
    }
    return report;
}

SL2Element random_sl2(const PrimeContext& ctx, std::mt19937_64& rng) {
    const Scalar p = ctx.p();
    std::uniform_int_distribution<Scalar> unit(0, p - 1);
    Scalar a, b;
    do {
        a = unit(rng);
        b = unit(rng);
    } while (a == 0 && b == 0);
    if (a != 0) {
        const Scalar c = unit(rng);
        return {a, b, c, ctx.mul(ctx.inv(a), 1 + ctx.mul(b, c))};
    }
    const Scalar d = unit(rng);
    return {0, b, ctx.neg(ctx.inv(b)), d};
}

PlaneVector random_nonzero_vector(const PrimeContext& ctx, std::mt19937_64& rng) {
    std::uniform_int_distribution<Scalar> unit(0, ctx.p() - 1);
    PlaneVector v;
    do {
        v = {unit(rng), unit(rng)};
    } while (v.is_zero());
    return v;
}

} // namespace qtorus
