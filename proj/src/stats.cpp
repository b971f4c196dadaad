#include "qtorus/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qtorus {

Scalar smallest_primitive_root(const PrimeContext& ctx) {
    const Scalar p = ctx.p();
    for (Scalar g = 2; g < p; ++g) {
        Scalar order = 1;
        Scalar power = g;
        while (power != 1) {
            power = ctx.mul(power, g);
            ++order;
        }
        if (order == p - 1) return g;
    }
    throw Error("smallest_primitive_root: none found (p not prime?)");
}

cplx split_closed_sum(const PrimeContext& ctx, int chi_index, Scalar lambda, Scalar mu) {
    const Scalar product = ctx.mul(lambda, mu);
    if (product == 0) throw ZeroProduct("split_closed_sum: lambda * mu = 0");
    const Scalar p = ctx.p();

    // Index table against the smallest primitive root.
    const Scalar root = smallest_primitive_root(ctx);
    std::vector<Scalar> index(static_cast<std::size_t>(p), 0);
    Scalar power = 1;
    for (Scalar j = 0; j < p - 1; ++j) {
        index[static_cast<std::size_t>(power)] = j;
        power = ctx.mul(power, root);
    }

    const double step = 2.0 * std::numbers::pi / static_cast<double>(p - 1);
    cplx sum = 0.0;
    for (Scalar a = 2; a < p; ++a) { // skips a = 0, 1
        const Scalar ratio = ctx.mul(ctx.add(a, 1), ctx.inv(ctx.sub(a, 1)));
        const Scalar phase = ctx.mul(ctx.mul(ctx.half(), ratio), product);
        const cplx chi = std::polar(
            1.0, step * static_cast<double>((chi_index * index[static_cast<std::size_t>(a)]) %
                                            (p - 1)));
        sum += static_cast<double>(ctx.legendre(a)) * ctx.psi(phase) * chi;
    }
    return sum;
}

SL2Element split_diagonalizer(const PrimeContext& ctx, const TorusDescriptor& torus) {
    if (!torus.split())
        throw Error("split_diagonalizer: torus is inert over F_" + std::to_string(ctx.p()));
    const SL2Element a = torus.a_mod_p();
    const Scalar tr = ctx.add(a.a, a.d);

    // Eigenvalues: the two distinct roots of x^2 - tr x + 1.
    std::vector<Scalar> roots;
    for (Scalar t = 1; t < ctx.p() && roots.size() < 2; ++t)
        if (ctx.reduce(t * t - tr * t + 1) == 0) roots.push_back(t);
    if (roots.size() != 2)
        throw Error("split_diagonalizer: expected two distinct eigenvalues");
    const Scalar t1 = roots[0], t2 = roots[1];

    const auto eigenvector = [&](Scalar t) -> PlaneVector {
        if (a.b != 0) return {a.b, ctx.sub(t, a.a)};
        if (a.c != 0) return {ctx.sub(t, a.d), a.c};
        return t == a.a ? PlaneVector{1, 0} : PlaneVector{0, 1};
    };
    const PlaneVector v1 = eigenvector(t1);
    const PlaneVector v2 = eigenvector(t2);

    // S^{-1} has the eigenvectors as columns, second column scaled to det 1.
    const Scalar det = ctx.reduce(v1.lambda * v2.mu - v2.lambda * v1.mu);
    const SL2Element sinv{v1.lambda, ctx.mul(v2.lambda, ctx.inv(det)), v1.mu,
                          ctx.mul(v2.mu, ctx.inv(det))};
    return sl2_inverse(ctx, sinv);
}

ComplexMatrix averaged_operator(const PrimeContext& ctx, const TorusDescriptor& torus,
                                const PlaneVector& xi) {
    if (is_eigenvector(ctx, torus.a_mod_p(), xi))
        throw EigenvectorInput("averaged_operator: xi is an eigenvector of A mod p");
    const ComplexMatrix pi = pi_operator(ctx, xi);
    ComplexMatrix sum = ComplexMatrix::Zero(ctx.p(), ctx.p());
    for (const auto& b : torus.elements()) {
        const ComplexMatrix rho = rho_operator(ctx, b);
        sum += rho * pi * rho.adjoint();
    }
    return sum / static_cast<double>(torus.order());
}

double lnorm_operator_side(const PrimeContext& ctx, const TorusDescriptor& torus,
                           const PlaneVector& xi, int n) {
    if (n < 1 || n > 3) throw Error("lnorm_operator_side: N must be 1, 2 or 3");
    const ComplexMatrix av = averaged_operator(ctx, torus, xi);
    const ComplexMatrix gram = av.adjoint() * av;
    ComplexMatrix power = gram;
    for (int i = 1; i < n; ++i) power = power * gram;
    return power.trace().real();
}

cplx lnorm_sum_side(const PrimeContext& ctx, const TorusDescriptor& torus, const PlaneVector& xi,
                    int n) {
    if (n < 1 || n > 3) throw Error("lnorm_sum_side: N must be 1, 2 or 3");
    const auto orbit = torus_orbit(ctx, torus, xi);
    const std::size_t len = orbit.size();
    const int tuple_len = 2 * n;

    double work = 1.0;
    for (int i = 0; i < tuple_len - 1; ++i) work *= static_cast<double>(len);
    if (work > 1e7)
        throw TooLarge("lnorm_sum_side: |O|^{2N-1} = " + std::to_string(work) +
                       " exceeds the enumeration guard");

    // Orbit membership lookup on the plane.
    const Scalar p = ctx.p();
    std::vector<Scalar> orbit_index(static_cast<std::size_t>(p * p), -1);
    for (std::size_t i = 0; i < len; ++i)
        orbit_index[static_cast<std::size_t>(orbit[i].lambda * p + orbit[i].mu)] =
            static_cast<Scalar>(i);

    std::vector<std::size_t> digits(static_cast<std::size_t>(tuple_len - 1), 0);
    std::vector<PlaneVector> tuple(static_cast<std::size_t>(tuple_len));
    cplx total = 0.0;
    while (true) {
        PlaneVector partial{0, 0};
        for (int i = 0; i < tuple_len - 1; ++i) {
            tuple[static_cast<std::size_t>(i)] = orbit[digits[static_cast<std::size_t>(i)]];
            partial = plane_add(ctx, partial, tuple[static_cast<std::size_t>(i)]);
        }
        const PlaneVector last = plane_negate(ctx, partial);
        if (orbit_index[static_cast<std::size_t>(last.lambda * p + last.mu)] >= 0) {
            tuple[static_cast<std::size_t>(tuple_len - 1)] = last;
            Scalar phase = 0;
            for (int i = 0; i < tuple_len; ++i)
                for (int j = i + 1; j < tuple_len; ++j)
                    phase += symplectic_form(ctx, tuple[static_cast<std::size_t>(i)],
                                             tuple[static_cast<std::size_t>(j)]);
            total += ctx.psi(ctx.mul(ctx.half(), phase));
        }
        int pos = tuple_len - 2;
        while (pos >= 0 && ++digits[static_cast<std::size_t>(pos)] == len) {
            digits[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }

    double norm = static_cast<double>(p);
    for (int i = 0; i < tuple_len; ++i) norm /= static_cast<double>(torus.order());
    return norm * total;
}

LnormReport lnorm_compare(const PrimeContext& ctx, const TorusDescriptor& torus,
                          const PlaneVector& xi, int n, double tol) {
    LnormReport report;
    report.p = ctx.p();
    report.n = n;
    report.operator_side = lnorm_operator_side(ctx, torus, xi, n);
    report.sum_side = lnorm_sum_side(ctx, torus, xi, n);
    report.match = std::abs(report.sum_side - report.operator_side) < tol &&
                   std::abs(report.sum_side.imag()) < tol;
    return report;
}

double semicircle_cdf(double x) {
    if (x <= -2.0) return 0.0;
    if (x >= 2.0) return 1.0;
    return 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * std::numbers::pi) +
           std::asin(x / 2.0) / std::numbers::pi;
}

double ks_distance_semicircle(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double cdf = semicircle_cdf(values[i]);
        ks = std::max(ks, std::abs(static_cast<double>(i + 1) / n - cdf));
        ks = std::max(ks, std::abs(cdf - static_cast<double>(i) / n));
    }
    return ks;
}

SatoTateReport sato_tate_histogram(const IntegralSL2& a, const LatticeVector& xi,
                                   const std::vector<Scalar>& p_list, std::size_t bins) {
    if (bins == 0) throw Error("sato_tate_histogram: need at least one bin");
    SatoTateReport report;

    for (const Scalar p : p_list) {
        if (!is_supported_prime(p)) {
            report.skipped.push_back({p, std::nullopt, "UnsupportedPrime"});
            continue;
        }
        const PrimeContext ctx(p);
        std::optional<TorusDescriptor> torus;
        try {
            torus = hecke_torus(ctx, a);
        } catch (const RamifiedPrime&) {
            report.skipped.push_back({p, std::nullopt, "RamifiedPrime"});
            continue;
        }
        const PlaneVector reduced = reduce_mod_p(ctx, xi);
        if (reduced.is_zero()) {
            report.skipped.push_back({p, xi, "ZeroFrequency"});
            continue;
        }
        if (is_eigenvector(ctx, torus->a_mod_p(), reduced)) {
            report.skipped.push_back({p, xi, "EigenvectorInput"});
            continue;
        }

        std::vector<cplx> values;
        values.reserve(torus->elements().size());
        for (const auto& b : torus->elements()) values.push_back(trace_F(ctx, b, reduced));
        std::vector<Scalar> dlogs;
        dlogs.reserve(values.size());
        for (const auto& b : torus->elements()) dlogs.push_back(torus->dlog(b));

        const double scale = 1.0 / std::sqrt(static_cast<double>(p));
        for (int k = 0; k < torus->order(); ++k) {
            cplx sum = 0.0;
            for (std::size_t i = 0; i < values.size(); ++i)
                sum += values[i] * torus->root_of_unity(static_cast<Scalar>(k) * dlogs[i]);
            const cplx normalized = sum * scale;
            report.max_imag = std::max(report.max_imag, std::abs(normalized.imag()));
            report.max_abs = std::max(report.max_abs, std::abs(normalized));
            report.normalized_values.push_back(normalized.real());
        }
    }

    constexpr double kMargin = 1e-6;
    const double lo = -2.0 - kMargin, hi = 2.0 + kMargin;
    const double width = (hi - lo) / static_cast<double>(bins);
    report.bins.resize(bins);
    for (std::size_t i = 0; i < bins; ++i) {
        report.bins[i].bin_left = lo + width * static_cast<double>(i);
        report.bins[i].bin_right = lo + width * static_cast<double>(i + 1);
    }
    for (const double v : report.normalized_values) {
        auto slot = static_cast<std::size_t>((v - lo) / width);
        if (slot >= bins) slot = bins - 1;
        ++report.bins[slot].count;
    }
    const double total = static_cast<double>(report.normalized_values.size());
    if (total > 0)
        for (auto& bin : report.bins)
            bin.density = static_cast<double>(bin.count) / (total * width);

    report.ks_distance = ks_distance_semicircle(report.normalized_values);
    return report;
}

CheckReport gauss_identity_check(const PrimeContext& ctx, double tol) {
    CheckReport report;
    report.tolerance = tol;
    for (Scalar s = 1; s < ctx.p(); ++s) {
        cplx linear = 0.0, quadratic = 0.0;
        for (Scalar z = 0; z < ctx.p(); ++z) {
            linear += ctx.psi(ctx.mul(ctx.mul(ctx.half(), s), z)) *
                      static_cast<double>(ctx.legendre(z));
            quadratic += ctx.psi(ctx.mul(ctx.mul(ctx.half(), s), ctx.mul(z, z)));
        }
        report.record(std::abs(linear - quadratic), "s=" + std::to_string(s));
    }
    return report;
}

} // namespace qtorus
