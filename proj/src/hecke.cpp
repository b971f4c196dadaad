#include "qtorus/hecke.hpp"

#include <algorithm>
#include <cmath>

namespace qtorus {

ComplexMatrix projector(const PrimeContext& ctx, const TorusDescriptor& torus,
                        TorusCharacter chi) {
    ComplexMatrix sum = ComplexMatrix::Zero(ctx.p(), ctx.p());
    for (const auto& b : torus.elements())
        sum += std::conj(character_value(torus, chi, b)) * rho_operator(ctx, b);
    return sum / static_cast<double>(torus.order());
}

namespace {

int rank_from_trace(cplx trace, Scalar order) {
    const double re = trace.real() / static_cast<double>(order);
    const double im = trace.imag() / static_cast<double>(order);
    const double rounded = std::round(re);
    if (std::abs(re - rounded) >= 1e-6 || std::abs(im) >= 1e-6)
        throw Error("eigenspace rank: projector trace " + std::to_string(re) + "+" +
                    std::to_string(im) + "i is not within 1e-6 of an integer");
    return static_cast<int>(rounded);
}

} // namespace

int eigenspace_rank(const PrimeContext& ctx, const TorusDescriptor& torus, TorusCharacter chi) {
    // Tr P_chi = (1/|T|) sum_B conj(chi(B)) Tr rho(B); the operator traces come
    // from the O(p) kernel path with xi = 0.
    cplx trace = 0.0;
    for (const auto& b : torus.elements())
        trace += std::conj(character_value(torus, chi, b)) * trace_F(ctx, b, PlaneVector{0, 0});
    return rank_from_trace(trace, torus.order());
}

std::vector<std::pair<int, int>> eigenspace_dimensions(const PrimeContext& ctx,
                                                       const TorusDescriptor& torus) {
    std::vector<cplx> traces;
    traces.reserve(torus.elements().size());
    for (const auto& b : torus.elements()) traces.push_back(trace_F(ctx, b, PlaneVector{0, 0}));

    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(torus.order()));
    for (int k = 0; k < torus.order(); ++k) {
        cplx trace = 0.0;
        for (std::size_t i = 0; i < traces.size(); ++i)
            trace += std::conj(character_value(torus, TorusCharacter{k}, torus.elements()[i])) *
                     traces[i];
        out.emplace_back(k, rank_from_trace(trace, torus.order()));
    }
    return out;
}

cplx hecke_sum(const PrimeContext& ctx, const TorusDescriptor& torus, TorusCharacter chi,
               const PlaneVector& xi) {
    if (xi.is_zero()) throw ZeroFrequency("hecke_sum: xi = 0");
    if (is_eigenvector(ctx, torus.a_mod_p(), xi))
        throw EigenvectorInput("hecke_sum: xi is an eigenvector of A mod p");
    cplx sum = 0.0;
    for (const auto& b : torus.elements())
        sum += trace_F(ctx, b, xi) * character_value(torus, chi, b);
    return sum;
}

cplx wigner_value(const PrimeContext& ctx, const TorusDescriptor& torus, TorusCharacter chi,
                  const PlaneVector& xi) {
    if (eigenspace_rank(ctx, torus, chi) != 1)
        throw NotOneDimensional("wigner_value: eigenspace of chi_" + std::to_string(chi.k) +
                                " does not have rank 1");
    cplx sum = 0.0;
    for (const auto& b : torus.elements())
        sum += std::conj(character_value(torus, chi, b)) * trace_F(ctx, b, xi);
    return sum / static_cast<double>(torus.order());
}

RateReport rate_check(const IntegralSL2& a, std::vector<LatticeVector> xi_list,
                      std::vector<Scalar> p_list, double tol) {
    if (a.det() != 1)
        throw NotUnimodular("rate_check: det(A) = " + std::to_string(a.det()));

    std::sort(p_list.begin(), p_list.end());
    p_list.erase(std::unique(p_list.begin(), p_list.end()), p_list.end());
    std::sort(xi_list.begin(), xi_list.end(), [](const LatticeVector& u, const LatticeVector& v) {
        return u.l != v.l ? u.l < v.l : u.m < v.m;
    });
    xi_list.erase(std::unique(xi_list.begin(), xi_list.end()), xi_list.end());

    RateReport report;
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

        // Screen frequencies and cache the trace-function values per (xi, B).
        std::vector<std::pair<LatticeVector, std::vector<cplx>>> tables;
        for (const auto& xi : xi_list) {
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
            tables.emplace_back(xi, std::move(values));
        }

        const double bound = 2.0 * std::sqrt(static_cast<double>(p));
        std::vector<Scalar> dlogs;
        dlogs.reserve(torus->elements().size());
        for (const auto& b : torus->elements()) dlogs.push_back(torus->dlog(b));

        for (int k = 0; k < torus->order(); ++k) {
            for (const auto& [xi, values] : tables) {
                cplx sum = 0.0;
                for (std::size_t i = 0; i < values.size(); ++i)
                    sum += values[i] * torus->root_of_unity(static_cast<Scalar>(k) * dlogs[i]);
                WignerRecord record;
                record.p = p;
                record.a = a;
                record.chi_index = k;
                record.xi = xi;
                record.xi_mod_p = reduce_mod_p(ctx, xi);
                record.sum_value = sum;
                record.normalized = sum / std::sqrt(static_cast<double>(p));
                record.bound = bound;
                record.pass = std::abs(sum) <= bound + tol;
                record.split = torus->split();
                report.records.push_back(record);
            }
        }
    }
    return report;
}

} // namespace qtorus
