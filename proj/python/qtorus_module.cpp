// Python bindings for the qtorus core: contexts, the Weil and Heisenberg
// operators as numpy arrays, Hecke torus data, the chi-twisted sums, and the
// verification sweeps.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qtorus/canonical.hpp"
#include "qtorus/hecke.hpp"
#include "qtorus/stats.hpp"

namespace py = pybind11;
using namespace qtorus;

namespace {

SL2Element to_sl2(const PrimeContext& ctx, const std::tuple<long long, long long, long long,
                                                            long long>& m) {
    const auto [a, b, c, d] = m;
    const SL2Element g{ctx.reduce(a), ctx.reduce(b), ctx.reduce(c), ctx.reduce(d)};
    if (ctx.reduce(g.a * g.d - g.b * g.c) != 1)
        throw NotUnimodular("matrix is not in SL2(F_p)");
    return g;
}

IntegralSL2 to_integral(const std::tuple<long long, long long, long long, long long>& m) {
    const auto [a, b, c, d] = m;
    return IntegralSL2{a, b, c, d};
}

PlaneVector to_vec(const PrimeContext& ctx, const std::pair<long long, long long>& v) {
    return {ctx.reduce(v.first), ctx.reduce(v.second)};
}

py::dict report_dict(const CheckReport& r) {
    py::dict d;
    d["checked"] = r.checked;
    d["max_deviation"] = r.max_deviation;
    d["tolerance"] = r.tolerance;
    d["violations"] = r.violations;
    d["pass"] = r.passed();
    return d;
}

} // namespace

PYBIND11_MODULE(qtorus, m) {
    m.doc() = "Weil representation of the quantized torus at hbar = 1/p, Hecke-Wigner "
              "distributions, and the 2*sqrt(p) rate bound";

    py::register_exception<Error>(m, "QtorusError");

    py::class_<PrimeContext>(m, "PrimeContext")
        .def(py::init<Scalar>(), py::arg("p"))
        .def_property_readonly("p", &PrimeContext::p)
        .def_property_readonly("half", &PrimeContext::half)
        .def("legendre", &PrimeContext::legendre, py::arg("t"))
        .def("psi", &PrimeContext::psi, py::arg("t"))
        .def("inv", &PrimeContext::inv, py::arg("t"))
        .def("__repr__",
             [](const PrimeContext& ctx) {
                 return "PrimeContext(p=" + std::to_string(ctx.p()) + ")";
             });

    m.def("big_cell_normalizer", &big_cell_normalizer, py::arg("ctx"), py::arg("b"));

    py::class_<TorusDescriptor>(m, "HeckeTorus")
        .def_property_readonly("p", &TorusDescriptor::p)
        .def_property_readonly("order", &TorusDescriptor::order)
        .def_property_readonly("split", &TorusDescriptor::split)
        .def_property_readonly("elements",
                               [](const TorusDescriptor& t) {
                                   std::vector<std::tuple<Scalar, Scalar, Scalar, Scalar>> out;
                                   for (const auto& g : t.elements())
                                       out.emplace_back(g.a, g.b, g.c, g.d);
                                   return out;
                               })
        .def_property_readonly("generator",
                               [](const TorusDescriptor& t) {
                                   const auto& g = t.generator();
                                   return std::make_tuple(g.a, g.b, g.c, g.d);
                               })
        .def("__repr__", [](const TorusDescriptor& t) {
            return "HeckeTorus(p=" + std::to_string(t.p()) +
                   ", order=" + std::to_string(t.order()) +
                   (t.split() ? ", split" : ", inert") + ")";
        });

    m.def(
        "hecke_torus",
        [](const PrimeContext& ctx, const std::tuple<long long, long long, long long, long long>&
                                        a) { return hecke_torus(ctx, to_integral(a)); },
        py::arg("ctx"), py::arg("A"));

    m.def(
        "rho_operator",
        [](const PrimeContext& ctx,
           const std::tuple<long long, long long, long long, long long>& g) {
            return rho_operator(ctx, to_sl2(ctx, g));
        },
        py::arg("ctx"), py::arg("g"), "Weil representation operator as a dense numpy matrix");
    m.def(
        "pi_operator",
        [](const PrimeContext& ctx, const std::pair<long long, long long>& xi, Scalar z) {
            return pi_operator(ctx, HeisenbergElement{to_vec(ctx, xi), ctx.reduce(z)});
        },
        py::arg("ctx"), py::arg("xi"), py::arg("z") = 0,
        "Heisenberg operator pi((xi, z)) as a dense numpy matrix");
    m.def(
        "trace_f",
        [](const PrimeContext& ctx,
           const std::tuple<long long, long long, long long, long long>& g,
           const std::pair<long long, long long>& xi) {
            return trace_F(ctx, to_sl2(ctx, g), to_vec(ctx, xi));
        },
        py::arg("ctx"), py::arg("B"), py::arg("xi"), "F(B, xi) = Tr(rho(B) pi(s(xi)))");
    m.def(
        "torus_closed_form",
        [](const PrimeContext& ctx, Scalar a, Scalar lam, Scalar mu) {
            return torus_closed_form(ctx, a, lam, mu);
        },
        py::arg("ctx"), py::arg("a"), py::arg("lam"), py::arg("mu"));
    m.def(
        "invariant_closed_form",
        [](const PrimeContext& ctx,
           const std::tuple<long long, long long, long long, long long>& g,
           const std::pair<long long, long long>& v) {
            return invariant_closed_form(ctx, to_sl2(ctx, g), to_vec(ctx, v));
        },
        py::arg("ctx"), py::arg("g"), py::arg("v"));

    m.def(
        "check_egorov",
        [](const PrimeContext& ctx, std::size_t samples, std::uint64_t seed, double tol) {
            const auto report = samples == 0 ? check_egorov_exhaustive(ctx, tol)
                                             : check_egorov_sampled(ctx, samples, seed, tol);
            return report_dict(report);
        },
        py::arg("ctx"), py::arg("samples") = 0, py::arg("seed") = 1, py::arg("tol") = 1e-8,
        "samples=0 runs the exhaustive sweep");
    m.def(
        "check_homomorphism",
        [](const PrimeContext& ctx, std::size_t samples, std::uint64_t seed, double tol) {
            const auto report = samples == 0
                                    ? check_homomorphism_exhaustive(ctx, tol)
                                    : check_homomorphism_sampled(ctx, samples, seed, tol);
            return report_dict(report);
        },
        py::arg("ctx"), py::arg("samples") = 0, py::arg("seed") = 1, py::arg("tol") = 1e-8);
    m.def(
        "check_associativity",
        [](const PrimeContext& ctx, double tol) {
            return report_dict(check_associativity(ctx, tol));
        },
        py::arg("ctx"), py::arg("tol") = 1e-8);
    m.def(
        "gauss_identity_check",
        [](const PrimeContext& ctx, double tol) {
            return report_dict(gauss_identity_check(ctx, tol));
        },
        py::arg("ctx"), py::arg("tol") = 1e-9);

    m.def(
        "projector",
        [](const PrimeContext& ctx, const TorusDescriptor& torus, int chi) {
            return projector(ctx, torus, {chi});
        },
        py::arg("ctx"), py::arg("torus"), py::arg("chi"));
    m.def(
        "eigenspace_dimensions",
        [](const PrimeContext& ctx, const TorusDescriptor& torus) {
            return eigenspace_dimensions(ctx, torus);
        },
        py::arg("ctx"), py::arg("torus"));
    m.def(
        "hecke_sum",
        [](const PrimeContext& ctx, const TorusDescriptor& torus, int chi,
           const std::pair<long long, long long>& xi) {
            return hecke_sum(ctx, torus, {chi}, to_vec(ctx, xi));
        },
        py::arg("ctx"), py::arg("torus"), py::arg("chi"), py::arg("xi"));
    m.def(
        "wigner_value",
        [](const PrimeContext& ctx, const TorusDescriptor& torus, int chi,
           const std::pair<long long, long long>& xi) {
            return wigner_value(ctx, torus, {chi}, to_vec(ctx, xi));
        },
        py::arg("ctx"), py::arg("torus"), py::arg("chi"), py::arg("xi"));

    m.def(
        "rate_check",
        [](const std::tuple<long long, long long, long long, long long>& a,
           const std::vector<std::pair<long long, long long>>& xis,
           const std::vector<Scalar>& primes, double tol) {
            std::vector<LatticeVector> lattice;
            lattice.reserve(xis.size());
            for (const auto& [l, mm] : xis) lattice.push_back({l, mm});
            const RateReport report = rate_check(to_integral(a), lattice, primes, tol);
            py::list records;
            for (const auto& r : report.records) {
                py::dict d;
                d["p"] = r.p;
                d["A"] = std::make_tuple(r.a.a, r.a.b, r.a.c, r.a.d);
                d["chi"] = r.chi_index;
                d["xi"] = std::make_pair(r.xi.l, r.xi.m);
                d["sum"] = r.sum_value;
                d["normalized"] = r.normalized;
                d["bound"] = r.bound;
                d["pass"] = r.pass;
                d["split"] = r.split;
                records.append(d);
            }
            py::list skipped;
            for (const auto& s : report.skipped) {
                py::dict d;
                d["p"] = s.p;
                if (s.xi) d["xi"] = std::make_pair(s.xi->l, s.xi->m);
                d["reason"] = s.reason;
                skipped.append(d);
            }
            py::dict out;
            out["records"] = records;
            out["skipped"] = skipped;
            out["failures"] = report.failures();
            return out;
        },
        py::arg("A"), py::arg("xis"), py::arg("primes"), py::arg("tol") = 1e-6);

    m.def(
        "split_closed_sum",
        [](const PrimeContext& ctx, int chi, Scalar lam, Scalar mu) {
            return split_closed_sum(ctx, chi, lam, mu);
        },
        py::arg("ctx"), py::arg("chi"), py::arg("lam"), py::arg("mu"));
    m.def(
        "averaged_operator",
        [](const PrimeContext& ctx, const TorusDescriptor& torus,
           const std::pair<long long, long long>& xi) {
            return averaged_operator(ctx, torus, to_vec(ctx, xi));
        },
        py::arg("ctx"), py::arg("torus"), py::arg("xi"));
    m.def(
        "lnorm_operator_side",
        [](const PrimeContext& ctx, const TorusDescriptor& torus,
           const std::pair<long long, long long>& xi, int n) {
            return lnorm_operator_side(ctx, torus, to_vec(ctx, xi), n);
        },
        py::arg("ctx"), py::arg("torus"), py::arg("xi"), py::arg("N"));
    m.def(
        "lnorm_sum_side",
        [](const PrimeContext& ctx, const TorusDescriptor& torus,
           const std::pair<long long, long long>& xi, int n) {
            return lnorm_sum_side(ctx, torus, to_vec(ctx, xi), n);
        },
        py::arg("ctx"), py::arg("torus"), py::arg("xi"), py::arg("N"));
    m.def("semicircle_cdf", &semicircle_cdf, py::arg("x"));
    m.def(
        "sato_tate_histogram",
        [](const std::tuple<long long, long long, long long, long long>& a,
           const std::pair<long long, long long>& xi, const std::vector<Scalar>& primes,
           std::size_t bins) {
            const auto report =
                sato_tate_histogram(to_integral(a), {xi.first, xi.second}, primes, bins);
            py::dict out;
            py::list rows;
            for (const auto& bin : report.bins)
                rows.append(py::make_tuple(bin.bin_left, bin.bin_right, bin.count, bin.density));
            out["bins"] = rows;
            out["values"] = report.normalized_values;
            out["ks"] = report.ks_distance;
            out["max_imag"] = report.max_imag;
            out["max_abs"] = report.max_abs;
            return out;
        },
        py::arg("A"), py::arg("xi"), py::arg("primes"), py::arg("bins") = 41);

    m.def(
        "intertwiner",
        [](const PrimeContext& ctx, const std::pair<long long, long long>& d1, int s1,
           const std::pair<long long, long long>& d2, int s2) {
            return intertwiner(ctx, {to_vec(ctx, d1), s1}, {to_vec(ctx, d2), s2});
        },
        py::arg("ctx"), py::arg("direction1"), py::arg("sign1"), py::arg("direction2"),
        py::arg("sign2"), "canonical intertwiner between induced models");
    m.def(
        "canonical_weil_operator",
        [](const PrimeContext& ctx,
           const std::tuple<long long, long long, long long, long long>& g) {
            return canonical_weil_operator(ctx, to_sl2(ctx, g));
        },
        py::arg("ctx"), py::arg("g"));

#ifdef QTORUS_VERSION
    m.attr("__version__") = QTORUS_VERSION;
#else
    m.attr("__version__") = "0.1.0";
#endif
}
