// qtorus: batch verification suites for the Weil representation of the
// quantized torus at hbar = 1/p and the Hecke-Wigner sums over the Hecke
// torus. Each subcommand sweeps one family of identities, writes
// machine-readable records to the output sink, and prints a one-line summary
// on stderr. Exit codes: 0 all assertions passed, 1 at least one violated,
// 2 usage error. Skipped items (ramified primes, eigenvector frequencies)
// never change the exit code on their own.

#include <CLI11.hpp>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <thread>
#include <variant>

#include "qtorus/canonical.hpp"
#include "qtorus/hecke.hpp"
#include "qtorus/stats.hpp"

using namespace qtorus;

namespace {

// ---------------------------------------------------------------------------
// Record formatting: flat ordered key/value rows, serialized as JSON lines or
// CSV rows with a fixed 15-significant-digit float format so reruns are
// byte-identical.

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

struct RawJson {
    std::string text; // rendered verbatim in JSON (arrays)
};

struct Record {
    using Value = std::variant<long long, double, bool, std::string, RawJson>;
    std::vector<std::pair<std::string, Value>> fields;

    Record& add(const std::string& key, long long v) { return push(key, v); }
    Record& add(const std::string& key, int v) { return push(key, static_cast<long long>(v)); }
    Record& add(const std::string& key, Scalar v) { return push(key, static_cast<long long>(v)); }
    Record& add(const std::string& key, double v) { return push(key, v); }
    Record& add(const std::string& key, bool v) { return push(key, v); }
    Record& add(const std::string& key, const std::string& v) { return push(key, v); }
    Record& add(const std::string& key, RawJson v) { return push(key, std::move(v)); }

    static std::string render(const Value& v, bool json) {
        if (const auto* i = std::get_if<long long>(&v)) return std::to_string(*i);
        if (const auto* d = std::get_if<double>(&v)) return fmt_double(*d);
        if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
        if (const auto* raw = std::get_if<RawJson>(&v)) return raw->text;
        const std::string& s = std::get<std::string>(v);
        return json ? "\"" + s + "\"" : s;
    }

    std::string to_json() const {
        std::string out = "{";
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out += ",";
            out += "\"" + fields[i].first + "\":" + render(fields[i].second, true);
        }
        return out + "}";
    }
    std::string csv_row() const {
        std::string out;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out += ",";
            out += render(fields[i].second, false);
        }
        return out;
    }
    std::string csv_header() const {
        std::string out;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out += ",";
            out += fields[i].first;
        }
        return out;
    }

private:
    template <typename T>
    Record& push(const std::string& key, T v) {
        fields.emplace_back(key, Value(std::move(v)));
        return *this;
    }
};

// Pinned record schema for the rate suite. JSON keeps the array shape of "A"
// and "xi"; CSV flattens them into one column per entry, same order.
Record rate_record(const WignerRecord& r, bool json) {
    Record rec;
    rec.add("p", r.p);
    if (json) {
        rec.add("A", RawJson{"[" + std::to_string(r.a.a) + "," + std::to_string(r.a.b) + "," +
                             std::to_string(r.a.c) + "," + std::to_string(r.a.d) + "]"});
        rec.add("chi", r.chi_index);
        rec.add("xi", RawJson{"[" + std::to_string(r.xi.l) + "," + std::to_string(r.xi.m) + "]"});
    } else {
        rec.add("A0", r.a.a).add("A1", r.a.b).add("A2", r.a.c).add("A3", r.a.d);
        rec.add("chi", r.chi_index);
        rec.add("xi0", r.xi.l).add("xi1", r.xi.m);
    }
    rec.add("re", r.sum_value.real());
    rec.add("im", r.sum_value.imag());
    rec.add("abs", std::abs(r.sum_value));
    rec.add("bound", r.bound);
    rec.add("pass", r.pass);
    rec.add("split", r.split);
    return rec;
}

// ---------------------------------------------------------------------------
// Run configuration shared by the suites.

struct RunConfig {
    std::vector<Scalar> primes;
    IntegralSL2 a{2, 1, 1, 1};
    std::vector<LatticeVector> xi_list{{1, 0}, {0, 1}, {1, 1}, {2, 3}};
    double tolerance = -1.0; // negative: per-suite default
    std::string out_path;
    bool csv = false;
    unsigned jobs = 1;
    std::size_t samples = 0; // zero: per-suite default
    std::size_t bins = 41;
    std::vector<int> lnorm_exponents{1, 2};

    double tol_or(double fallback) const { return tolerance > 0 ? tolerance : fallback; }
};

std::vector<Scalar> parse_prime_spec(const std::string& spec, Scalar cap, std::string& error) {
    std::vector<Scalar> out;
    try {
        if (const auto dots = spec.find(".."); dots != std::string::npos) {
            const long long lo = std::stoll(spec.substr(0, dots));
            const long long hi = std::stoll(spec.substr(dots + 2));
            if (lo > hi) {
                error = "empty prime range " + spec;
                return {};
            }
            if (hi > cap) {
                error = "range end " + std::to_string(hi) + " exceeds the cap " +
                        std::to_string(cap) + " for this suite";
                return {};
            }
            for (long long v = lo; v <= hi; ++v)
                if (is_supported_prime(v)) out.push_back(v);
            if (out.empty()) error = "no supported primes in range " + spec;
            return out;
        }
        std::size_t start = 0;
        while (start < spec.size()) {
            auto comma = spec.find(',', start);
            if (comma == std::string::npos) comma = spec.size();
            const long long v = std::stoll(spec.substr(start, comma - start));
            if (!is_supported_prime(v) || v > cap) {
                error = "p = " + std::to_string(v) + " is not an odd prime in [5, " +
                        std::to_string(cap) + "]";
                return {};
            }
            out.push_back(v);
            start = comma + 1;
        }
    } catch (const std::exception&) {
        error = "cannot parse prime spec '" + spec + "'";
        return {};
    }
    return out;
}

// ---------------------------------------------------------------------------
// Output sink; workers produce blocks keyed by p and the writer emits them in
// ascending order, so parallel runs are byte-identical to serial ones.

class Sink {
public:
    Sink(const std::string& path, bool csv) : csv_(csv) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw Error("cannot open output file " + path);
        }
    }

    void write_line(const std::string& line) { stream() << line << "\n"; }

    void write_record(const Record& record) {
        if (csv_) {
            if (!header_written_) {
                write_line(record.csv_header());
                header_written_ = true;
            }
            write_line(record.csv_row());
        } else {
            write_line(record.to_json());
        }
    }

    bool csv() const { return csv_; }
    void flush() { stream().flush(); }

private:
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
    std::ofstream file_;
    bool csv_;
    bool header_written_ = false;
};

struct Block {
    std::vector<Record> records;
    std::size_t violations = 0;
    std::vector<std::string> notes; // skip diagnostics, reported on stderr
    std::vector<std::string> info;  // non-skip diagnostics, reported on stderr
};

template <typename Work>
std::map<Scalar, Block> run_over_primes(const std::vector<Scalar>& primes, unsigned jobs,
                                        Work&& work) {
    std::map<Scalar, Block> blocks;
    if (jobs <= 1 || primes.size() <= 1) {
        for (const Scalar p : primes) blocks.emplace(p, work(p));
        return blocks;
    }
    std::mutex mutex;
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    const auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= primes.size()) return;
            try {
                Block block = work(primes[i]);
                const std::lock_guard<std::mutex> lock(mutex);
                blocks.emplace(primes[i], std::move(block));
            } catch (...) {
                const std::lock_guard<std::mutex> lock(mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(primes.size()));
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return blocks;
}

int finish(Sink& sink, const std::string& suite, std::map<Scalar, Block>& blocks) {
    std::size_t records = 0, violations = 0, notes = 0;
    for (auto& [p, block] : blocks) {
        (void)p;
        for (const auto& record : block.records) sink.write_record(record);
        records += block.records.size();
        violations += block.violations;
        for (const auto& line : block.info) std::cerr << suite << ": " << line << "\n";
        for (const auto& note : block.notes) {
            std::cerr << suite << ": " << note << "\n";
            ++notes;
        }
    }
    sink.flush();
    std::cerr << suite << ": " << (violations == 0 ? "pass" : "FAIL") << " (" << records
              << " records, " << violations << " violations, " << notes << " skipped)\n";
    return violations == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// Suites.

int run_egorov(const RunConfig& cfg, Sink& sink) {
    const double tol = cfg.tol_or(1e-8);
    auto blocks = run_over_primes(cfg.primes, cfg.jobs, [&](Scalar p) {
        const PrimeContext ctx(p);
        Block block;
        const bool exhaustive = p <= 13;
        const std::size_t samples = cfg.samples ? cfg.samples : 200;
        const CheckReport report = exhaustive
                                       ? check_egorov_exhaustive(ctx, tol)
                                       : check_egorov_sampled(ctx, samples, 20240800 + p, tol);
        block.records.push_back(Record{}
                                    .add("p", p)
                                    .add("mode", std::string(exhaustive ? "exhaustive" : "sampled"))
                                    .add("pairs", static_cast<long long>(report.checked))
                                    .add("max_dev", report.max_deviation)
                                    .add("tol", tol)
                                    .add("pass", report.passed()));
        block.violations = report.violations ? 1 : 0;
        return block;
    });
    return finish(sink, "egorov", blocks);
}

int run_homomorphism(const RunConfig& cfg, Sink& sink) {
    const double tol = cfg.tol_or(1e-8);
    auto blocks = run_over_primes(cfg.primes, cfg.jobs, [&](Scalar p) {
        const PrimeContext ctx(p);
        Block block;
        const bool exhaustive = p <= 7;
        const std::size_t samples = cfg.samples ? cfg.samples : 200;
        const CheckReport report =
            exhaustive ? check_homomorphism_exhaustive(ctx, tol)
                       : check_homomorphism_sampled(ctx, samples, 20240800 + p, tol);
        block.records.push_back(Record{}
                                    .add("p", p)
                                    .add("mode", std::string(exhaustive ? "exhaustive" : "sampled"))
                                    .add("pairs", static_cast<long long>(report.checked))
                                    .add("max_dev", report.max_deviation)
                                    .add("tol", tol)
                                    .add("pass", report.passed()));
        block.violations = report.violations ? 1 : 0;
        return block;
    });
    return finish(sink, "homomorphism", blocks);
}

int run_formulas(const RunConfig& cfg, Sink& sink) {
    const double tol = cfg.tol_or(1e-8);
    auto blocks = run_over_primes(cfg.primes, cfg.jobs, [&](Scalar p) {
        const PrimeContext ctx(p);
        Block block;

        // Diagonal torus formula: exhaustive through p = 97, sampled beyond.
        double torus_dev = 0.0;
        std::size_t torus_checked = 0;
        if (p <= 97) {
            for (Scalar a = 2; a < p; ++a) {
                const SL2Element diag{a, 0, 0, ctx.inv(a)};
                for (const auto& v : all_plane_vectors(ctx, true)) {
                    torus_dev = std::max(torus_dev,
                                         std::abs(trace_F(ctx, diag, v) -
                                                  torus_closed_form(ctx, a, v.lambda, v.mu)));
                    ++torus_checked;
                }
            }
        } else {
            std::mt19937_64 rng(911 + static_cast<std::uint64_t>(p));
            std::uniform_int_distribution<Scalar> unit(0, p - 1);
            const std::size_t samples = cfg.samples ? cfg.samples : 2000;
            while (torus_checked < samples) {
                const Scalar a = unit(rng);
                if (a == 0 || a == 1) continue;
                const SL2Element diag{a, 0, 0, ctx.inv(a)};
                const PlaneVector v{unit(rng), unit(rng)};
                torus_dev =
                    std::max(torus_dev, std::abs(trace_F(ctx, diag, v) -
                                                 torus_closed_form(ctx, a, v.lambda, v.mu)));
                ++torus_checked;
            }
        }

        // Open-cell invariant formula, sampled.
        double inv_dev = 0.0;
        std::size_t inv_checked = 0;
        std::mt19937_64 rng(1201 + static_cast<std::uint64_t>(p));
        const std::size_t samples = cfg.samples ? cfg.samples : 1000;
        while (inv_checked < samples) {
            const SL2Element g = random_sl2(ctx, rng);
            if (ctx.reduce((g.a - 1) * (g.d - 1) - g.b * g.c) == 0) continue;
            const PlaneVector v = random_nonzero_vector(ctx, rng);
            inv_dev = std::max(inv_dev,
                               std::abs(trace_F(ctx, g, v) - invariant_closed_form(ctx, g, v)));
            ++inv_checked;
        }

        const CheckReport gauss = gauss_identity_check(ctx, cfg.tol_or(1e-9));

        const bool pass = torus_dev <= tol && inv_dev <= tol && gauss.passed();
        block.records.push_back(Record{}
                                    .add("p", p)
                                    .add("torus_checked", static_cast<long long>(torus_checked))
                                    .add("torus_max_dev", torus_dev)
                                    .add("invariant_checked", static_cast<long long>(inv_checked))
                                    .add("invariant_max_dev", inv_dev)
                                    .add("gauss_max_dev", gauss.max_deviation)
                                    .add("pass", pass));
        block.violations = pass ? 0 : 1;
        return block;
    });
    return finish(sink, "formulas", blocks);
}

int run_canonical(const RunConfig& cfg, Sink& sink) {
    const double tol = cfg.tol_or(1e-8);
    auto blocks = run_over_primes(cfg.primes, cfg.jobs, [&](Scalar p) {
        const PrimeContext ctx(p);
        Block block;
        const CheckReport assoc = check_associativity(ctx, tol);

        const auto lags = enumerate_oriented_lagrangians(ctx);
        double inverse_dev = 0.0, cd_dev = 0.0, cnorm_dev = 0.0;
        for (const auto& l1 : lags)
            for (const auto& l2 : lags) {
                inverse_dev = std::max(
                    inverse_dev, max_abs_diff(intertwiner(ctx, l2, l1) * intertwiner(ctx, l1, l2),
                                              identity_matrix(p)));
                for (const auto& l3 : lags) {
                    if (l1.same_line(l2) || l2.same_line(l3) || l1.same_line(l3)) continue;
                    const auto [c, d] = cocycle_constants(ctx, l1, l2, l3);
                    cd_dev = std::max(cd_dev, std::abs(c * d - cplx(1.0)));
                    cnorm_dev = std::max(cnorm_dev, std::abs(std::norm(c) - double(p)));
                }
            }

        const ProportionalityReport prop = canonical_kernel_comparison(ctx);
        const bool pass = assoc.passed() && inverse_dev <= tol && cd_dev <= cfg.tol_or(1e-9) &&
                          cnorm_dev <= tol && prop.max_deviation <= tol &&
                          std::abs(prop.constant - cplx(1.0)) <= tol;
        block.records.push_back(Record{}
                                    .add("p", p)
                                    .add("assoc_triples", static_cast<long long>(assoc.checked))
                                    .add("assoc_max_dev", assoc.max_deviation)
                                    .add("inverse_max_dev", inverse_dev)
                                    .add("cd_max_dev", cd_dev)
                                    .add("cnorm_max_dev", cnorm_dev)
                                    .add("c_re", prop.constant.real())
                                    .add("c_im", prop.constant.imag())
                                    .add("c_spread", prop.constant_spread)
                                    .add("kernel_max_dev", prop.max_deviation)
                                    .add("pass", pass));
        block.violations = pass ? 0 : 1;
        return block;
    });
    return finish(sink, "canonical", blocks);
}

int run_spectrum(const RunConfig& cfg, Sink& sink) {
    const double tol = cfg.tol_or(1e-8);
    auto blocks = run_over_primes(cfg.primes, cfg.jobs, [&](Scalar p) {
        const PrimeContext ctx(p);
        Block block;
        std::optional<TorusDescriptor> torus;
        try {
            torus = hecke_torus(ctx, cfg.a);
        } catch (const RamifiedPrime&) {
            block.notes.push_back("p=" + std::to_string(p) + " skipped: RamifiedPrime");
            return block;
        }
        const auto dims = eigenspace_dimensions(ctx, *torus);
        int total = 0;
        bool pass = true;
        const int quad = quadratic_character_index(*torus);
        for (const auto& [k, rank] : dims) {
            total += rank;
            const int expected = k == quad ? (torus->split() ? 2 : 0) : 1;
            if (rank != expected) pass = false;
            block.records.push_back(Record{}
                                        .add("p", p)
                                        .add("chi", k)
                                        .add("rank", rank)
                                        .add("quadratic", k == quad)
                                        .add("split", torus->split()));
        }
        if (total != p) pass = false;

        // Dense projector identities: P_chi idempotent and summing to I.
        // Full sweep for small tori, a spot subset once |T| grows.
        std::vector<int> subset;
        if (torus->order() <= 40) {
            for (int k = 0; k < torus->order(); ++k) subset.push_back(k);
        } else {
            subset = {0, 1, quad, static_cast<int>(torus->order() - 1)};
        }
        double idem_dev = 0.0;
        ComplexMatrix completeness = ComplexMatrix::Zero(p, p);
        for (const int k : subset) {
            const ComplexMatrix proj = projector(ctx, *torus, {k});
            idem_dev = std::max(idem_dev, max_abs_diff(proj * proj, proj));
            completeness += proj;
        }
        double complete_dev = -1.0;
        if (static_cast<Scalar>(subset.size()) == torus->order()) {
            complete_dev = max_abs_diff(completeness, identity_matrix(p));
            if (complete_dev > tol) pass = false;
        }
        if (idem_dev > tol) pass = false;
        block.info.push_back("p=" + std::to_string(p) + " projector idempotence dev " +
                             fmt_double(idem_dev) +
                             (complete_dev >= 0
                                  ? ", completeness dev " + fmt_double(complete_dev)
                                  : std::string(", completeness unchecked (|T| > 40)")));
        block.violations = pass ? 0 : 1;
        return block;
    });
    return finish(sink, "spectrum", blocks);
}

int run_rate(const RunConfig& cfg, Sink& sink) {
    const double tol = cfg.tol_or(1e-6);
    auto blocks = run_over_primes(cfg.primes, cfg.jobs, [&](Scalar p) {
        Block block;
        const RateReport report = rate_check(cfg.a, cfg.xi_list, {p}, tol);
        for (const auto& skip : report.skipped) {
            std::string note = "p=" + std::to_string(skip.p) + " skipped: " + skip.reason;
            if (skip.xi)
                note += " (xi=" + std::to_string(skip.xi->l) + "," + std::to_string(skip.xi->m) +
                        ")";
            block.notes.push_back(note);
        }
        block.violations = report.failures();
        for (const auto& r : report.records)
            block.records.push_back(rate_record(r, !sink.csv()));
        return block;
    });
    return finish(sink, "rate", blocks);
}

int run_lnorm(const RunConfig& cfg, Sink& sink) {
    const double tol = cfg.tol_or(1e-7);
    auto blocks = run_over_primes(cfg.primes, cfg.jobs, [&](Scalar p) {
        const PrimeContext ctx(p);
        Block block;
        std::optional<TorusDescriptor> torus;
        try {
            torus = hecke_torus(ctx, cfg.a);
        } catch (const RamifiedPrime&) {
            block.notes.push_back("p=" + std::to_string(p) + " skipped: RamifiedPrime");
            return block;
        }
        PlaneVector xi{0, 0};
        bool have_xi = false;
        for (const auto& candidate : cfg.xi_list) {
            const PlaneVector reduced = reduce_mod_p(ctx, candidate);
            if (!reduced.is_zero() && !is_eigenvector(ctx, torus->a_mod_p(), reduced)) {
                xi = reduced;
                have_xi = true;
                break;
            }
        }
        if (!have_xi) {
            block.notes.push_back("p=" + std::to_string(p) +
                                  " skipped: no admissible frequency in the xi list");
            return block;
        }
        for (const int n : cfg.lnorm_exponents) {
            try {
                const LnormReport report = lnorm_compare(ctx, *torus, xi, n, tol);
                block.records.push_back(
                    Record{}
                        .add("p", p)
                        .add("N", n)
                        .add("operator_side", report.operator_side)
                        .add("sum_re", report.sum_side.real())
                        .add("sum_im", report.sum_side.imag())
                        .add("delta", std::abs(report.sum_side - report.operator_side))
                        .add("match", report.match)
                        .add("note", std::string("sum side = (p/|T|^2N) sum psi(half sum omega); "
                                                 "operator side is ground truth")));
                if (!report.match) ++block.violations;
            } catch (const TooLarge&) {
                block.notes.push_back("p=" + std::to_string(p) + " N=" + std::to_string(n) +
                                      " skipped: TooLarge");
            }
        }
        return block;
    });
    return finish(sink, "lnorm", blocks);
}

int run_sato_tate(const RunConfig& cfg, Sink& sink) {
    // One pooled histogram across the admissible primes.
    const LatticeVector xi = cfg.xi_list.empty() ? LatticeVector{1, 0} : cfg.xi_list.front();
    const SatoTateReport report = sato_tate_histogram(cfg.a, xi, cfg.primes, cfg.bins);
    std::size_t notes = 0;
    for (const auto& skip : report.skipped) {
        std::cerr << "sato-tate: p=" << skip.p << " skipped: " << skip.reason << "\n";
        ++notes;
    }

    if (sink.csv()) {
        sink.write_line("bin_left,bin_right,count,density");
        for (const auto& bin : report.bins)
            sink.write_line(fmt_double(bin.bin_left) + "," + fmt_double(bin.bin_right) + "," +
                            std::to_string(bin.count) + "," + fmt_double(bin.density));
        sink.write_line("# ks=" + fmt_double(report.ks_distance) +
                        " max_imag=" + fmt_double(report.max_imag) +
                        " max_abs=" + fmt_double(report.max_abs) +
                        " values=" + std::to_string(report.normalized_values.size()));
    } else {
        for (const auto& bin : report.bins)
            sink.write_record(Record{}
                                  .add("bin_left", bin.bin_left)
                                  .add("bin_right", bin.bin_right)
                                  .add("count", static_cast<long long>(bin.count))
                                  .add("density", bin.density));
        sink.write_record(Record{}
                              .add("ks", report.ks_distance)
                              .add("max_imag", report.max_imag)
                              .add("max_abs", report.max_abs)
                              .add("values",
                                   static_cast<long long>(report.normalized_values.size())));
    }
    sink.flush();

    // The [-2, 2] range is asserted; the KS number is diagnostic only.
    const bool pass = report.max_abs <= 2.0 + cfg.tol_or(1e-6);
    std::cerr << "sato-tate: " << (pass ? "pass" : "FAIL") << " ("
              << report.normalized_values.size() << " values, " << notes << " skipped, ks="
              << fmt_double(report.ks_distance) << " reported only, max_abs="
              << fmt_double(report.max_abs) << ")\n";
    return pass ? 0 : 1;
}

int run_split_sum(const RunConfig& cfg, Sink& sink) {
    const double tol = cfg.tol_or(1e-8);
    auto blocks = run_over_primes(cfg.primes, cfg.jobs, [&](Scalar p) {
        const PrimeContext ctx(p);
        Block block;
        std::optional<TorusDescriptor> torus;
        try {
            torus = hecke_torus(ctx, cfg.a);
        } catch (const RamifiedPrime&) {
            block.notes.push_back("p=" + std::to_string(p) + " skipped: RamifiedPrime");
            return block;
        }
        if (!torus->split()) {
            block.notes.push_back("p=" + std::to_string(p) + " skipped: InertTorus");
            return block;
        }
        const SL2Element s = split_diagonalizer(ctx, *torus);
        const SL2Element sinv = sl2_inverse(ctx, s);
        for (const auto& xi_lat : cfg.xi_list) {
            const PlaneVector xi = reduce_mod_p(ctx, xi_lat);
            if (xi.is_zero() || is_eigenvector(ctx, torus->a_mod_p(), xi)) {
                block.notes.push_back(
                    "p=" + std::to_string(p) + " xi=(" + std::to_string(xi_lat.l) + "," +
                    std::to_string(xi_lat.m) +
                    ") skipped: " + (xi.is_zero() ? "ZeroFrequency" : "EigenvectorInput"));
                continue;
            }
            const PlaneVector eta = apply(ctx, s, xi);
            for (int k = 0; k < torus->order(); ++k) {
                // One-dimensional sum with the transported character
                // chi~(a) = chi(S^{-1} diag(a, 1/a) S).
                cplx direct = 0.0;
                for (Scalar a = 2; a < p; ++a) {
                    const SL2Element ta{a, 0, 0, ctx.inv(a)};
                    const SL2Element back = sl2_mul(ctx, sl2_mul(ctx, sinv, ta), s);
                    const Scalar ratio = ctx.mul(ctx.add(a, 1), ctx.inv(ctx.sub(a, 1)));
                    direct += double(ctx.legendre(a)) *
                              ctx.psi(ctx.mul(ctx.mul(ctx.half(), ratio),
                                              ctx.mul(eta.lambda, eta.mu))) *
                              character_value(*torus, {k}, back);
                }
                const cplx op_side = hecke_sum(ctx, *torus, {k}, xi);
                const double delta = std::abs(direct - op_side);
                if (delta > tol) ++block.violations;
                block.records.push_back(Record{}
                                            .add("p", p)
                                            .add("chi", k)
                                            .add("xi0", xi_lat.l)
                                            .add("xi1", xi_lat.m)
                                            .add("operator_abs", std::abs(op_side))
                                            .add("delta", delta)
                                            .add("bound", 2.0 * std::sqrt(double(p)))
                                            .add("pass", delta <= tol));
            }
        }
        return block;
    });
    return finish(sink, "split-sum", blocks);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification suites for the Weil representation of the quantized torus and "
                 "the 2*sqrt(p) Hecke-Wigner rate bound"};
    app.require_subcommand(1);

    struct SuiteSpec {
        std::string name;
        std::string help;
        std::string default_p;
        Scalar cap; // matrix suites stop at 199, sum-only suites at 499
        int (*runner)(const RunConfig&, Sink&);
    };
    const std::vector<SuiteSpec> suites = {
        {"egorov", "rho(B) pi(s(xi)) rho(B)^-1 = pi(s(B xi))", "5..13", 199, run_egorov},
        {"homomorphism", "rho(g1) rho(g2) = rho(g1 g2), no projective scalar", "5..7", 199,
         run_homomorphism},
        {"formulas", "closed forms of F on the torus and the open cell, Gauss lemma", "5..97",
         499, run_formulas},
        {"canonical", "intertwiner associativity, C*D = 1, canonical vs kernel rho", "5..13",
         199, run_canonical},
        {"spectrum", "projector identities and Hecke eigenspace dimensions", "7..17", 199,
         run_spectrum},
        {"rate", "the 2*sqrt(p) bound per (p, chi, xi)", "7..199", 499, run_rate},
        {"lnorm", "Tr((Av*Av)^N) against the zero-sum orbit tuple sum", "5..13", 199, run_lnorm},
        {"sato-tate", "normalized-sum histogram against the semicircle law", "401..499", 499,
         run_sato_tate},
        {"split-sum", "operator Hecke sum vs the 1-dimensional character sum", "7..31", 499,
         run_split_sum},
    };

    struct Raw {
        std::string p_spec;
        std::vector<std::string> xi;
        std::string a_spec = "2,1,1,1";
        std::string out;
        std::string format = "json-lines";
        double tol = -1.0;
        unsigned jobs = 0;
        std::size_t samples = 0;
        std::size_t bins = 41;
        std::vector<int> exponents;
    };
    std::map<std::string, Raw> raws;
    std::map<std::string, const SuiteSpec*> by_name;

    for (const auto& suite : suites) {
        auto* sub = app.add_subcommand(suite.name, suite.help);
        auto& raw = raws[suite.name];
        raw.p_spec = suite.default_p;
        by_name[suite.name] = &suite;
        sub->add_option("--p", raw.p_spec,
                        "prime, comma list, or range lo..hi (a range keeps primes only)");
        sub->add_option("--A", raw.a_spec, "integral matrix a,b,c,d with det 1");
        sub->add_option("--xi", raw.xi, "lattice frequency l,m (repeatable)");
        sub->add_option("--tol", raw.tol, "tolerance override");
        sub->add_option("--out", raw.out, "output file (default stdout)");
        sub->add_option("--format", raw.format, "json-lines or csv")
            ->check(CLI::IsMember({"json-lines", "csv"}));
        sub->add_option("--jobs", raw.jobs, "parallel workers (default QTORUS_JOBS or 1)");
        sub->add_option("--samples", raw.samples, "sample count for sampled sweeps");
        if (suite.name == "sato-tate") sub->add_option("--bins", raw.bins, "histogram bin count");
        if (suite.name == "lnorm")
            sub->add_option("--N", raw.exponents, "exponents (repeatable, default 1 2)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        app.exit(e);
        return 2;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    const SuiteSpec& suite = *by_name.at(name);
    const Raw& raw = raws.at(name);

    RunConfig cfg;
    std::string error;
    cfg.primes = parse_prime_spec(raw.p_spec, suite.cap, error);
    if (!error.empty() || cfg.primes.empty()) {
        std::cerr << "error: " << (error.empty() ? "no primes selected" : error) << "\n";
        return 2;
    }

    {
        long long a, b, c, d;
        if (std::sscanf(raw.a_spec.c_str(), "%lld,%lld,%lld,%lld", &a, &b, &c, &d) != 4) {
            std::cerr << "error: --A expects four comma-separated integers\n";
            return 2;
        }
        cfg.a = {a, b, c, d};
        if (cfg.a.det() != 1) {
            std::cerr << "error: A must have determinant 1\n";
            return 2;
        }
    }
    if (!raw.xi.empty()) {
        cfg.xi_list.clear();
        for (const auto& spec : raw.xi) {
            long long l, m;
            if (std::sscanf(spec.c_str(), "%lld,%lld", &l, &m) != 2) {
                std::cerr << "error: --xi expects l,m\n";
                return 2;
            }
            cfg.xi_list.push_back({l, m});
        }
    }
    cfg.tolerance = raw.tol;
    cfg.out_path = raw.out;
    cfg.csv = raw.format == "csv";
    cfg.samples = raw.samples;
    cfg.bins = raw.bins;
    if (!raw.exponents.empty()) cfg.lnorm_exponents = raw.exponents;
    for (const int n : cfg.lnorm_exponents)
        if (n < 1 || n > 3) {
            std::cerr << "error: --N must be 1, 2 or 3\n";
            return 2;
        }
    if (raw.jobs > 0) {
        cfg.jobs = raw.jobs;
    } else if (const char* env = std::getenv("QTORUS_JOBS")) {
        cfg.jobs = static_cast<unsigned>(std::max(1, std::atoi(env)));
    } else {
        cfg.jobs = 1;
    }

    try {
        Sink sink(cfg.out_path, cfg.csv);
        return suite.runner(cfg, sink);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
