#include "qpd/cli.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "qpd/correlation.hpp"
#include "qpd/density.hpp"
#include "qpd/json_io.hpp"
#include "qpd/numtheory.hpp"
#include "qpd/primedec.hpp"
#include "qpd/weyl.hpp"

namespace qpd {

namespace {

void diagnostic(const CliOptions& opts, const std::string& code, const std::string& message) {
    if (opts.diagnostics_json) {
        Json d;
        d["severity"] = "error";
        d["code"] = code;
        d["message"] = message;
        std::cerr << d.dump() << '\n';
    } else {
        std::cerr << "error [" << code << "]: " << message << '\n';
    }
}

InputDocument load_input(const CliOptions& opts) {
    std::ifstream in(opts.input_path);
    if (!in) throw ParseError("cannot read input file: " + opts.input_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_input(buf.str());
}

int write_output(const CliOptions& opts, const std::string& text) {
    if (opts.output_path.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream out(opts.output_path, std::ios::binary);
    if (!out) {
        diagnostic(opts, "io", "cannot write output file: " + opts.output_path);
        return kExitValidation;
    }
    out << text;
    return kExitOk;
}

Json validation_json(const DensityDiagnostics& d, double tol) {
    Json v;
    v["hermiticity_residual"] = d.hermiticity_residual;
    v["trace_residual"] = d.trace_residual;
    v["min_eigenvalue"] = d.min_eigenvalue;
    v["tol"] = tol;
    v["valid"] = d.violations(tol).empty();
    return v;
}

// Returns false (after emitting diagnostics) when the matrix is not a state.
bool check_density(const CliOptions& opts, const InputDocument& in, DensityDiagnostics& diag_out) {
    diag_out = density_diagnostics(in.matrix);
    auto violations = diag_out.violations(opts.tol);
    for (const auto& v : violations) {
        std::ostringstream os;
        os << v.name() << ": measured " << v.measured << " against tolerance " << opts.tol;
        diagnostic(opts, "validation", os.str());
    }
    return violations.empty();
}

Json factorization_json(const CoprimeFactorization& f) {
    Json out;
    out["n"] = f.n;
    Json factors = Json::array();
    for (const auto& fac : f.factors) {
        Json e;
        e["prime"] = fac.prime;
        e["exponent"] = fac.exponent;
        e["modulus"] = fac.modulus;
        e["cofactor"] = fac.cofactor;
        e["crt_inverse"] = fac.crt_inverse;
        factors.push_back(std::move(e));
    }
    out["factors"] = std::move(factors);
    return out;
}

std::vector<std::int64_t> resolved_factor_order(const CliOptions& opts, const InputDocument& in) {
    if (!opts.factor_order.empty()) return opts.factor_order;
    if (in.factor_order) return *in.factor_order;
    return {};
}

std::vector<std::int64_t> resolved_dims(const CliOptions& opts, const InputDocument& in) {
    if (!opts.dims.empty()) return opts.dims;
    if (in.dims) return *in.dims;
    return {};
}

}  // namespace

int cmd_decompose(const CliOptions& opts) {
    InputDocument in;
    try {
        in = load_input(opts);
    } catch (const ParseError& e) {
        diagnostic(opts, "parse", e.what());
        return kExitParse;
    }

    DensityDiagnostics ddiag;
    if (!check_density(opts, in, ddiag)) return kExitValidation;
    DensityMatrix rho = DensityMatrix::unchecked(in.matrix, opts.tol);

    CoprimeFactorization f;
    DecompositionResult res;
    try {
        f = factor_coprime(in.n);
        auto order = resolved_factor_order(opts, in);
        if (!order.empty()) f = reorder(f, order);
        if (opts.convention == "auto") {
            res = apply_pd(rho, f);
        } else if (opts.convention == "half-angle") {
            res = apply_pd(rho, f, PhaseConvention::HalfAngle);
        } else if (opts.convention == "mod-inverse") {
            res = apply_pd(rho, f, PhaseConvention::ModInverse);
        } else {
            throw std::invalid_argument("unknown convention: " + opts.convention);
        }
    } catch (const std::invalid_argument& e) {
        diagnostic(opts, "input", e.what());
        return kExitValidation;
    }

    Json report;
    report["command"] = "decompose";
    report["n"] = in.n;
    report["validation"] = validation_json(ddiag, opts.tol);
    report["factorization"] = factorization_json(f);
    if (f.count() == 1)
        report["note"] = "trivial decomposition: n has a single coprime factor";
    report["permutation"] = res.perm;
    report["pd_matrix"] = matrix_to_json(res.pd_rho);

    if (res.coeff) {
        Json entries = Json::array();
        const auto& t = *res.coeff;
        for (std::size_t flat = 0; flat < t.values.size(); ++flat) {
            if (std::abs(t.values[flat]) <= opts.threshold) continue;
            Json e;
            Json idx = Json::array();
            for (const auto& pair : t.unflatten(static_cast<std::int64_t>(flat)))
                idx.push_back(Json::array({pair[0], pair[1]}));
            e["index"] = std::move(idx);
            e["value"] = complex_to_json(t.values[flat]);
            entries.push_back(std::move(e));
        }
        report["coefficient_tensor"] = std::move(entries);
    } else {
        report["coefficient_tensor"] = nullptr;
    }

    Json gl;
    if (res.grouplike) {
        const auto& g = *res.grouplike;
        gl["detected"] = g.grouplike;
        gl["unfolding_second_singulars"] = g.unfolding_second_singulars;
        if (g.grouplike) {
            gl["residual"] = g.residual;
            Json factors = Json::array();
            for (const auto& m : g.factors) factors.push_back(matrix_to_json(m));
            gl["factors"] = std::move(factors);
        } else {
            gl["residual"] = nullptr;
            gl["factors"] = nullptr;
        }
    } else {
        gl = nullptr;
    }
    report["grouplike"] = std::move(gl);

    Json inv;
    inv["trace_invariance_residual"] = trace_invariance_check(rho, f);
    inv["permutation_unitarity_residual"] =
        max_abs(res.V * res.V.adjoint() - identity(f.n));
    report["invariants"] = std::move(inv);

    return write_output(opts, report.dump(2) + "\n");
}

namespace {

// conjugation that swaps tensor slots 1 and 2 of (d1, d2, d3)
std::vector<std::int64_t> swap12_perm(std::int64_t d1, std::int64_t d2, std::int64_t d3) {
    std::vector<std::int64_t> perm(d1 * d2 * d3);
    for (std::int64_t i1 = 0; i1 < d1; ++i1)
        for (std::int64_t i2 = 0; i2 < d2; ++i2)
            for (std::int64_t i3 = 0; i3 < d3; ++i3)
                perm[(i1 * d2 + i2) * d3 + i3] = (i2 * d1 + i1) * d3 + i3;
    return perm;
}

}  // namespace

int cmd_correlate(const CliOptions& opts) {
    InputDocument in;
    try {
        in = load_input(opts);
    } catch (const ParseError& e) {
        diagnostic(opts, "parse", e.what());
        return kExitParse;
    }

    DensityDiagnostics ddiag;
    if (!check_density(opts, in, ddiag)) return kExitValidation;
    DensityMatrix rho = DensityMatrix::unchecked(in.matrix, opts.tol);

    auto dims = resolved_dims(opts, in);
    if (dims.size() != 2 && dims.size() != 3) {
        diagnostic(opts, "input", "correlate requires --dims d1,d2 or --dims d1,d2,d3");
        return kExitValidation;
    }
    std::int64_t prod = 1;
    for (auto d : dims) {
        if (d < 1) {
            diagnostic(opts, "input", "dims entries must be positive");
            return kExitValidation;
        }
        prod *= d;
    }
    if (prod != in.n) {
        std::ostringstream os;
        os << "dims product " << prod << " does not equal n = " << in.n;
        diagnostic(opts, "input", os.str());
        return kExitValidation;
    }

    Json report;
    report["command"] = "correlate";
    report["n"] = in.n;
    report["dims"] = dims;
    report["validation"] = validation_json(ddiag, opts.tol);

    if (dims.size() == 2) {
        auto rep = correlation_index(rho, dims[0], dims[1]);
        Json idx;
        idx["E_direct"] = rep.e_direct;
        idx["E_lambda"] = rep.e_lambda;
        idx["E_reflected"] = complex_to_json(rep.e_reflected);
        idx["channel_gap"] = std::abs(rep.e_direct - rep.e_lambda);
        report["indices"] = std::move(idx);
    } else {
        auto multi = multi_correlation_index(rho, {dims[0], dims[1], dims[2]});
        auto rep_1_23 = correlation_index(rho, dims[0], dims[1] * dims[2]);
        auto rep_12_3 = correlation_index(rho, dims[0] * dims[1], dims[2]);
        DensityMatrix swapped = DensityMatrix::unchecked(
            permute_conjugate(swap12_perm(dims[0], dims[1], dims[2]), rho.matrix()),
            rho.tol());
        auto rep_2_13 = correlation_index(swapped, dims[1], dims[0] * dims[2]);

        Json idx;
        idx["E_123"] = Json{{"direct", multi.at("123")}};
        idx["E_1(23)"] = Json{{"direct", multi.at("1(23)")}, {"lambda", rep_1_23.e_lambda}};
        idx["E_2(13)"] = Json{{"direct", multi.at("2(13)")}, {"lambda", rep_2_13.e_lambda}};
        idx["E_3(12)"] = Json{{"direct", multi.at("3(12)")}, {"lambda", rep_12_3.e_lambda}};
        report["indices"] = std::move(idx);
    }
    return write_output(opts, report.dump(2) + "\n");
}

namespace {

struct SuiteResult {
    std::string name;
    bool ran = false;
    std::string skip_reason;
    double residual = 0.0;
    double threshold = 0.0;
    bool pass = true;
};

std::string format_suite(const SuiteResult& s) {
    char buf[160];
    if (!s.ran) {
        std::snprintf(buf, sizeof buf, "%-24s skipped (%s)", s.name.c_str(),
                      s.skip_reason.c_str());
    } else {
        std::snprintf(buf, sizeof buf, "%-24s max_residual=%.3e  %s", s.name.c_str(),
                      s.residual, s.pass ? "PASS" : "FAIL");
    }
    return buf;
}

std::vector<std::array<std::int64_t, 2>> sampled_indices(std::int64_t n, std::size_t count,
                                                         std::mt19937_64& rng) {
    std::vector<std::array<std::int64_t, 2>> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back({static_cast<std::int64_t>(rng() % n), static_cast<std::int64_t>(rng() % n)});
    return out;
}

SuiteResult run_commutator(std::int64_t n, std::uint64_t seed) {
    SuiteResult s;
    s.name = "commutator";
    s.ran = true;
    s.threshold = 1e-10;
    WeylBasis basis(n, PhaseConvention::HalfAngle);
    std::vector<std::array<std::int64_t, 2>> idx;
    if (n <= 6) {
        for (std::int64_t a = 0; a < n; ++a)
            for (std::int64_t b = 0; b < n; ++b) idx.push_back({a, b});
    } else {
        std::mt19937_64 rng(seed);
        idx = sampled_indices(n, 20, rng);
    }
    for (const auto& m : idx) {
        ComplexMatrix jm = basis.element(m[0], m[1]);
        for (const auto& k : idx) {
            ComplexMatrix jk = basis.element(k[0], k[1]);
            ComplexMatrix jmk = basis.element(m[0] + k[0], m[1] + k[1]);
            double cross = std::numbers::pi *
                           static_cast<double>(m[0] * k[1] - m[1] * k[0]) /
                           static_cast<double>(n);
            ComplexMatrix resid =
                jm * jk - jk * jm + Complex{0.0, 2.0 * std::sin(cross)} * jmk;
            s.residual = std::max(s.residual, max_abs(resid));
        }
    }
    s.pass = s.residual <= s.threshold;
    return s;
}

SuiteResult run_orthonormality(std::int64_t n, std::uint64_t seed) {
    SuiteResult s;
    s.name = "orthonormality";
    s.ran = true;
    s.threshold = 1e-10;
    std::vector<WeylBasis> bases;
    bases.emplace_back(n, PhaseConvention::HalfAngle);
    if (n % 2 == 1) bases.emplace_back(n, PhaseConvention::ModInverse);
    std::vector<std::array<std::int64_t, 2>> idx;
    if (n <= 8) {
        for (std::int64_t a = 0; a < n; ++a)
            for (std::int64_t b = 0; b < n; ++b) idx.push_back({a, b});
    } else {
        std::mt19937_64 rng(seed + 1);
        idx = sampled_indices(n, 20, rng);
    }
    for (const auto& basis : bases) {
        for (const auto& m : idx) {
            ComplexMatrix jm = basis.element(m[0], m[1]);
            for (const auto& k : idx) {
                ComplexMatrix jk = basis.element(k[0], k[1]);
                Complex tr = jm.conjugate().cwiseProduct(jk).sum();
                double expect = (m == k) ? static_cast<double>(n) : 0.0;
                s.residual = std::max(s.residual, std::abs(tr - Complex{expect, 0.0}));
            }
        }
    }
    s.pass = s.residual <= s.threshold;
    return s;
}

SuiteResult run_diagram(std::int64_t n, std::uint64_t seed) {
    SuiteResult s;
    s.name = "diagram";
    s.ran = true;
    s.threshold = 1e-10;
    auto f = factor_coprime(n);
    WeylBasis basis(n);
    auto gens = residue_generators(f);
    std::vector<std::array<std::int64_t, 2>> idx;
    if (n <= 16) {
        for (std::int64_t a = 0; a < n; ++a)
            for (std::int64_t b = 0; b < n; ++b) idx.push_back({a, b});
    } else {
        std::mt19937_64 rng(seed + 2);
        idx = sampled_indices(n, 200, rng);
    }
    for (const auto& m : idx) {
        auto img = weyl_image(m[0], m[1], basis, gens);
        double r = img.residual;
        r = std::max(r, std::abs(std::abs(img.phase) - 1.0));
        if (n % 2 == 1) r = std::max(r, std::abs(img.phase - Complex{1.0, 0.0}));
        s.residual = std::max(s.residual, r);
    }
    s.pass = s.residual <= s.threshold;
    return s;
}

SuiteResult run_round_trip(std::int64_t n) {
    SuiteResult s;
    s.name = "round_trip";
    s.ran = true;
    s.threshold = 0.5;
    auto f = factor_coprime(n);
    for (std::int64_t x = 0; x < n; ++x) {
        std::int64_t back = crt_reconstruct(delta(x, f), f);
        s.residual = std::max(s.residual, static_cast<double>(std::llabs(back - x)));
    }
    for (std::size_t i = 0; i < f.count(); ++i) {
        const auto& fac = f.factors[i];
        if (fac.modulus == 1) continue;
        std::int64_t y = mod_pow(fac.cofactor, euler_phi(fac.modulus) - 1, fac.modulus);
        s.residual = std::max(s.residual, static_cast<double>(std::llabs(y - fac.crt_inverse)));
    }
    s.pass = s.residual <= s.threshold;
    return s;
}

SuiteResult run_coassociativity(std::int64_t n, std::uint64_t seed, std::int64_t trials) {
    SuiteResult s;
    s.name = "coassociativity";
    s.threshold = 1e-12;
    auto f = factor_coprime(n);
    if (f.count() < 3) {
        s.skip_reason = "fewer than 3 coprime factors";
        return s;
    }
    s.ran = true;
    std::int64_t n1 = f.factors[0].modulus, n2 = f.factors[1].modulus;
    std::int64_t n3 = n / (n1 * n2);
    for (std::int64_t k = 0; k < trials; ++k) {
        auto rho = random_density(n, n, seed + static_cast<std::uint64_t>(k));
        s.residual = std::max(s.residual, coassociativity_check(rho, n1, n2, n3));
    }
    s.pass = s.residual <= s.threshold;
    return s;
}

SuiteResult run_correlation_equivalence(std::int64_t n, std::uint64_t seed,
                                        std::int64_t trials) {
    SuiteResult s;
    s.name = "correlation_equivalence";
    s.threshold = 1e-9;
    auto f = factor_coprime(n);
    if (f.count() < 2) {
        s.skip_reason = "fewer than 2 coprime factors";
        return s;
    }
    s.ran = true;
    std::int64_t n1 = f.factors[0].modulus;
    std::int64_t n2 = n / n1;
    for (std::int64_t k = 0; k < trials; ++k) {
        auto rho = random_density(n, n, seed + 1000 + static_cast<std::uint64_t>(k));
        auto rep = correlation_index(rho, n1, n2);
        s.residual = std::max(s.residual, std::abs(rep.e_direct - rep.e_lambda));
    }
    s.pass = s.residual <= s.threshold;
    return s;
}

}  // namespace

int cmd_check(const CliOptions& opts) {
    if (opts.check_n < 2) {
        diagnostic(opts, "input", "check requires --n N with N >= 2");
        return kExitValidation;
    }
    const std::int64_t n = opts.check_n;
    std::vector<SuiteResult> suites;
    suites.push_back(run_commutator(n, opts.seed));
    suites.push_back(run_orthonormality(n, opts.seed));
    suites.push_back(run_diagram(n, opts.seed));
    suites.push_back(run_round_trip(n));
    suites.push_back(run_coassociativity(n, opts.seed, opts.trials));
    suites.push_back(run_correlation_equivalence(n, opts.seed, opts.trials));

    bool all_pass = true;
    std::ostringstream out;
    out << "check n=" << n << " seed=" << opts.seed << " trials=" << opts.trials << "\n";
    for (const auto& s : suites) {
        out << format_suite(s) << "\n";
        if (s.ran && !s.pass) all_pass = false;
    }
    out << "overall " << (all_pass ? "PASS" : "FAIL") << "\n";
    int rc = write_output(opts, out.str());
    if (rc != kExitOk) return rc;
    return all_pass ? kExitOk : 1;
}

}  // namespace qpd
