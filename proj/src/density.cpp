#include "qpd/density.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

namespace qpd {

namespace {

// 53-bit uniform in [0, 1) from one raw draw.
double uniform53(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Standard complex Gaussian (re, im ~ N(0,1)) via Box-Muller; two raw draws.
Complex gaussian(std::mt19937_64& rng) {
    double u1 = 1.0 - uniform53(rng);  // (0, 1]
    double u2 = uniform53(rng);
    double r = std::sqrt(-2.0 * std::log(u1));
    double t = 2.0 * std::numbers::pi * u2;
    return Complex{r * std::cos(t), r * std::sin(t)};
}

ComplexMatrix gaussian_matrix(std::int64_t rows, std::int64_t cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    ComplexMatrix g(rows, cols);
    for (std::int64_t i = 0; i < rows; ++i)
        for (std::int64_t j = 0; j < cols; ++j) g(i, j) = gaussian(rng);
    return g;
}

}  // namespace

std::string Violation::name() const {
    switch (kind) {
        case Kind::NotHermitian: return "NotHermitian";
        case Kind::TraceNotOne: return "TraceNotOne";
        case Kind::NotPSD: return "NotPSD";
    }
    return "";
}

ValidationError::ValidationError(std::vector<Violation> v, const std::string& what)
    : std::runtime_error(what), violations_(std::move(v)) {}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix mat, double tol) {
    return DensityMatrix(std::move(mat), tol);
}

DensityDiagnostics density_diagnostics(const ComplexMatrix& mat) {
    DensityDiagnostics d{};
    d.hermiticity_residual = max_abs(mat - mat.adjoint());
    d.trace_residual = std::abs(mat.trace() - Complex{1.0, 0.0});
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
        ComplexMatrix(0.5 * (mat + mat.adjoint())), Eigen::EigenvaluesOnly);
    d.min_eigenvalue = es.eigenvalues().minCoeff();
    return d;
}

std::vector<Violation> DensityDiagnostics::violations(double tol) const {
    std::vector<Violation> v;
    if (hermiticity_residual > tol)
        v.push_back({Violation::Kind::NotHermitian, hermiticity_residual});
    if (trace_residual > tol)
        v.push_back({Violation::Kind::TraceNotOne, trace_residual});
    if (min_eigenvalue < -tol)
        v.push_back({Violation::Kind::NotPSD, min_eigenvalue});
    return v;
}

DensityMatrix validate(const ComplexMatrix& mat, double tol) {
    if (mat.rows() != mat.cols())
        throw std::invalid_argument("validate: matrix must be square");
    auto diag = density_diagnostics(mat);
    auto violations = diag.violations(tol);
    if (!violations.empty()) {
        std::ostringstream os;
        os << "density validation failed:";
        for (const auto& v : violations) os << ' ' << v.name() << '(' << v.measured << ')';
        throw ValidationError(std::move(violations), os.str());
    }
    return DensityMatrix::unchecked(mat, tol);
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::int64_t>& dims,
                            const std::vector<std::size_t>& keep) {
    const std::int64_t total =
        std::accumulate(dims.begin(), dims.end(), std::int64_t{1}, std::multiplies<>());
    if (total != rho.dim())
        throw std::invalid_argument("partial_trace: product of dims does not match dimension");
    if (keep.empty())
        throw std::invalid_argument("partial_trace: keep must name at least one factor");
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t k : keep) {
        if (k >= dims.size())
            throw std::invalid_argument("partial_trace: keep position out of range");
        if (kept[k])
            throw std::invalid_argument("partial_trace: duplicate keep position");
        kept[k] = true;
    }

    std::vector<std::size_t> kept_pos, traced_pos;
    for (std::size_t i = 0; i < dims.size(); ++i)
        (kept[i] ? kept_pos : traced_pos).push_back(i);

    std::int64_t kept_dim = 1, traced_dim = 1;
    for (auto i : kept_pos) kept_dim *= dims[i];
    for (auto i : traced_pos) traced_dim *= dims[i];

    // digit decode/encode with leftmost factor slowest
    auto full_index = [&](std::int64_t kept_ix, std::int64_t traced_ix) {
        std::vector<std::int64_t> digit(dims.size());
        for (auto it = kept_pos.rbegin(); it != kept_pos.rend(); ++it) {
            digit[*it] = kept_ix % dims[*it];
            kept_ix /= dims[*it];
        }
        for (auto it = traced_pos.rbegin(); it != traced_pos.rend(); ++it) {
            digit[*it] = traced_ix % dims[*it];
            traced_ix /= dims[*it];
        }
        std::int64_t ix = 0;
        for (std::size_t i = 0; i < dims.size(); ++i) ix = ix * dims[i] + digit[i];
        return ix;
    };

    ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
    for (std::int64_t i = 0; i < kept_dim; ++i)
        for (std::int64_t j = 0; j < kept_dim; ++j) {
            Complex acc{0.0, 0.0};
            for (std::int64_t t = 0; t < traced_dim; ++t)
                acc += rho.matrix()(full_index(i, t), full_index(j, t));
            out(i, j) = acc;
        }
    return DensityMatrix::unchecked(std::move(out), rho.tol());
}

DensityMatrix random_density(std::int64_t n, std::int64_t rank, std::uint64_t seed) {
    if (n < 1 || rank < 1 || rank > n)
        throw std::invalid_argument("random_density: need 1 <= rank <= n");
    ComplexMatrix g = gaussian_matrix(n, rank, seed);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return validate(rho);
}

DensityMatrix tensor(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    return DensityMatrix::unchecked(kron(rho1.matrix(), rho2.matrix()),
                                    std::max(rho1.tol(), rho2.tol()));
}

ComplexMatrix haar_unitary(std::int64_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("haar_unitary: dimension must be positive");
    ComplexMatrix g = gaussian_matrix(n, n, seed);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (std::int64_t k = 0; k < n; ++k) {
        Complex d = r(k, k);
        double m = std::abs(d);
        q.col(k) *= (m > 0 ? d / m : Complex{1.0, 0.0});
    }
    return q;
}

}  // namespace qpd
