#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpd/matrix.hpp"

namespace qpd {

// One violated density-matrix invariant with the measured violation.
struct Violation {
    enum class Kind { NotHermitian, TraceNotOne, NotPSD };
    Kind kind;
    double measured;  // max |M - M^dagger|, |Tr M - 1|, or the smallest eigenvalue

    std::string name() const;
};

class ValidationError : public std::runtime_error {
public:
    ValidationError(std::vector<Violation> v, const std::string& what);
    const std::vector<Violation>& violations() const { return violations_; }

private:
    std::vector<Violation> violations_;
};

// Hermitian, unit-trace, positive-semidefinite matrix, validated on entry.
class DensityMatrix {
public:
    static constexpr double kDefaultTol = 1e-10;

    std::int64_t dim() const { return mat_.rows(); }
    const ComplexMatrix& matrix() const { return mat_; }
    double tol() const { return tol_; }

    // Wraps without re-checking; for results that are densities by
    // construction (permutation conjugates, partial traces, products).
    static DensityMatrix unchecked(ComplexMatrix mat, double tol = kDefaultTol);

private:
    DensityMatrix(ComplexMatrix mat, double tol) : mat_(std::move(mat)), tol_(tol) {}
    ComplexMatrix mat_;
    double tol_;
};

// Checks Hermiticity, unit trace and positive semidefiniteness; throws
// ValidationError listing every violated invariant with its magnitude.
DensityMatrix validate(const ComplexMatrix& mat, double tol = DensityMatrix::kDefaultTol);

// Measured invariants without throwing (used by validate and for reports).
struct DensityDiagnostics {
    double hermiticity_residual;
    double trace_residual;
    double min_eigenvalue;
    std::vector<Violation> violations(double tol) const;
};
DensityDiagnostics density_diagnostics(const ComplexMatrix& mat);

// Trace over the factors not in `keep`. `dims` are the tensor factor sizes,
// leftmost slowest; `keep` holds 0-based factor positions (any order,
// duplicates rejected); the kept factors stay in their original order.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::int64_t>& dims,
                            const std::vector<std::size_t>& keep);

// rho = G G^dagger / Tr(G G^dagger) with G an n x rank matrix of standard
// complex Gaussians. The stream is fixed: entries in row-major order, each
// from one Box-Muller pair over mt19937_64 53-bit uniforms, so a given seed
// reproduces the same matrix.
DensityMatrix random_density(std::int64_t n, std::int64_t rank, std::uint64_t seed);

// Kronecker product of states; factor 1 is the slow index.
DensityMatrix tensor(const DensityMatrix& rho1, const DensityMatrix& rho2);

// Haar-distributed unitary: QR of a seeded Gaussian matrix with the R
// diagonal phases absorbed into Q.
ComplexMatrix haar_unitary(std::int64_t n, std::uint64_t seed);

}  // namespace qpd
