#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace qpd {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

// Kronecker product, leftmost factor slowest index: entry
// ((a*db+b),(c*db+d)) of kron(A,B) equals A(a,c)*B(b,d).
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Entrywise max-modulus norm.
inline double max_abs(const ComplexMatrix& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline ComplexMatrix identity(std::int64_t n) {
    return ComplexMatrix::Identity(n, n);
}

}  // namespace qpd
