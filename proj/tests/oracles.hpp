// Test-only oracles, kept independent of the library's computation paths.
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qpd/matrix.hpp"

namespace oracle {

// phi by brute-force gcd count
inline std::int64_t brute_phi(std::int64_t k) {
    auto gcd = [](std::int64_t a, std::int64_t b) {
        while (b) { std::int64_t t = a % b; a = b; b = t; }
        return a;
    };
    std::int64_t count = 0;
    for (std::int64_t l = 1; l <= k; ++l)
        if (gcd(l, k) == 1) ++count;
    return count;
}

// smallest x in [0, prod moduli) satisfying all congruences, by search
inline std::int64_t brute_crt(const std::vector<std::int64_t>& residues,
                              const std::vector<std::int64_t>& moduli) {
    std::int64_t n = 1;
    for (auto m : moduli) n *= m;
    for (std::int64_t x = 0; x < n; ++x) {
        bool ok = true;
        for (std::size_t i = 0; i < moduli.size(); ++i)
            if (x % moduli[i] != residues[i]) { ok = false; break; }
        if (ok) return x;
    }
    return -1;
}

// matrix power by repeated multiplication (k >= 0)
inline qpd::ComplexMatrix matpow(const qpd::ComplexMatrix& a, std::int64_t k) {
    qpd::ComplexMatrix acc = qpd::ComplexMatrix::Identity(a.rows(), a.cols());
    for (std::int64_t i = 0; i < k; ++i) acc = acc * a;
    return acc;
}

// scalar power by repeated multiplication, negative exponents via conjugate
// (|z| = 1 assumed)
inline qpd::Complex unit_pow(qpd::Complex z, std::int64_t k) {
    qpd::Complex acc{1.0, 0.0};
    qpd::Complex base = k < 0 ? std::conj(z) : z;
    std::int64_t reps = k < 0 ? -k : k;
    for (std::int64_t i = 0; i < reps; ++i) acc *= base;
    return acc;
}

// Tr(A^dagger B) by explicit double loop
inline qpd::Complex trace_pair(const qpd::ComplexMatrix& a, const qpd::ComplexMatrix& b) {
    qpd::Complex acc{0.0, 0.0};
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) acc += std::conj(a(i, j)) * b(i, j);
    return acc;
}

// squared Frobenius distance by entry-wise summation
inline double brute_sq_distance(const qpd::ComplexMatrix& a, const qpd::ComplexMatrix& b) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) acc += std::norm(a(i, j) - b(i, j));
    return acc;
}

// reduced state over the first factor of (d1, d2) by direct index contraction
inline qpd::ComplexMatrix brute_trace_out_second(const qpd::ComplexMatrix& rho,
                                                 std::int64_t d1, std::int64_t d2) {
    qpd::ComplexMatrix out = qpd::ComplexMatrix::Zero(d1, d1);
    for (std::int64_t a = 0; a < d1; ++a)
        for (std::int64_t c = 0; c < d1; ++c)
            for (std::int64_t b = 0; b < d2; ++b) out(a, c) += rho(a * d2 + b, c * d2 + b);
    return out;
}

}  // namespace oracle
