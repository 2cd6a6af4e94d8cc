#include "qpd/weyl.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qpd {

namespace {

std::int64_t euclid_mod(std::int64_t x, std::int64_t m) {
    std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

// exp(2*pi*i*k/n) with the argument reduced exactly as an integer first.
Complex root_of_unity(std::int64_t k, std::int64_t n) {
    double angle = 2.0 * std::numbers::pi * static_cast<double>(euclid_mod(k, n)) /
                   static_cast<double>(n);
    return Complex{std::cos(angle), std::sin(angle)};
}

std::int64_t mul_mod_i64(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>(
        (static_cast<__int128>(euclid_mod(a, m)) * static_cast<__int128>(euclid_mod(b, m))) % m);
}

}  // namespace

PhaseConvention default_convention(std::int64_t n) {
    return n % 2 == 1 ? PhaseConvention::ModInverse : PhaseConvention::HalfAngle;
}

ComplexMatrix clock(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("clock: dimension must be positive");
    ComplexMatrix g = ComplexMatrix::Zero(n, n);
    for (std::int64_t k = 0; k < n; ++k) g(k, k) = root_of_unity(k, n);
    return g;
}

ComplexMatrix shift(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("shift: dimension must be positive");
    ComplexMatrix h = ComplexMatrix::Zero(n, n);
    for (std::int64_t k = 0; k < n; ++k) h(k, (k + 1) % n) = 1.0;
    return h;
}

WeylBasis::WeylBasis(std::int64_t n) : WeylBasis(n, default_convention(n)) {}

WeylBasis::WeylBasis(std::int64_t n, PhaseConvention convention)
    : n_(n), convention_(convention) {
    if (n < 1) throw std::invalid_argument("WeylBasis: dimension must be positive");
    if (convention == PhaseConvention::ModInverse && n % 2 == 0)
        throw std::invalid_argument("WeylBasis: mod-inverse convention requires odd dimension");
    omega_ = root_of_unity(1, n);
    if (convention == PhaseConvention::HalfAngle) {
        double angle = std::numbers::pi / static_cast<double>(n);
        tau_ = Complex{std::cos(angle), std::sin(angle)};
    } else {
        tau_ = root_of_unity((n + 1) / 2, n);
    }
    g_ = clock(n);
    h_ = shift(n);
}

Complex WeylBasis::phase(std::int64_t m1, std::int64_t m2) const {
    if (convention_ == PhaseConvention::HalfAngle) {
        // tau has order 2N: reduce the exponent m1*m2 mod 2N exactly.
        return root_of_unity(mul_mod_i64(m1, m2, 2 * n_), 2 * n_);
    }
    std::int64_t inv2 = (n_ + 1) / 2;
    return root_of_unity(mul_mod_i64(mul_mod_i64(m1, m2, n_), inv2, n_), n_);
}

ComplexMatrix WeylBasis::element(std::int64_t m1, std::int64_t m2) const {
    // (g^{m1} h^{m2})(r, c) = omega^{r*m1} [c == r + m2 mod N]
    const Complex p = phase(m1, m2);
    const std::int64_t a = euclid_mod(m1, n_);
    const std::int64_t b = euclid_mod(m2, n_);
    ComplexMatrix j = ComplexMatrix::Zero(n_, n_);
    for (std::int64_t r = 0; r < n_; ++r)
        j(r, (r + b) % n_) = p * root_of_unity(r * a, n_);
    return j;
}

WeylCoefficients expand(const ComplexMatrix& a, const WeylBasis& basis) {
    const std::int64_t n = basis.dim();
    if (a.rows() != n || a.cols() != n)
        throw std::invalid_argument("expand: matrix dimension does not match basis");
    WeylCoefficients c;
    c.n = n;
    c.table.resize(n * n);
    for (std::int64_t m1 = 0; m1 < n; ++m1) {
        for (std::int64_t m2 = 0; m2 < n; ++m2) {
            // Tr(J_m^dagger A) contracts the single nonzero per row of J_m.
            const Complex p = basis.phase(m1, m2);
            Complex acc{0.0, 0.0};
            for (std::int64_t r = 0; r < n; ++r)
                acc += std::conj(p * root_of_unity(r * m1, n)) * a(r, (r + m2) % n);
            c.at(m1, m2) = acc;
        }
    }
    return c;
}

WeylCoefficients expand_unconjugated(const ComplexMatrix& a, const WeylBasis& basis) {
    const std::int64_t n = basis.dim();
    if (a.rows() != n || a.cols() != n)
        throw std::invalid_argument("expand_unconjugated: matrix dimension does not match basis");
    WeylCoefficients c;
    c.n = n;
    c.table.resize(n * n);
    for (std::int64_t m1 = 0; m1 < n; ++m1) {
        for (std::int64_t m2 = 0; m2 < n; ++m2) {
            // Tr(J_m A) = sum_r J_m(r, r+m2) A(r+m2, r)
            const Complex p = basis.phase(m1, m2);
            Complex acc{0.0, 0.0};
            for (std::int64_t r = 0; r < n; ++r)
                acc += p * root_of_unity(r * m1, n) * a((r + m2) % n, r);
            c.at(m1, m2) = acc;
        }
    }
    return c;
}

ComplexMatrix reconstruct(const WeylCoefficients& c, const WeylBasis& basis) {
    const std::int64_t n = basis.dim();
    if (c.n != n || static_cast<std::int64_t>(c.table.size()) != n * n)
        throw std::invalid_argument("reconstruct: coefficient table does not match basis");
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    for (std::int64_t m1 = 0; m1 < n; ++m1) {
        for (std::int64_t m2 = 0; m2 < n; ++m2) {
            const Complex w = c.at(m1, m2) * basis.phase(m1, m2);
            for (std::int64_t r = 0; r < n; ++r)
                a(r, (r + m2) % n) += w * root_of_unity(r * m1, n);
        }
    }
    return a / static_cast<double>(n);
}

}  // namespace qpd
