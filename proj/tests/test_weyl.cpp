#include <doctest.h>

#include "qpd/weyl.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"

using namespace qpd;

namespace {

ComplexMatrix random_matrix(std::int64_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto u = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5; };
    ComplexMatrix m(n, n);
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = 0; j < n; ++j) m(i, j) = Complex{u(), u()};
    return m;
}

}  // namespace

TEST_SUITE_BEGIN("weyl");

TEST_CASE("clock") {
    ComplexMatrix g2 = clock(2);
    CHECK(max_abs(g2 - (ComplexMatrix(2, 2) << 1, 0, 0, -1).finished()) < 1e-15);
    CHECK(max_abs(clock(1) - ComplexMatrix::Ones(1, 1)) < 1e-15);

    ComplexMatrix g3 = clock(3);
    CHECK(std::abs(g3(1, 1) - std::polar(1.0, 2.0 * std::numbers::pi / 3.0)) < 1e-15);
    CHECK(std::abs(g3(2, 2) - std::polar(1.0, 4.0 * std::numbers::pi / 3.0)) < 1e-15);
    CHECK(std::abs(g3(0, 1)) == 0.0);
}

TEST_CASE("shift") {
    ComplexMatrix h2 = shift(2);
    CHECK(max_abs(h2 - (ComplexMatrix(2, 2) << 0, 1, 1, 0).finished()) == 0.0);

    // h e_1 = e_0
    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(3);
    e1(1) = 1.0;
    Eigen::VectorXcd he1 = shift(3) * e1;
    CHECK(std::abs(he1(0) - Complex{1.0, 0.0}) == 0.0);
    CHECK(std::abs(he1(1)) == 0.0);

    CHECK(max_abs(oracle::matpow(shift(5), 5) - identity(5)) == 0.0);
}

TEST_CASE("generator relations") {
    for (std::int64_t n = 1; n <= 8; ++n) {
        ComplexMatrix g = clock(n), h = shift(n);
        Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / static_cast<double>(n));
        CHECK(max_abs(omega * g * h - h * g) < 1e-12);
        CHECK(max_abs(oracle::matpow(g, n) - identity(n)) < 1e-12);
        CHECK(max_abs(oracle::matpow(h, n) - identity(n)) < 1e-12);
        CHECK(max_abs(g * g.adjoint() - identity(n)) < 1e-12);
        CHECK(max_abs(h * h.adjoint() - identity(n)) < 1e-12);
        CHECK(std::abs(oracle::unit_pow(omega, n) - Complex{1.0, 0.0}) < 1e-14);
    }
}

TEST_CASE("element frozen values") {
    WeylBasis b(2, PhaseConvention::HalfAngle);
    ComplexMatrix j00 = b.element(0, 0);
    CHECK(max_abs(j00 - identity(2)) < 1e-15);

    ComplexMatrix j11 = b.element(1, 1);
    ComplexMatrix expect(2, 2);
    expect << Complex{0, 0}, Complex{0, 1}, Complex{0, -1}, Complex{0, 0};
    CHECK(max_abs(j11 - expect) < 1e-15);

    // mod-inverse, N=3: J_(1,1) = omega^2 g h since (N+1)/2 = 2
    WeylBasis b3(3, PhaseConvention::ModInverse);
    Complex omega = b3.omega();
    ComplexMatrix expect3 = omega * omega * clock(3) * shift(3);
    CHECK(max_abs(b3.element(1, 1) - expect3) < 1e-14);
}

TEST_CASE("element matches the product formula at integer indices") {
    for (std::int64_t n = 1; n <= 6; ++n) {
        for (PhaseConvention conv : {PhaseConvention::HalfAngle, PhaseConvention::ModInverse}) {
            if (conv == PhaseConvention::ModInverse && n % 2 == 0) continue;
            WeylBasis b(n, conv);
            const std::vector<std::int64_t> firsts{-2, 0, 1, n - 1, n, n + 3};
            const std::vector<std::int64_t> seconds{-1, 0, 2, n - 1, 2 * n};
            for (std::int64_t m1 : firsts)
                for (std::int64_t m2 : seconds) {
                    Complex phase = oracle::unit_pow(b.tau(), m1 * m2);
                    std::int64_t a = ((m1 % n) + n) % n, c = ((m2 % n) + n) % n;
                    ComplexMatrix expect =
                        phase * oracle::matpow(b.g(), a) * oracle::matpow(b.h(), c);
                    CHECK(max_abs(b.element(m1, m2) - expect) < 1e-12);
                }
        }
    }
}

TEST_CASE("commutator identity, half-angle, exhaustive") {
    for (std::int64_t n : {2, 3, 4, 5, 6}) {
        WeylBasis b(n, PhaseConvention::HalfAngle);
        double worst = 0.0;
        for (std::int64_t m1 = 0; m1 < n; ++m1)
            for (std::int64_t m2 = 0; m2 < n; ++m2) {
                ComplexMatrix jm = b.element(m1, m2);
                for (std::int64_t k1 = 0; k1 < n; ++k1)
                    for (std::int64_t k2 = 0; k2 < n; ++k2) {
                        ComplexMatrix jk = b.element(k1, k2);
                        ComplexMatrix jsum = b.element(m1 + k1, m2 + k2);
                        double cross = std::numbers::pi *
                                       static_cast<double>(m1 * k2 - m2 * k1) /
                                       static_cast<double>(n);
                        worst = std::max(
                            worst, max_abs(jm * jk - jk * jm +
                                           Complex{0.0, 2.0 * std::sin(cross)} * jsum));
                    }
            }
        CHECK(worst <= 1e-10);
    }
}

TEST_CASE("HS orthonormality, both conventions") {
    for (std::int64_t n : {2, 3, 4, 5, 6}) {
        for (PhaseConvention conv : {PhaseConvention::HalfAngle, PhaseConvention::ModInverse}) {
            if (conv == PhaseConvention::ModInverse && n % 2 == 0) continue;
            WeylBasis b(n, conv);
            double worst = 0.0;
            for (std::int64_t m1 = 0; m1 < n; ++m1)
                for (std::int64_t m2 = 0; m2 < n; ++m2) {
                    ComplexMatrix jm = b.element(m1, m2);
                    for (std::int64_t k1 = 0; k1 < n; ++k1)
                        for (std::int64_t k2 = 0; k2 < n; ++k2) {
                            Complex tr = oracle::trace_pair(jm, b.element(k1, k2));
                            double expect =
                                (m1 == k1 && m2 == k2) ? static_cast<double>(n) : 0.0;
                            worst = std::max(worst, std::abs(tr - Complex{expect, 0.0}));
                        }
                }
            CHECK(worst <= 1e-10);
        }
    }
}

TEST_CASE("trace relation Tr(J_m J_n) = N delta_{m+n,0}") {
    // exact (signed) for odd N under mod-inverse; modulus-only for even N
    for (std::int64_t n : {3, 5}) {
        WeylBasis b(n, PhaseConvention::ModInverse);
        for (std::int64_t m1 = 0; m1 < n; ++m1)
            for (std::int64_t m2 = 0; m2 < n; ++m2)
                for (std::int64_t k1 = 0; k1 < n; ++k1)
                    for (std::int64_t k2 = 0; k2 < n; ++k2) {
                        Complex tr = (b.element(m1, m2) * b.element(k1, k2)).trace();
                        bool hit = (m1 + k1) % n == 0 && (m2 + k2) % n == 0;
                        CHECK(std::abs(tr - Complex{hit ? double(n) : 0.0, 0.0}) <= 1e-10);
                    }
    }
    for (std::int64_t n : {2, 4}) {
        WeylBasis b(n, PhaseConvention::HalfAngle);
        for (std::int64_t m1 = 0; m1 < n; ++m1)
            for (std::int64_t m2 = 0; m2 < n; ++m2)
                for (std::int64_t k1 = 0; k1 < n; ++k1)
                    for (std::int64_t k2 = 0; k2 < n; ++k2) {
                        Complex tr = (b.element(m1, m2) * b.element(k1, k2)).trace();
                        bool hit = (m1 + k1) % n == 0 && (m2 + k2) % n == 0;
                        CHECK(std::abs(std::abs(tr) - (hit ? double(n) : 0.0)) <= 1e-10);
                    }
    }
}

TEST_CASE("unitarity of elements") {
    for (std::int64_t n : {2, 3, 4, 5, 6}) {
        WeylBasis b(n);
        for (std::int64_t m1 = 0; m1 < n; ++m1)
            for (std::int64_t m2 = 0; m2 < n; ++m2) {
                ComplexMatrix j = b.element(m1, m2);
                CHECK(max_abs(j * j.adjoint() - identity(n)) <= 1e-12);
            }
    }
}

TEST_CASE("mod-inverse adjoint identity") {
    for (std::int64_t n : {3, 5, 7, 9, 15}) {
        WeylBasis b(n, PhaseConvention::ModInverse);
        for (std::int64_t m1 = 0; m1 < n; ++m1)
            for (std::int64_t m2 = 0; m2 < n; ++m2) {
                ComplexMatrix lhs = b.element(m1, m2).adjoint();
                ComplexMatrix rhs = b.element((n - m1) % n, (n - m2) % n);
                CHECK(max_abs(lhs - rhs) <= 1e-12);
            }
    }
}

TEST_CASE("expand frozen examples") {
    std::int64_t n = 4;
    WeylBasis b(n);
    auto c = expand(identity(n) / static_cast<double>(n), b);
    for (std::int64_t m1 = 0; m1 < n; ++m1)
        for (std::int64_t m2 = 0; m2 < n; ++m2) {
            Complex expect = (m1 == 0 && m2 == 0) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
            CHECK(std::abs(c.at(m1, m2) - expect) < 1e-12);
        }

    WeylBasis b5(5);
    auto c5 = expand(b5.element(1, 2), b5);
    for (std::int64_t m1 = 0; m1 < 5; ++m1)
        for (std::int64_t m2 = 0; m2 < 5; ++m2) {
            Complex expect = (m1 == 1 && m2 == 2) ? Complex{5.0, 0.0} : Complex{0.0, 0.0};
            CHECK(std::abs(c5.at(m1, m2) - expect) < 1e-10);
            // orthogonality oracle agrees
            CHECK(std::abs(oracle::trace_pair(b5.element(m1, m2), b5.element(1, 2)) - expect) <
                  1e-10);
        }

    WeylBasis b2(2);
    ComplexMatrix ket0 = ComplexMatrix::Zero(2, 2);
    ket0(0, 0) = 1.0;
    auto c2 = expand(ket0, b2);
    CHECK(std::abs(c2.at(0, 0) - Complex{1.0, 0.0}) < 1e-12);
    CHECK(std::abs(c2.at(1, 0) - Complex{1.0, 0.0}) < 1e-12);
    CHECK(std::abs(c2.at(0, 1)) < 1e-12);
    CHECK(std::abs(c2.at(1, 1)) < 1e-12);
}

TEST_CASE("reconstruct") {
    std::int64_t n = 3;
    WeylBasis b(n);
    WeylCoefficients c;
    c.n = n;
    c.table.assign(n * n, Complex{0.0, 0.0});
    c.at(0, 0) = 1.0;
    CHECK(max_abs(reconstruct(c, b) - identity(n) / 3.0) < 1e-14);

    c.table.assign(n * n, Complex{0.0, 0.0});
    CHECK(max_abs(reconstruct(c, b)) == 0.0);
}

TEST_CASE("expand/reconstruct round trip on random matrices") {
    for (std::int64_t n : {2, 3, 4, 5, 6, 7}) {
        for (PhaseConvention conv : {PhaseConvention::HalfAngle, PhaseConvention::ModInverse}) {
            if (conv == PhaseConvention::ModInverse && n % 2 == 0) continue;
            WeylBasis b(n, conv);
            ComplexMatrix a = random_matrix(n, 42 + static_cast<std::uint64_t>(n));
            CHECK(max_abs(reconstruct(expand(a, b), b) - a) <= 1e-10);
        }
    }
}

TEST_CASE("reality conditions for Hermitian matrices, odd N") {
    for (std::int64_t n : {3, 5, 7}) {
        WeylBasis b(n, PhaseConvention::ModInverse);
        ComplexMatrix a = random_matrix(n, 7 + static_cast<std::uint64_t>(n));
        a = ComplexMatrix(0.5 * (a + a.adjoint()));
        auto c = expand(a, b);
        for (std::int64_t m1 = 0; m1 < n; ++m1)
            for (std::int64_t m2 = 0; m2 < n; ++m2)
                CHECK(std::abs(std::conj(c.at(m1, m2)) -
                               c.at((n - m1) % n, (n - m2) % n)) <= 1e-10);
    }
}

TEST_CASE("expand_unconjugated relates to expand by index reflection, odd N") {
    std::int64_t n = 5;
    WeylBasis b(n, PhaseConvention::ModInverse);
    ComplexMatrix a = random_matrix(n, 99);
    auto c = expand(a, b);
    auto d = expand_unconjugated(a, b);
    // J_m = J_{-m}^dagger, so Tr(J_m A) = Tr(J_{-m}^dagger A)
    for (std::int64_t m1 = 0; m1 < n; ++m1)
        for (std::int64_t m2 = 0; m2 < n; ++m2)
            CHECK(std::abs(d.at(m1, m2) - c.at((n - m1) % n, (n - m2) % n)) <= 1e-10);
}

TEST_CASE("mod-inverse requires odd dimension") {
    CHECK_THROWS_AS(WeylBasis(4, PhaseConvention::ModInverse), std::invalid_argument);
}

TEST_SUITE_END();
