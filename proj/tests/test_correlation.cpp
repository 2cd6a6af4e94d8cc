#include <doctest.h>

#include "qpd/correlation.hpp"

#include "qpd/primedec.hpp"
#include "oracles.hpp"

using namespace qpd;

namespace {

DensityMatrix bell_state() {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi(0) = 1.0 / std::sqrt(2.0);
    psi(3) = 1.0 / std::sqrt(2.0);
    return validate(psi * psi.adjoint());
}

DensityMatrix werner(double p) {
    ComplexMatrix m = p * bell_state().matrix() + (1.0 - p) * identity(4) / 4.0;
    return validate(m);
}

DensityMatrix ghz_state() {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(8);
    psi(0) = 1.0 / std::sqrt(2.0);
    psi(7) = 1.0 / std::sqrt(2.0);
    return validate(psi * psi.adjoint());
}

// exchange the two factors of a bipartite state
DensityMatrix swap_factors(const DensityMatrix& rho, std::int64_t d1, std::int64_t d2) {
    std::vector<std::int64_t> perm(d1 * d2);
    for (std::int64_t a = 0; a < d1; ++a)
        for (std::int64_t b = 0; b < d2; ++b) perm[a * d2 + b] = b * d1 + a;
    return DensityMatrix::unchecked(permute_conjugate(perm, rho.matrix()), rho.tol());
}

}  // namespace

TEST_SUITE_BEGIN("correlation");

TEST_CASE("hs_norm") {
    CHECK(hs_norm(identity(9)) == doctest::Approx(3.0));
    CHECK(hs_norm(ComplexMatrix::Zero(4, 4)) == 0.0);
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 1) = 1.0;
    CHECK(hs_norm(a) == 1.0);
}

TEST_CASE("product states carry no correlation") {
    auto rho = tensor(random_density(2, 2, 21), random_density(3, 3, 22));
    auto rep = correlation_index(rho, 2, 3);
    CHECK(rep.e_direct <= 1e-12);
    CHECK(rep.e_lambda <= 1e-12);
}

TEST_CASE("Bell state index is 3/4") {
    auto rho = bell_state();
    // hand oracle: Delta = rho - I/4, Tr(Delta^2) = 1 - 2/4 + 4/16 = 3/4
    ComplexMatrix delta = rho.matrix() - identity(4) / 4.0;
    double hand = (delta * delta).trace().real();
    CHECK(hand == doctest::Approx(0.75).epsilon(1e-12));

    auto rep = correlation_index(rho, 2, 2);
    CHECK(rep.e_direct == doctest::Approx(0.75).epsilon(1e-10));
    CHECK(std::abs(rep.e_direct - rep.e_lambda) <= 1e-9);
}

TEST_CASE("Werner family scales as 0.75 p^2") {
    for (double p : {0.0, 0.5, 1.0}) {
        auto rep = correlation_index(werner(p), 2, 2);
        CHECK(rep.e_direct == doctest::Approx(0.75 * p * p).epsilon(1e-10));
    }
}

TEST_CASE("lambda channel equals the direct channel") {
    struct Pair { std::int64_t n1, n2; };
    for (auto [n1, n2] : {Pair{2, 2}, Pair{2, 3}, Pair{3, 5}}) {
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            auto rho = random_density(n1 * n2, n1 * n2, 500 + seed);
            auto rep = correlation_index(rho, n1, n2);
            CHECK(std::abs(rep.e_direct - rep.e_lambda) <= 1e-9);
            CHECK(rep.e_direct >= 0.0);
        }
    }
}

TEST_CASE("reflected pairing matches for odd dimensions") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto rho = random_density(15, 15, 600 + seed);
        auto rep = correlation_index(rho, 3, 5);
        CHECK(std::abs(rep.e_reflected - Complex{rep.e_lambda, 0.0}) <= 1e-9);
    }
}

TEST_CASE("local unitary invariance") {
    struct Pair { std::int64_t n1, n2; };
    for (auto [n1, n2] : {Pair{2, 2}, Pair{2, 3}, Pair{3, 5}}) {
        auto rho = random_density(n1 * n2, n1 * n2, 43);
        double base = correlation_index(rho, n1, n2).e_direct;
        for (std::uint64_t t = 0; t < 5; ++t) {
            ComplexMatrix u = kron(haar_unitary(n1, 700 + t), haar_unitary(n2, 800 + t));
            auto rotated = DensityMatrix::unchecked(u * rho.matrix() * u.adjoint());
            CHECK(std::abs(correlation_index(rotated, n1, n2).e_direct - base) <= 1e-9);
        }
    }
}

TEST_CASE("lambda trace form is invariant under conjugation of Lambda") {
    // Tr((U^dagger L U)(U^dagger L^dagger U)) = Tr(L L^dagger)
    auto rho = random_density(6, 6, 45);
    auto rep = correlation_index(rho, 2, 3);
    ComplexMatrix l = rep.lambda;
    ComplexMatrix u = haar_unitary(l.rows(), 46);
    ComplexMatrix lu = u.adjoint() * l;
    // Lambda is rectangular; conjugate the square Gram form instead
    CHECK(std::abs((lu * lu.adjoint()).trace().real() - (l * l.adjoint()).trace().real()) <=
          1e-9);
}

TEST_CASE("zero characterization") {
    auto prod = tensor(random_density(2, 2, 47), random_density(3, 3, 48));
    auto rep = correlation_index(prod, 2, 3);
    auto r1 = partial_trace(prod, {2, 3}, {0});
    auto r2 = partial_trace(prod, {2, 3}, {1});
    double gap = max_abs(prod.matrix() - kron(r1.matrix(), r2.matrix()));
    CHECK(rep.e_direct <= 1e-12);
    CHECK(gap <= 1e-11);

    auto bell = bell_state();
    auto rep2 = correlation_index(bell, 2, 2);
    auto b1 = partial_trace(bell, {2, 2}, {0});
    auto b2 = partial_trace(bell, {2, 2}, {1});
    CHECK(rep2.e_direct > 1e-12);
    CHECK(max_abs(bell.matrix() - kron(b1.matrix(), b2.matrix())) > 1e-11);
}

TEST_CASE("swap covariance") {
    auto rho = random_density(6, 6, 49);
    double e = correlation_index(rho, 2, 3).e_direct;
    double e_swapped = correlation_index(swap_factors(rho, 2, 3), 3, 2).e_direct;
    CHECK(std::abs(e - e_swapped) <= 1e-12);
}

TEST_CASE("dimension mismatch is rejected") {
    auto rho = random_density(6, 6, 50);
    CHECK_THROWS_AS(correlation_index(rho, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(multi_correlation_index(rho, {2, 2, 2}), std::invalid_argument);
}

TEST_CASE("three-party indices vanish on triple products") {
    auto rho = tensor(tensor(random_density(2, 2, 51), random_density(2, 2, 52)),
                      random_density(3, 3, 53));
    auto idx = multi_correlation_index(rho, {2, 2, 3});
    CHECK(idx.at("123") <= 1e-12);
    CHECK(idx.at("1(23)") <= 1e-12);
    CHECK(idx.at("2(13)") <= 1e-12);
    CHECK(idx.at("3(12)") <= 1e-12);
}

TEST_CASE("factor times Bell pair") {
    auto rho = tensor(random_density(2, 1, 54), bell_state());
    auto idx = multi_correlation_index(rho, {2, 2, 2});
    CHECK(idx.at("1(23)") <= 1e-12);
    CHECK(idx.at("123") > 0.1);
}

TEST_CASE("GHZ full index agrees with the entry-wise oracle") {
    auto rho = ghz_state();
    auto idx = multi_correlation_index(rho, {2, 2, 2});
    auto r1 = partial_trace(rho, {2, 2, 2}, {0});
    auto r2 = partial_trace(rho, {2, 2, 2}, {1});
    auto r3 = partial_trace(rho, {2, 2, 2}, {2});
    ComplexMatrix prod = kron(kron(r1.matrix(), r2.matrix()), r3.matrix());
    CHECK(idx.at("123") ==
          doctest::Approx(oracle::brute_sq_distance(rho.matrix(), prod)).epsilon(1e-12));
}

TEST_SUITE_END();
