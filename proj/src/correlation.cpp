#include "qpd/correlation.hpp"

#include <stdexcept>
#include <vector>

#include "qpd/weyl.hpp"

namespace qpd {

namespace {

// starred lattice in lexicographic order, m1 fast, origin excluded
std::vector<std::array<std::int64_t, 2>> starred_lattice(std::int64_t n) {
    std::vector<std::array<std::int64_t, 2>> out;
    out.reserve(n * n - 1);
    for (std::int64_t m2 = 0; m2 < n; ++m2)
        for (std::int64_t m1 = 0; m1 < n; ++m1)
            if (m1 != 0 || m2 != 0) out.push_back({m1, m2});
    return out;
}

Complex pair_trace(const ComplexMatrix& op, const ComplexMatrix& rho) {
    return op.conjugate().cwiseProduct(rho).sum();  // Tr(op^dagger rho)
}

// rhoA on slots `slotsA`, rhoB on the remaining slots, re-assembled into the
// original slot order of `dims`.
ComplexMatrix assemble_in_order(const std::vector<std::int64_t>& dims,
                                const std::vector<std::size_t>& slotsA,
                                const ComplexMatrix& rhoA, const ComplexMatrix& rhoB) {
    const std::size_t t = dims.size();
    std::vector<bool> inA(t, false);
    for (auto s : slotsA) inA[s] = true;
    std::int64_t total = 1;
    for (auto d : dims) total *= d;

    auto split = [&](std::int64_t ix) {
        std::vector<std::int64_t> digit(t);
        for (std::size_t i = t; i-- > 0;) {
            digit[i] = ix % dims[i];
            ix /= dims[i];
        }
        std::int64_t a = 0, b = 0;
        for (std::size_t i = 0; i < t; ++i) {
            std::int64_t& target = inA[i] ? a : b;
            target = target * dims[i] + digit[i];
        }
        return std::pair{a, b};
    };

    ComplexMatrix out(total, total);
    for (std::int64_t i = 0; i < total; ++i) {
        auto [ia, ib] = split(i);
        for (std::int64_t j = 0; j < total; ++j) {
            auto [ja, jb] = split(j);
            out(i, j) = rhoA(ia, ja) * rhoB(ib, jb);
        }
    }
    return out;
}

}  // namespace

double hs_norm(const ComplexMatrix& a) { return a.norm(); }

CorrelationReport correlation_index(const DensityMatrix& rho, std::int64_t n1,
                                    std::int64_t n2) {
    if (n1 < 1 || n2 < 1 || n1 * n2 != rho.dim())
        throw std::invalid_argument("correlation_index: dims do not partition the state");
    CorrelationReport rep;
    rep.n1 = n1;
    rep.n2 = n2;

    const std::vector<std::int64_t> dims{n1, n2};
    DensityMatrix rho1 = partial_trace(rho, dims, {0});
    DensityMatrix rho2 = partial_trace(rho, dims, {1});
    ComplexMatrix delta = rho.matrix() - kron(rho1.matrix(), rho2.matrix());
    double d = hs_norm(delta);
    rep.e_direct = d * d;

    WeylBasis b1(n1), b2(n2);
    auto lat1 = starred_lattice(n1);
    auto lat2 = starred_lattice(n2);

    std::vector<ComplexMatrix> j1, j2;
    j1.reserve(lat1.size());
    j2.reserve(lat2.size());
    std::vector<Complex> lam1, lam2;
    for (const auto& m : lat1) {
        j1.push_back(b1.element(m[0], m[1]));
        lam1.push_back(pair_trace(j1.back(), rho1.matrix()));
    }
    for (const auto& n : lat2) {
        j2.push_back(b2.element(n[0], n[1]));
        lam2.push_back(pair_trace(j2.back(), rho2.matrix()));
    }

    rep.lambda.resize(lat1.size(), lat2.size());
    for (std::size_t r = 0; r < lat1.size(); ++r)
        for (std::size_t c = 0; c < lat2.size(); ++c) {
            Complex lam12 = pair_trace(kron(j1[r], j2[c]), rho.matrix());
            rep.lambda(r, c) = lam12 - lam1[r] * lam2[c];
        }

    const double scale = static_cast<double>(n1 * n2);
    rep.e_lambda = rep.lambda.squaredNorm() / scale;

    // reflected pairing Lambda_{mn} Lambda_{N1-m, N2-n}
    auto reflect_pos = [](const std::vector<std::array<std::int64_t, 2>>& lat,
                          std::int64_t n, std::size_t i) {
        const auto& m = lat[i];
        std::array<std::int64_t, 2> rm{(n - m[0]) % n, (n - m[1]) % n};
        // starred lexicographic position of rm, m1 fast
        std::int64_t linear = rm[1] * n + rm[0];
        return static_cast<std::size_t>(linear - 1);
    };
    Complex acc{0.0, 0.0};
    for (std::size_t r = 0; r < lat1.size(); ++r)
        for (std::size_t c = 0; c < lat2.size(); ++c)
            acc += rep.lambda(r, c) *
                   rep.lambda(reflect_pos(lat1, n1, r), reflect_pos(lat2, n2, c));
    rep.e_reflected = acc / scale;
    return rep;
}

std::map<std::string, double> multi_correlation_index(
    const DensityMatrix& rho, const std::array<std::int64_t, 3>& dims) {
    const std::int64_t n = dims[0] * dims[1] * dims[2];
    if (n != rho.dim())
        throw std::invalid_argument("multi_correlation_index: dims do not partition the state");
    const std::vector<std::int64_t> d{dims[0], dims[1], dims[2]};

    DensityMatrix r1 = partial_trace(rho, d, {0});
    DensityMatrix r2 = partial_trace(rho, d, {1});
    DensityMatrix r3 = partial_trace(rho, d, {2});
    DensityMatrix r23 = partial_trace(rho, d, {1, 2});
    DensityMatrix r13 = partial_trace(rho, d, {0, 2});
    DensityMatrix r12 = partial_trace(rho, d, {0, 1});

    auto sq = [](double x) { return x * x; };
    std::map<std::string, double> out;
    out["123"] = sq(hs_norm(rho.matrix() -
                            kron(kron(r1.matrix(), r2.matrix()), r3.matrix())));
    out["1(23)"] = sq(hs_norm(rho.matrix() - kron(r1.matrix(), r23.matrix())));
    out["2(13)"] = sq(hs_norm(rho.matrix() -
                              assemble_in_order(d, {1}, r2.matrix(), r13.matrix())));
    out["3(12)"] = sq(hs_norm(rho.matrix() - kron(r12.matrix(), r3.matrix())));
    return out;
}

}  // namespace qpd
