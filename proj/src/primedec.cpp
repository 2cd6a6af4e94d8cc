#include "qpd/primedec.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qpd {

namespace {

std::int64_t euclid_mod(std::int64_t x, std::int64_t m) {
    std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

Complex unit_phase(double angle) { return Complex{std::cos(angle), std::sin(angle)}; }

}  // namespace

Complex FactorBasis::omega() const {
    double angle = 2.0 * std::numbers::pi * static_cast<double>(euclid_mod(twist, modulus)) /
                   static_cast<double>(modulus);
    return unit_phase(angle);
}

ComplexMatrix FactorBasis::g() const { return local.element(twist, 0); }
ComplexMatrix FactorBasis::h() const { return local.element(0, 1); }

ComplexMatrix FactorBasis::element(std::int64_t a, std::int64_t b) const {
    // tau^{ab} (clock^twist)^a shift^b == local element at indices (twist*a, b)
    return local.element(twist * a, b);
}

ComplexMatrix ResidueGenerators::product_element(
    const std::vector<std::array<std::int64_t, 2>>& idx) const {
    if (idx.size() != factors.size())
        throw std::invalid_argument("product_element: index tuple length mismatch");
    ComplexMatrix out = factors[0].element(idx[0][0], idx[0][1]);
    for (std::size_t i = 1; i < factors.size(); ++i)
        out = kron(out, factors[i].element(idx[i][0], idx[i][1]));
    return out;
}

ResidueGenerators residue_generators(const CoprimeFactorization& f) {
    ResidueGenerators gens{f, {}};
    gens.factors.reserve(f.count());
    for (const auto& fac : f.factors)
        gens.factors.push_back(FactorBasis{fac.modulus, fac.crt_inverse,
                                           WeylBasis(fac.modulus)});
    return gens;
}

ResidueGenerators residue_generators(const CoprimeFactorization& f, PhaseConvention conv) {
    ResidueGenerators gens{f, {}};
    gens.factors.reserve(f.count());
    for (const auto& fac : f.factors)
        gens.factors.push_back(FactorBasis{fac.modulus, fac.crt_inverse,
                                           WeylBasis(fac.modulus, conv)});
    return gens;
}

std::vector<std::int64_t> crt_permutation(const std::vector<std::int64_t>& moduli) {
    if (moduli.empty()) throw std::invalid_argument("crt_permutation: empty moduli list");
    std::int64_t n = 1;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        if (moduli[i] < 1) throw std::invalid_argument("crt_permutation: moduli must be positive");
        for (std::size_t j = i + 1; j < moduli.size(); ++j)
            if (gcd64(moduli[i], moduli[j]) != 1)
                throw std::invalid_argument("crt_permutation: moduli must be pairwise coprime");
        n *= moduli[i];
    }
    std::vector<std::int64_t> perm(n);
    for (std::int64_t x = 0; x < n; ++x) {
        std::int64_t code = 0;
        for (std::int64_t m : moduli) code = code * m + (x % m);
        perm[x] = code;
    }
    return perm;
}

ComplexMatrix permutation_matrix(const std::vector<std::int64_t>& perm) {
    const std::int64_t n = static_cast<std::int64_t>(perm.size());
    ComplexMatrix v = ComplexMatrix::Zero(n, n);
    for (std::int64_t col = 0; col < n; ++col) v(perm[col], col) = 1.0;
    return v;
}

ComplexMatrix build_permutation(const CoprimeFactorization& f) {
    return permutation_matrix(crt_permutation(f.moduli()));
}

ComplexMatrix permute_conjugate(const std::vector<std::int64_t>& perm, const ComplexMatrix& a) {
    const std::int64_t n = static_cast<std::int64_t>(perm.size());
    if (a.rows() != n || a.cols() != n)
        throw std::invalid_argument("permute_conjugate: dimension mismatch");
    ComplexMatrix out(n, n);
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = 0; j < n; ++j) out(perm[i], perm[j]) = a(i, j);
    return out;
}

std::int64_t CoefficientTensor::flat(const std::vector<std::array<std::int64_t, 2>>& idx) const {
    if (idx.size() != moduli.size())
        throw std::invalid_argument("CoefficientTensor: index tuple length mismatch");
    std::int64_t f = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        const std::int64_t m = moduli[i];
        if (idx[i][0] < 0 || idx[i][0] >= m || idx[i][1] < 0 || idx[i][1] >= m)
            throw std::invalid_argument("CoefficientTensor: index out of range");
        f = f * (m * m) + (idx[i][0] * m + idx[i][1]);
    }
    return f;
}

const Complex& CoefficientTensor::at(const std::vector<std::array<std::int64_t, 2>>& idx) const {
    return values[flat(idx)];
}

std::vector<std::array<std::int64_t, 2>> CoefficientTensor::unflatten(std::int64_t flat_ix) const {
    std::vector<std::array<std::int64_t, 2>> idx(moduli.size());
    for (std::size_t i = moduli.size(); i-- > 0;) {
        const std::int64_t m = moduli[i];
        std::int64_t d = flat_ix % (m * m);
        flat_ix /= m * m;
        idx[i] = {d / m, d % m};
    }
    return idx;
}

Complex coefficient_at(const ComplexMatrix& pd_rho, const ResidueGenerators& gens,
                       const std::vector<std::array<std::int64_t, 2>>& idx) {
    ComplexMatrix k = gens.product_element(idx);
    return (k.conjugate().cwiseProduct(pd_rho)).sum();
}

CoefficientTensor coefficient_tensor(const ComplexMatrix& pd_rho,
                                     const ResidueGenerators& gens) {
    CoefficientTensor t;
    t.moduli = gens.factorization.moduli();
    std::int64_t total = 1;
    for (std::int64_t m : t.moduli) total *= m * m;
    t.values.resize(total);
    for (std::int64_t f = 0; f < total; ++f)
        t.values[f] = coefficient_at(pd_rho, gens, t.unflatten(f));
    return t;
}

GrouplikeDetection detect_grouplike(const ComplexMatrix& pd_rho,
                                    const ResidueGenerators& gens,
                                    const CoefficientTensor& coeff) {
    GrouplikeDetection det;
    const std::size_t t = coeff.moduli.size();
    const std::int64_t total = static_cast<std::int64_t>(coeff.values.size());

    // per-mode unfolding: rows indexed by that factor's pair, columns by the rest
    std::vector<Eigen::VectorXcd> leading(t);
    bool rank_one = true;
    for (std::size_t mode = 0; mode < t; ++mode) {
        const std::int64_t rows = coeff.mode_size(mode);
        const std::int64_t cols = total / rows;
        ComplexMatrix unfold(rows, cols);
        std::vector<std::int64_t> colcount(rows, 0);
        for (std::int64_t f = 0; f < total; ++f) {
            auto idx = coeff.unflatten(f);
            const std::int64_t m = coeff.moduli[mode];
            const std::int64_t r = idx[mode][0] * m + idx[mode][1];
            unfold(r, colcount[r]++) = coeff.values[f];
        }
        Eigen::JacobiSVD<ComplexMatrix> svd(unfold, Eigen::ComputeThinU);
        const auto& sv = svd.singularValues();
        double second = sv.size() > 1 ? sv(1) : 0.0;
        det.unfolding_second_singulars.push_back(second);
        if (second > GrouplikeDetection::kRankTol) rank_one = false;
        leading[mode] = svd.matrixU().col(0);
    }
    if (!rank_one) return det;

    // c_mu ~= prod_i w_i[mu_i] with w_i = u_i / u_i[0]; c at the all-zero tuple
    // is Tr(pd_rho), so the per-factor states come out with unit trace.
    det.factors.reserve(t);
    for (std::size_t mode = 0; mode < t; ++mode) {
        Eigen::VectorXcd u = leading[mode];
        if (std::abs(u(0)) < 1e-8 * u.norm()) return det;  // cannot normalize
        u /= u(0);
        const std::int64_t m = coeff.moduli[mode];
        ComplexMatrix factor = ComplexMatrix::Zero(m, m);
        for (std::int64_t a = 0; a < m; ++a)
            for (std::int64_t b = 0; b < m; ++b)
                factor += u(a * m + b) * gens.factors[mode].element(a, b);
        det.factors.push_back(factor / static_cast<double>(m));
    }
    ComplexMatrix prod = det.factors[0];
    for (std::size_t i = 1; i < t; ++i) prod = kron(prod, det.factors[i]);
    det.residual = (pd_rho - prod).norm();
    det.grouplike = det.residual <= GrouplikeFactorization::kTol;
    if (!det.grouplike) det.factors.clear();
    return det;
}

namespace {

DecompositionResult apply_pd_impl(const DensityMatrix& rho, const CoprimeFactorization& f,
                                  const ResidueGenerators& gens) {
    if (rho.dim() != f.n)
        throw std::invalid_argument("apply_pd: state dimension does not match factorization");
    DecompositionResult res;
    res.factorization = f;
    res.perm = crt_permutation(f.moduli());
    res.V = permutation_matrix(res.perm);
    res.pd_rho = permute_conjugate(res.perm, rho.matrix());
    if (f.n <= DecompositionResult::kMaterializeLimit) {
        res.coeff = coefficient_tensor(res.pd_rho, gens);
        res.grouplike = detect_grouplike(res.pd_rho, gens, *res.coeff);
    }
    return res;
}

}  // namespace

DecompositionResult apply_pd(const DensityMatrix& rho, const CoprimeFactorization& f) {
    return apply_pd_impl(rho, f, residue_generators(f));
}

DecompositionResult apply_pd(const DensityMatrix& rho, const CoprimeFactorization& f,
                             PhaseConvention conv) {
    return apply_pd_impl(rho, f, residue_generators(f, conv));
}

WeylImage weyl_image(std::int64_t m1, std::int64_t m2, const WeylBasis& basis,
                     const ResidueGenerators& gens) {
    const auto& f = gens.factorization;
    if (basis.dim() != f.n)
        throw std::invalid_argument("weyl_image: basis dimension does not match factorization");
    WeylImage img;
    for (const auto& fac : f.factors)
        img.residues.push_back({euclid_mod(m1, fac.modulus), euclid_mod(m2, fac.modulus)});
    img.op = gens.product_element(img.residues);

    auto perm = crt_permutation(f.moduli());
    ComplexMatrix lhs = permute_conjugate(perm, basis.element(m1, m2));

    // both sides share the same support; read the phase off the largest entry
    Eigen::Index r = 0, c = 0;
    img.op.cwiseAbs().maxCoeff(&r, &c);
    img.phase = lhs(r, c) / img.op(r, c);
    img.residual = max_abs(lhs - img.phase * img.op);
    return img;
}

GrouplikeExponent GrouplikeExponent::table(std::int64_t n, std::vector<double> values) {
    if (static_cast<std::int64_t>(values.size()) != n * n)
        throw std::invalid_argument("GrouplikeExponent: table must have n^2 entries");
    GrouplikeExponent e;
    e.tabulated_ = true;
    e.table_n_ = n;
    e.table_ = std::move(values);
    e.integral_ = true;
    for (double v : e.table_)
        if (std::abs(v - std::round(v)) > 1e-12) e.integral_ = false;
    return e;
}

GrouplikeExponent GrouplikeExponent::polynomial(std::vector<Term> terms) {
    GrouplikeExponent e;
    e.terms_ = std::move(terms);
    for (const auto& t : e.terms_) {
        if (t.deg1 < 0 || t.deg2 < 0)
            throw std::invalid_argument("GrouplikeExponent: negative degree");
        if (std::abs(t.coeff - std::round(t.coeff)) > 1e-12) e.integral_ = false;
    }
    return e;
}

Complex GrouplikeExponent::phase(std::int64_t m1, std::int64_t m2, std::int64_t twist,
                                 std::int64_t modulus) const {
    if (tabulated_) {
        if (m1 < 0 || m1 >= table_n_ || m2 < 0 || m2 >= table_n_)
            throw std::invalid_argument("GrouplikeExponent: index outside table");
        double v = table_[m1 * table_n_ + m2];
        if (integral_) {
            std::int64_t e = euclid_mod(
                static_cast<std::int64_t>(std::llround(v)) % modulus * (twist % modulus), modulus);
            return unit_phase(2.0 * std::numbers::pi * static_cast<double>(e) /
                              static_cast<double>(modulus));
        }
        double arg = std::fmod(static_cast<double>(twist) * v, static_cast<double>(modulus));
        return unit_phase(2.0 * std::numbers::pi * arg / static_cast<double>(modulus));
    }
    if (integral_) {
        std::int64_t acc = 0;
        for (const auto& t : terms_) {
            std::int64_t term = euclid_mod(static_cast<std::int64_t>(std::llround(t.coeff)), modulus);
            term = term * mod_pow(m1, t.deg1, modulus) % modulus;
            term = term * mod_pow(m2, t.deg2, modulus) % modulus;
            acc = (acc + term) % modulus;
        }
        acc = acc * euclid_mod(twist, modulus) % modulus;
        return unit_phase(2.0 * std::numbers::pi * static_cast<double>(acc) /
                          static_cast<double>(modulus));
    }
    double v = 0.0;
    for (const auto& t : terms_)
        v += t.coeff * std::pow(static_cast<double>(m1), t.deg1) *
             std::pow(static_cast<double>(m2), t.deg2);
    double arg = std::fmod(static_cast<double>(twist) * v, static_cast<double>(modulus));
    return unit_phase(2.0 * std::numbers::pi * arg / static_cast<double>(modulus));
}

GrouplikeFactorization grouplike_factorize(const GrouplikeExponent& f,
                                           const CoprimeFactorization& fact) {
    const std::int64_t n = fact.n;
    WeylBasis basis(n);
    auto gens = residue_generators(fact);

    WeylCoefficients lam;
    lam.n = n;
    lam.table.resize(n * n);
    for (std::int64_t m1 = 0; m1 < n; ++m1)
        for (std::int64_t m2 = 0; m2 < n; ++m2) lam.at(m1, m2) = f.phase(m1, m2, 1, n);

    GrouplikeFactorization out;
    out.rho = reconstruct(lam, basis);
    auto perm = crt_permutation(fact.moduli());
    out.pd_rho = permute_conjugate(perm, out.rho);

    for (std::size_t i = 0; i < gens.factors.size(); ++i) {
        const auto& fb = gens.factors[i];
        const std::int64_t m = fb.modulus;
        ComplexMatrix factor = ComplexMatrix::Zero(m, m);
        for (std::int64_t a = 0; a < m; ++a)
            for (std::int64_t b = 0; b < m; ++b)
                factor += f.phase(a, b, fb.twist, m) * fb.element(a, b);
        out.factors.push_back(factor / static_cast<double>(m));
    }
    ComplexMatrix prod = out.factors[0];
    for (std::size_t i = 1; i < out.factors.size(); ++i) prod = kron(prod, out.factors[i]);
    out.residual = (out.pd_rho - prod).norm();
    out.within_tolerance = out.residual <= GrouplikeFactorization::kTol;
    return out;
}

double coassociativity_check(const DensityMatrix& rho, std::int64_t n1, std::int64_t n2,
                             std::int64_t n3) {
    if (gcd64(n1, n2) != 1 || gcd64(n1, n3) != 1 || gcd64(n2, n3) != 1)
        throw std::invalid_argument("coassociativity_check: moduli must be pairwise coprime");
    const std::int64_t n = n1 * n2 * n3;
    if (rho.dim() != n)
        throw std::invalid_argument("coassociativity_check: dimension mismatch");

    // (pd_{n1,n2} x id) after pd_{n1*n2, n3}
    auto outer_a = crt_permutation({n1 * n2, n3});
    auto inner_a = crt_permutation({n1, n2});
    std::vector<std::int64_t> perm_a(n);
    for (std::int64_t x = 0; x < n; ++x) {
        std::int64_t block = outer_a[x] / n3, rest = outer_a[x] % n3;
        perm_a[x] = inner_a[block] * n3 + rest;
    }
    // (id x pd_{n2,n3}) after pd_{n1, n2*n3}
    auto outer_b = crt_permutation({n1, n2 * n3});
    auto inner_b = crt_permutation({n2, n3});
    std::vector<std::int64_t> perm_b(n);
    for (std::int64_t x = 0; x < n; ++x) {
        std::int64_t block = outer_b[x] / (n2 * n3), rest = outer_b[x] % (n2 * n3);
        perm_b[x] = block * (n2 * n3) + inner_b[rest];
    }

    ComplexMatrix a = permute_conjugate(perm_a, rho.matrix());
    ComplexMatrix b = permute_conjugate(perm_b, rho.matrix());
    return max_abs(a - b);
}

double trace_invariance_check(const DensityMatrix& rho, const CoprimeFactorization& f) {
    if (rho.dim() != f.n)
        throw std::invalid_argument("trace_invariance_check: dimension mismatch");
    auto perm = crt_permutation(f.moduli());
    ComplexMatrix pd = permute_conjugate(perm, rho.matrix());
    return std::abs(pd.trace() - rho.matrix().trace());
}

}  // namespace qpd
