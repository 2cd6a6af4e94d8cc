#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "qpd/density.hpp"
#include "qpd/matrix.hpp"
#include "qpd/numtheory.hpp"
#include "qpd/weyl.hpp"

namespace qpd {

// Weyl family on one coprime factor, induced by restricting the global
// generators through the CRT idempotent e_i = cofactor_i * y_i:
//
//   g^{e_i} restricted to slot i  =  clock(N_i)^{y_i}
//   h^{e_i} restricted to slot i  =  shift(N_i)
//   omega_i = omega^{e_i} = exp(2*pi*i*y_i/N_i)
//
// Because gcd(y_i, N_i) = 1 this is the standard local family re-indexed:
// element(a, b) equals the local basis element at integer indices (y_i*a, b),
// which keeps Hilbert-Schmidt orthogonality intact.
struct FactorBasis {
    std::int64_t modulus;  // N_i
    std::int64_t twist;    // y_i
    WeylBasis local;       // untwisted basis on N_i, fixes the tau branch

    Complex omega() const;  // omega_i
    ComplexMatrix g() const;
    ComplexMatrix h() const;
    ComplexMatrix element(std::int64_t a, std::int64_t b) const;
};

// Per-factor bases for a coprime factorization. Conventions default to
// mod-inverse on odd factors and half-angle on even ones; an explicit
// convention applies to every factor (mod-inverse rejects even factors).
struct ResidueGenerators {
    CoprimeFactorization factorization;
    std::vector<FactorBasis> factors;

    // kron over all factors of element(residue pairs), slot order as in the
    // factorization.
    ComplexMatrix product_element(const std::vector<std::array<std::int64_t, 2>>& idx) const;
};

ResidueGenerators residue_generators(const CoprimeFactorization& f);
ResidueGenerators residue_generators(const CoprimeFactorization& f, PhaseConvention conv);

// CRT index bijection for a pairwise-coprime moduli list (product = N):
// perm[n] = mixed-radix code of (n mod M_1, ..., n mod M_t), leftmost slowest.
std::vector<std::int64_t> crt_permutation(const std::vector<std::int64_t>& moduli);

// 0/1 matrix V with V(perm[n], n) = 1; V |n> = |n mod M_1> x ... x |n mod M_t>.
ComplexMatrix permutation_matrix(const std::vector<std::int64_t>& perm);

ComplexMatrix build_permutation(const CoprimeFactorization& f);

// V A V^dagger evaluated by index relabeling: out(perm[i], perm[j]) = A(i, j).
// Exact (no arithmetic on the entries).
ComplexMatrix permute_conjugate(const std::vector<std::int64_t>& perm, const ComplexMatrix& a);

// Coefficients of pd_rho against the product family
// { J^{(1)}_{a1 b1} x ... x J^{(t)}_{at bt} }: a t-way tensor with mode sizes
// N_i^2, stored flat with factor 0 slowest and per-factor index a*N_i + b.
struct CoefficientTensor {
    std::vector<std::int64_t> moduli;
    std::vector<Complex> values;

    std::int64_t mode_size(std::size_t i) const { return moduli[i] * moduli[i]; }
    std::int64_t flat(const std::vector<std::array<std::int64_t, 2>>& idx) const;
    const Complex& at(const std::vector<std::array<std::int64_t, 2>>& idx) const;
    std::vector<std::array<std::int64_t, 2>> unflatten(std::int64_t flat_ix) const;
};

// Single coefficient Tr((x_i J^{(i)}_{idx_i})^dagger pd_rho).
Complex coefficient_at(const ComplexMatrix& pd_rho, const ResidueGenerators& gens,
                       const std::vector<std::array<std::int64_t, 2>>& idx);

// Full tensor; reconstruction (1/N) sum_mu c_mu (x_i J^{(i)}_{mu_i})
// recovers pd_rho.
CoefficientTensor coefficient_tensor(const ComplexMatrix& pd_rho,
                                     const ResidueGenerators& gens);

// Rank-one structure of the coefficient tensor across factors. When every
// mode unfolding has second singular value <= rank_tol the state is a pure
// tensor product and per-factor matrices are recovered (unit trace each).
struct GrouplikeDetection {
    std::vector<double> unfolding_second_singulars;
    bool grouplike = false;
    double residual = 0.0;                 // ||pd - x factors||_F when factors built
    std::vector<ComplexMatrix> factors;    // empty unless grouplike

    static constexpr double kRankTol = 1e-8;
};
GrouplikeDetection detect_grouplike(const ComplexMatrix& pd_rho,
                                    const ResidueGenerators& gens,
                                    const CoefficientTensor& coeff);

struct DecompositionResult {
    CoprimeFactorization factorization;
    std::vector<std::int64_t> perm;  // column n -> row perm[n]
    ComplexMatrix V;                 // permutation_matrix(perm)
    ComplexMatrix pd_rho;            // V rho V^dagger
    std::optional<CoefficientTensor> coeff;        // materialized for n <= 64
    std::optional<GrouplikeDetection> grouplike;   // present when coeff is

    static constexpr std::int64_t kMaterializeLimit = 64;
};

DecompositionResult apply_pd(const DensityMatrix& rho, const CoprimeFactorization& f);
DecompositionResult apply_pd(const DensityMatrix& rho, const CoprimeFactorization& f,
                             PhaseConvention conv);

// Image of one basis element under the decomposition: residue index pairs
// (m1 mod N_i, m2 mod N_i), the product operator x_i J^{(i)}, and the unit
// phase c with V J_m V^dagger = c * op. c = 1 exactly for odd N; for even N
// the half-integer branch contributes an index-dependent sign/phase.
struct WeylImage {
    std::vector<std::array<std::int64_t, 2>> residues;
    ComplexMatrix op;
    Complex phase;
    double residual;  // || V J_m V^dagger - phase * op ||_max
};
WeylImage weyl_image(std::int64_t m1, std::int64_t m2, const WeylBasis& basis,
                     const ResidueGenerators& gens);

// Real exponent f on the index lattice, either tabulated on Z_N^2 or a
// polynomial sum_kl f_kl m1^k m2^l. Integer polynomial coefficients are
// evaluated with exact modular arithmetic.
class GrouplikeExponent {
public:
    struct Term {
        int deg1;
        int deg2;
        double coeff;
    };

    static GrouplikeExponent table(std::int64_t n, std::vector<double> values);
    static GrouplikeExponent polynomial(std::vector<Term> terms);

    // exp(2*pi*i * twist * f(m1, m2) / modulus)
    Complex phase(std::int64_t m1, std::int64_t m2, std::int64_t twist,
                  std::int64_t modulus) const;

private:
    GrouplikeExponent() = default;
    bool tabulated_ = false;
    std::int64_t table_n_ = 0;
    std::vector<double> table_;
    std::vector<Term> terms_;
    bool integral_ = true;
};

// For rho with pure-phase coefficients rho_m = omega^{f(m)} / N, builds the
// per-factor states rho^(i) = (1/N_i) sum_{ab} omega_i^{f(a,b)} J^{(i)}_{ab}
// and compares their tensor product with pd(rho). For integer polynomial f
// and odd N the match is exact up to roundoff; otherwise the residual simply
// reports how far f is from the factorizable class.
struct GrouplikeFactorization {
    std::vector<ComplexMatrix> factors;
    ComplexMatrix rho;       // (1/N) sum_m omega^{f(m)} J_m
    ComplexMatrix pd_rho;    // V rho V^dagger
    double residual;         // || pd_rho - x factors ||_F
    bool within_tolerance;   // residual <= kTol

    static constexpr double kTol = 1e-9;
};
GrouplikeFactorization grouplike_factorize(const GrouplikeExponent& f,
                                           const CoprimeFactorization& fact);

// Max-abs difference between the two association orders of the nested
// decomposition (N1, N2, N3). Zero for every state; the permutations agree.
double coassociativity_check(const DensityMatrix& rho, std::int64_t n1,
                             std::int64_t n2, std::int64_t n3);

// |Tr(pd rho) - Tr(rho)|.
double trace_invariance_check(const DensityMatrix& rho, const CoprimeFactorization& f);

}  // namespace qpd
