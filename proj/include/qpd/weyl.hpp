#pragma once

#include <cstdint>
#include <vector>

#include "qpd/matrix.hpp"

namespace qpd {

// Square root branch used for the phase omega^{(1/2) m1 m2} in front of
// g^{m1} h^{m2}:
//
//   HalfAngle  : tau = exp(i*pi/N). Defined for every N; the index family is
//                only Z_{2N}-periodic (shifting an index by N flips the sign
//                when N is even).
//   ModInverse : tau = omega^{(N+1)/2}, i.e. omega to the inverse of 2 mod N.
//                Odd N only; fully Z_N-periodic, and the adjoint identity
//                J_m^dagger = J_{-m1 mod N, -m2 mod N} holds exactly.
enum class PhaseConvention { HalfAngle, ModInverse };

// ModInverse for odd n, HalfAngle for even n.
PhaseConvention default_convention(std::int64_t n);

// diag(1, w, ..., w^{N-1}) with w = exp(2*pi*i/N).
ComplexMatrix clock(std::int64_t n);

// Cyclic shift: entry (k, k+1 mod N) = 1, so shift * e_{k+1} = e_k.
ComplexMatrix shift(std::int64_t n);

// The family J_{m1,m2} = tau^{m1*m2} g^{m1} h^{m2} over the index lattice
// Z_N x Z_N. clock, shift and omega are cached; element() accepts arbitrary
// integer indices and evaluates the defining product formula there (the
// result depends on indices mod 2N under HalfAngle, mod N under ModInverse).
class WeylBasis {
public:
    explicit WeylBasis(std::int64_t n);
    WeylBasis(std::int64_t n, PhaseConvention convention);

    std::int64_t dim() const { return n_; }
    PhaseConvention convention() const { return convention_; }
    Complex omega() const { return omega_; }
    Complex tau() const { return tau_; }
    const ComplexMatrix& g() const { return g_; }
    const ComplexMatrix& h() const { return h_; }

    ComplexMatrix element(std::int64_t m1, std::int64_t m2) const;

    // Scalar in front of g^{m1} h^{m2}, i.e. tau^{m1*m2}.
    Complex phase(std::int64_t m1, std::int64_t m2) const;

private:
    std::int64_t n_;
    PhaseConvention convention_;
    Complex omega_;
    Complex tau_;
    ComplexMatrix g_, h_;
};

// Expansion table lambda_m indexed by m = (m1, m2) in [0,N)^2.
struct WeylCoefficients {
    std::int64_t n = 0;
    std::vector<Complex> table;  // index m1*n + m2

    Complex& at(std::int64_t m1, std::int64_t m2) { return table[m1 * n + m2]; }
    const Complex& at(std::int64_t m1, std::int64_t m2) const { return table[m1 * n + m2]; }
};

// lambda_m = Tr(J_m^dagger A). With this pairing {J_m / sqrt(N)} is an
// orthonormal Hilbert-Schmidt basis in both conventions, so
// reconstruct(expand(A)) == A for every square A.
WeylCoefficients expand(const ComplexMatrix& a, const WeylBasis& basis);

// Alternative pairing lambda_m = Tr(J_m A) (no adjoint). Related to expand()
// by index reflection; kept for expansions written against that convention.
WeylCoefficients expand_unconjugated(const ComplexMatrix& a, const WeylBasis& basis);

// (1/N) sum_m lambda_m J_m.
ComplexMatrix reconstruct(const WeylCoefficients& c, const WeylBasis& basis);

}  // namespace qpd
