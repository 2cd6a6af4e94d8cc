#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "qpd/density.hpp"
#include "qpd/matrix.hpp"

namespace qpd {

// Hilbert-Schmidt (Frobenius) norm sqrt(Tr A^dagger A).
double hs_norm(const ComplexMatrix& a);

// Correlation content of a bipartite state, computed through two channels:
//
//   e_direct = || rho - rho1 x rho2 ||^2           (reduced states by partial trace)
//   e_lambda = Tr(Lambda Lambda^dagger) / (N1 N2)
//
// with Lambda_{mn} = <J_m x J_n> - <J_m><J_n> over the starred index lattices
// (origin excluded), expectation values paired as Tr(J^dagger rho). The two
// channels agree because {J_m/sqrt(N)} is an orthonormal basis and the
// m = 0 / n = 0 rows of the expansion of rho - rho1 x rho2 vanish.
//
// e_reflected is the literal reflected pairing
// sum Lambda_{mn} Lambda_{N1-m, N2-n} / (N1 N2); it equals e_lambda whenever
// the reality conditions hold exactly (odd dimensions under mod-inverse) and
// its gap from e_lambda is reported otherwise.
struct CorrelationReport {
    std::int64_t n1 = 0, n2 = 0;
    double e_direct = 0.0;
    double e_lambda = 0.0;
    Complex e_reflected{0.0, 0.0};
    ComplexMatrix lambda;  // (N1^2-1) x (N2^2-1), starred lattice, m1 fast
};

CorrelationReport correlation_index(const DensityMatrix& rho, std::int64_t n1,
                                    std::int64_t n2);

// Three-party indices keyed "123", "1(23)", "2(13)", "3(12)":
//   E_123    = || rho - rho1 x rho2 x rho3 ||^2
//   E_i(jk)  = || rho - rho_i x rho_jk ||^2 with factors re-assembled in the
//              original tensor slot order.
std::map<std::string, double> multi_correlation_index(
    const DensityMatrix& rho, const std::array<std::int64_t, 3>& dims);

}  // namespace qpd
