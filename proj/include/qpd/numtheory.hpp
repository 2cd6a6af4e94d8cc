#pragma once

#include <cstdint>
#include <vector>

namespace qpd {

// One prime-power factor N_i = p^k of a modulus N, with the constants used
// for Chinese-remainder reconstruction:
//   cofactor    = N / N_i
//   crt_inverse = y_i, the solution of cofactor * y_i == 1 (mod N_i)
struct CoprimeFactor {
    std::int64_t prime = 1;
    std::int64_t exponent = 1;
    std::int64_t modulus = 1;
    std::int64_t cofactor = 1;
    std::int64_t crt_inverse = 0;
};

// N together with its ordered pairwise-coprime prime-power factors.
// Canonical order is ascending prime base (60 -> 4, 3, 5).
struct CoprimeFactorization {
    std::int64_t n = 1;
    std::vector<CoprimeFactor> factors;

    std::size_t count() const { return factors.size(); }
    std::vector<std::int64_t> moduli() const;

    // CRT idempotent e_i = cofactor_i * y_i mod n.
    // e_i == 1 (mod N_i) and e_i == 0 (mod N_j) for j != i; sum_i e_i == 1 (mod n).
    std::int64_t idempotent(std::size_t i) const;
};

// Residues of one integer with respect to a coprime moduli list.
struct ResidueVector {
    std::vector<std::int64_t> moduli;
    std::vector<std::int64_t> values;
};

// Prime-power factorization by trial division (adequate for n <= 2^20).
// n == 1 yields the single trivial factor {modulus = 1}.
CoprimeFactorization factor_coprime(std::int64_t n);

// Same factor set in an explicitly requested modulus order. `order` must be a
// permutation of the canonical moduli; throws std::invalid_argument otherwise.
CoprimeFactorization reorder(const CoprimeFactorization& f,
                             const std::vector<std::int64_t>& order);

// Count of 1 <= l <= k with gcd(l, k) = 1.
std::int64_t euler_phi(std::int64_t k);

// base^exp mod modulus, result in [0, modulus). exp >= 0, modulus >= 1.
std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t modulus);

// Inverse of a mod m via extended Euclid; throws if gcd(a, m) != 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);

std::int64_t gcd64(std::int64_t a, std::int64_t b);

// Residue map: values[i] = x mod N_i (x reduced into [0, n) first).
ResidueVector delta(std::int64_t x, const CoprimeFactorization& f);

// Mixed-radix reconstruction x = sum_i r_i * cofactor_i * y_i (mod n);
// inverse of delta. Throws std::invalid_argument on a moduli mismatch.
std::int64_t crt_reconstruct(const ResidueVector& r, const CoprimeFactorization& f);

// Two-modulus reconstruction mu(a, b) = a*n2^phi(n1) + b*n1^phi(n2) (mod n1*n2),
// the unique x in [0, n1*n2) with x == a (mod n1), x == b (mod n2).
// Throws std::invalid_argument unless gcd(n1, n2) = 1.
std::int64_t mu_pair(std::int64_t a, std::int64_t b, std::int64_t n1, std::int64_t n2);

}  // namespace qpd
