#include "qpd/numtheory.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qpd {

namespace {

std::int64_t euclid_mod(std::int64_t x, std::int64_t m) {
    std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>(
        (static_cast<__int128>(a) * static_cast<__int128>(b)) % m);
}

}  // namespace

std::vector<std::int64_t> CoprimeFactorization::moduli() const {
    std::vector<std::int64_t> out;
    out.reserve(factors.size());
    for (const auto& f : factors) out.push_back(f.modulus);
    return out;
}

std::int64_t CoprimeFactorization::idempotent(std::size_t i) const {
    const auto& f = factors.at(i);
    return mul_mod(euclid_mod(f.cofactor, n), euclid_mod(f.crt_inverse, n), n);
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    while (b != 0) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

std::int64_t euler_phi(std::int64_t k) {
    if (k < 1) throw std::invalid_argument("euler_phi: k must be positive");
    std::int64_t result = k;
    std::int64_t m = k;
    for (std::int64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t modulus) {
    if (modulus < 1) throw std::invalid_argument("mod_pow: modulus must be positive");
    if (exp < 0) throw std::invalid_argument("mod_pow: exponent must be nonnegative");
    if (modulus == 1) return 0;
    std::int64_t b = euclid_mod(base, modulus);
    std::int64_t acc = 1;
    while (exp > 0) {
        if (exp & 1) acc = mul_mod(acc, b, modulus);
        b = mul_mod(b, b, modulus);
        exp >>= 1;
    }
    return acc;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    if (m < 1) throw std::invalid_argument("mod_inverse: modulus must be positive");
    if (m == 1) return 0;
    std::int64_t r0 = m, r1 = euclid_mod(a, m);
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t r2 = r0 - q * r1;
        std::int64_t s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1)
        throw std::invalid_argument("mod_inverse: arguments are not coprime");
    return euclid_mod(s0, m);
}

CoprimeFactorization factor_coprime(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("factor_coprime: n must be positive");
    CoprimeFactorization out;
    out.n = n;
    if (n == 1) {
        out.factors.push_back(CoprimeFactor{});
        return out;
    }
    std::int64_t m = n;
    for (std::int64_t p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        CoprimeFactor f;
        f.prime = p;
        f.exponent = 0;
        f.modulus = 1;
        while (m % p == 0) {
            m /= p;
            f.modulus *= p;
            ++f.exponent;
        }
        out.factors.push_back(f);
    }
    if (m > 1) out.factors.push_back(CoprimeFactor{m, 1, m, 1, 0});
    for (auto& f : out.factors) {
        f.cofactor = n / f.modulus;
        f.crt_inverse = f.modulus == 1 ? 0 : mod_inverse(f.cofactor, f.modulus);
    }
    return out;
}

CoprimeFactorization reorder(const CoprimeFactorization& f,
                             const std::vector<std::int64_t>& order) {
    if (order.size() != f.factors.size())
        throw std::invalid_argument("reorder: order must list every coprime factor");
    CoprimeFactorization out;
    out.n = f.n;
    std::vector<bool> used(f.factors.size(), false);
    for (std::int64_t m : order) {
        bool found = false;
        for (std::size_t i = 0; i < f.factors.size(); ++i) {
            if (!used[i] && f.factors[i].modulus == m) {
                out.factors.push_back(f.factors[i]);
                used[i] = true;
                found = true;
                break;
            }
        }
        if (!found)
            throw std::invalid_argument("reorder: " + std::to_string(m) +
                                        " is not a coprime factor of " +
                                        std::to_string(f.n));
    }
    return out;
}

ResidueVector delta(std::int64_t x, const CoprimeFactorization& f) {
    std::int64_t xr = euclid_mod(x, f.n);
    ResidueVector out;
    out.moduli = f.moduli();
    out.values.reserve(out.moduli.size());
    for (std::int64_t m : out.moduli) out.values.push_back(xr % m);
    return out;
}

std::int64_t crt_reconstruct(const ResidueVector& r, const CoprimeFactorization& f) {
    if (r.moduli != f.moduli() || r.values.size() != r.moduli.size())
        throw std::invalid_argument("crt_reconstruct: residue moduli do not match factorization");
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
        std::int64_t term = mul_mod(euclid_mod(r.values[i], f.n), f.idempotent(i), f.n);
        acc = euclid_mod(acc + term, f.n);
    }
    return acc;
}

std::int64_t mu_pair(std::int64_t a, std::int64_t b, std::int64_t n1, std::int64_t n2) {
    if (n1 < 1 || n2 < 1)
        throw std::invalid_argument("mu_pair: moduli must be positive");
    if (gcd64(n1, n2) != 1)
        throw std::invalid_argument("mu_pair: moduli must be coprime");
    const std::int64_t n = n1 * n2;
    std::int64_t t1 = mod_pow(n2, euler_phi(n1), n);
    std::int64_t t2 = mod_pow(n1, euler_phi(n2), n);
    std::int64_t x = mul_mod(euclid_mod(a, n1), t1, n) + mul_mod(euclid_mod(b, n2), t2, n);
    return euclid_mod(x, n);
}

}  // namespace qpd
