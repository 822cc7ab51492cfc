#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <utility>

#include "pvg/arith.hpp"

namespace pvg {

/// Prime factorisation of a positive integer by trial division.
inline std::map<mpz_class, unsigned long> factorize(mpz_class n) {
    if (n <= 0) throw DomainError("factorize expects a positive integer");
    std::map<mpz_class, unsigned long> out;
    for (mpz_class d = 2; d * d <= n; ++d) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 2) break;
        while (n % d == 0) {
            ++out[d];
            n /= d;
        }
    }
    if (n > 1) ++out[n];
    return out;
}

/// Exponents (m, n), m, n > 0 and coprime, with a^m = b^n.
struct DependenceWitness {
    mpz_class m;
    mpz_class n;
};

/// Decides multiplicative independence of two naturals > 1.
///
/// a and b are dependent iff their prime-exponent vectors are proportional;
/// returns the witness in lowest terms, or nullopt when independent.
inline std::optional<DependenceWitness> dependence_witness(const mpz_class& a, const mpz_class& b) {
    if (a <= 1 || b <= 1) throw DomainError("multiplicative independence needs naturals > 1");
    auto fa = factorize(a);
    auto fb = factorize(b);
    if (fa.size() != fb.size()) return std::nullopt;
    std::optional<DependenceWitness> w;
    for (auto ita = fa.begin(), itb = fb.begin(); ita != fa.end(); ++ita, ++itb) {
        if (ita->first != itb->first) return std::nullopt;
        mpz_class ea(ita->second), eb(itb->second);
        // a^m = b^n  <=>  m * ea = n * eb for every prime.
        mpz_class g = gcd(ea, eb);
        DependenceWitness here{eb / g, ea / g};
        if (!w) w = here;
        else if (w->m != here.m || w->n != here.n) return std::nullopt;
    }
    return w;
}

} // namespace pvg
