#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <numeric>
#include <utility>
#include <string>

#include "pvg/arith.hpp"
#include "pvg/errors.hpp"
#include "pvg/independence.hpp"

namespace pvg {

/// p-adic valuation of a nonzero rational.
inline long vp(const mpq_class& q, unsigned long p) {
    if (q == 0) throw DomainError("v_p(0) is infinite");
    return static_cast<long>(vp_int(q.get_num(), p)) - static_cast<long>(vp_int(q.get_den(), p));
}

/// A p-adic number known modulo p^N (absolute precision N).
///
/// The value is p^valuation * unit_part with unit_part a residue modulo
/// p^(N - valuation) coprime to p. A value that is 0 modulo p^N is flagged
/// `possibly_zero` and carries no valuation.
class PadicApprox {
public:
    PadicApprox(unsigned long p, unsigned long precision, const mpz_class& residue)
        : p_(p), precision_(precision) {
        if (precision == 0) throw DomainError("precision must be at least 1");
        mpz_class m = ipow(p, precision);
        residue_ = mod(residue, m);
        if (residue_ == 0) {
            possibly_zero_ = true;
            valuation_ = static_cast<long>(precision);
        } else {
            valuation_ = static_cast<long>(vp_int(residue_, p));
            unit_ = mod(residue_ / ipow(p, static_cast<unsigned long>(valuation_)),
                        ipow(p, precision - static_cast<unsigned long>(valuation_)));
        }
    }

    unsigned long p() const { return p_; }
    unsigned long precision() const { return precision_; }
    bool possibly_zero() const { return possibly_zero_; }
    /// Certified only when !possibly_zero(); otherwise a lower bound.
    long valuation() const { return valuation_; }
    const mpz_class& unit_part() const { return unit_; }
    const mpz_class& residue() const { return residue_; }

    friend PadicApprox operator+(const PadicApprox& a, const PadicApprox& b) {
        check_same_prime(a, b);
        return {a.p_, std::min(a.precision_, b.precision_), a.residue_ + b.residue_};
    }
    friend PadicApprox operator-(const PadicApprox& a, const PadicApprox& b) {
        check_same_prime(a, b);
        return {a.p_, std::min(a.precision_, b.precision_), a.residue_ - b.residue_};
    }
    /// Multiplication by an exact integer; known digits shift up by v_p(c).
    friend PadicApprox operator*(const mpz_class& c, const PadicApprox& a) {
        if (c == 0) return {a.p_, a.precision_, 0};
        return {a.p_, a.precision_ + vp_int(c, a.p_), c * a.residue_};
    }
    friend PadicApprox operator*(const PadicApprox& a, const PadicApprox& b) {
        check_same_prime(a, b);
        // x = a + O(p^Na), y = b + O(p^Nb): xy = ab + O(p^min(Na + v(b), Nb + v(a))).
        unsigned long na = a.precision_ + static_cast<unsigned long>(b.valuation_);
        unsigned long nb = b.precision_ + static_cast<unsigned long>(a.valuation_);
        return {a.p_, std::min(na, nb), a.residue_ * b.residue_};
    }

private:
    static void check_same_prime(const PadicApprox& a, const PadicApprox& b) {
        if (a.p_ != b.p_) throw DomainError("mixing p-adic approximations for different primes");
    }

    unsigned long p_;
    unsigned long precision_;
    mpz_class residue_;
    mpz_class unit_;
    long valuation_ = 0;
    bool possibly_zero_ = false;
};

/// Smallest admissible v_p(x - 1) for the logarithm series to be used here.
inline long log_min_valuation(unsigned long p) { return p == 2 ? 2 : 1; }

/// Truncated p-adic logarithm of x ∈ 1 + p^k Z_p, returned modulo p^N.
///
/// Sums (-1)^(i+1) (x-1)^i / i over every term of valuation < N. Throws
/// IndeterminateError when x != 1 but the result vanishes modulo p^N, since
/// its valuation cannot be certified at that precision.
inline PadicApprox padic_log(const mpq_class& x, unsigned long p, unsigned long precision) {
    if (precision == 0) throw DomainError("precision must be at least 1");
    if (x == 1) return {p, precision, 0};
    if (x == 0) throw DomainError("log of zero");
    const mpq_class t = x - 1;
    const long v = vp(t, p);
    if (v < log_min_valuation(p))
        throw DomainError("padic_log: v_p(x - 1) = " + std::to_string(v) + " is below the convergence bound " +
                          std::to_string(log_min_valuation(p)));
    if (v >= static_cast<long>(precision))
        throw IndeterminateError("padic_log: x - 1 vanishes at precision " + std::to_string(precision),
                                 precision);

    const mpz_class modulus = ipow(p, precision);
    // x - 1 = p^v * u with u a p-adic unit.
    const mpq_class u_q = t / mpq_class(ipow(p, static_cast<unsigned long>(v)));
    const mpz_class u = rational_mod(u_q, modulus);

    mpz_class sum = 0;
    mpz_class u_pow = 1;
    for (unsigned long i = 1;; ++i) {
        u_pow = mod(u_pow * u, modulus);
        const unsigned long e = vp_int(mpz_class(i), p);
        const long term_val = static_cast<long>(i) * v - static_cast<long>(e);
        // i*v - v_p(i) >= i*v - log_p(i) is increasing; stop once it clears N.
        unsigned long log_bound = 0;
        for (unsigned long q = p; q <= i; q *= p) ++log_bound;
        if (static_cast<long>(i) * v - static_cast<long>(log_bound) >= static_cast<long>(precision)) break;
        if (term_val >= static_cast<long>(precision)) continue;
        const mpz_class i_unit = p_free_part(mpz_class(i), p);
        mpz_class term = ipow(p, static_cast<unsigned long>(term_val)) * u_pow * inv_mod(i_unit, modulus);
        if (i % 2 == 0) sum -= term;
        else sum += term;
        sum = mod(sum, modulus);
    }
    PadicApprox out(p, precision, sum);
    if (out.possibly_zero())
        throw IndeterminateError("padic_log: result vanishes at precision " + std::to_string(precision), precision);
    return out;
}

/// v_p(log_p x), escalating precision from 32 by doubling up to max_precision.
inline long log_valuation(const mpq_class& x, unsigned long p, unsigned long max_precision = 4096) {
    if (x == 1) throw DomainError("log_p(1) = 0 has infinite valuation");
    for (unsigned long n = std::min<unsigned long>(32, max_precision);; n *= 2) {
        n = std::min(n, max_precision);
        try {
            return padic_log(x, p, n).valuation();
        } catch (const IndeterminateError&) {
            if (n >= max_precision) throw;
        }
    }
}

/// Whether x lies in (Q_p^×)^n.
///
/// The valuation must be divisible by n; for the unit part u the n-th powers
/// of Z_p^× are, for odd p, the units whose residue is a gcd(n, p-1)-th power
/// mod p and whose 1-unit component lies in 1 + p^(v_p(n)+1) Z_p; for p = 2
/// they are all units when n is odd and 1 + 2^(v_2(n)+2) Z_2 otherwise.
inline bool is_nth_power(const mpq_class& x, unsigned long n, unsigned long p) {
    if (x == 0) throw DomainError("is_nth_power: zero input");
    if (n < 2) throw DomainError("is_nth_power: n must be at least 2");
    const long v = vp(x, p);
    if (v % static_cast<long>(n) != 0) return false;
    mpq_class unit = x;
    if (v >= 0) unit /= mpq_class(ipow(p, static_cast<unsigned long>(v)));
    else unit *= mpq_class(ipow(p, static_cast<unsigned long>(-v)));
    const unsigned long e = vp_int(mpz_class(n), p);
    if (p == 2) {
        if (n % 2 == 1) return true;
        const mpz_class m = ipow(2, e + 2);
        return rational_mod(unit, m) == 1;
    }
    const mpz_class m = ipow(p, e + 2);
    const mpz_class u = rational_mod(unit, m);
    const unsigned long g = std::gcd(n, p - 1);
    const mpz_class pm(p);
    if (pow_mod(u, mpz_class((p - 1) / g), pm) != 1) return false;
    // u^(p-1) strips the Teichmüller component and preserves 1-unit levels.
    const mpz_class one_unit = pow_mod(u, mpz_class(p - 1), m);
    return mod(one_unit - 1, ipow(p, e + 1)) == 0;
}

/// p^(v_p(x)): the element of p^Z with the same valuation as x.
inline mpq_class lambda_rep(const mpq_class& x, unsigned long p) {
    const long v = vp(x, p);
    return v >= 0 ? mpq_class(ipow(p, static_cast<unsigned long>(v)))
                  : mpq_class(mpz_class(1), ipow(p, static_cast<unsigned long>(-v)));
}

/// Ambient parameters of the dense case: G = α^Z β^Z inside 1 + p^k Z_p.
struct Config {
    unsigned long p = 0;
    mpz_class alpha;
    mpz_class beta;
    unsigned long k = 0;
    unsigned long max_precision = 4096;
    unsigned long default_bound = 20;

    /// Validates p, α, β and derives k = v_p(α - 1) = v_p(β - 1).
    static Config make(unsigned long p, const mpz_class& alpha, const mpz_class& beta,
                       unsigned long max_precision = 4096, unsigned long default_bound = 20) {
        if (!is_prime(p)) throw ConfigError("p = " + std::to_string(p) + " is not prime");
        if (alpha <= 1 || beta <= 1) throw ConfigError("alpha and beta must be naturals > 1");
        if (auto w = dependence_witness(alpha, beta))
            throw ConfigError("alpha and beta are multiplicatively dependent: alpha^" + w->m.get_str() +
                              " = beta^" + w->n.get_str() + ", witness (" + w->m.get_str() + ", " +
                              w->n.get_str() + "); the two groups share a finite-index subgroup, so use "
                              "the single-group theory of their intersection instead");
        if (vp_int(alpha, p) != 0 || vp_int(beta, p) != 0)
            throw ConfigError("alpha and beta must be p-adic units (v_p = 0) for the dense case");
        const unsigned long ka = vp_int(alpha - 1, p);
        const unsigned long kb = vp_int(beta - 1, p);
        const unsigned long kmin = p == 2 ? 2 : 1;
        if (ka != kb || ka < kmin) {
            auto [ea, eb] = suggested_powers(p, alpha, beta);
            throw ConfigError("need v_p(alpha - 1) = v_p(beta - 1) >= " + std::to_string(kmin) + ", got " +
                              std::to_string(ka) + " and " + std::to_string(kb) +
                              "; replace the generators by alpha^" + std::to_string(ea) + " and beta^" +
                              std::to_string(eb));
        }
        if (max_precision < 1) throw ConfigError("max_precision must be positive");
        return Config{p, alpha, beta, ka, max_precision, default_bound};
    }

    /// Exponents (e_a, e_b) with v_p(α^e_a - 1) = v_p(β^e_b - 1) >= k_min.
    static std::pair<unsigned long, unsigned long> suggested_powers(unsigned long p, const mpz_class& alpha,
                                                                    const mpz_class& beta) {
        const mpz_class base(p == 2 ? 4 : p);
        auto order = [&](const mpz_class& g) {
            unsigned long e = 1;
            mpz_class acc = mod(g, base);
            while (acc != 1) {
                acc = mod(acc * g, base);
                ++e;
            }
            return e;
        };
        unsigned long ea = order(alpha), eb = order(beta);
        unsigned long ka = vp_int(ipow(alpha, ea) - 1, p), kb = vp_int(ipow(beta, eb) - 1, p);
        for (; ka < kb; ++ka) ea *= p;
        for (; kb < ka; ++kb) eb *= p;
        return {ea, eb};
    }
};

} // namespace pvg
