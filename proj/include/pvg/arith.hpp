#pragma once

// Small helpers over GMP integers and rationals shared by every module.

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "pvg/errors.hpp"

namespace pvg {

inline bool is_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Exponent of p in a nonzero integer.
inline unsigned long vp_int(const mpz_class& z, unsigned long p) {
    if (z == 0) throw DomainError("v_p(0) is infinite");
    mpz_class rest, prime(p);
    return mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), prime.get_mpz_t());
}

/// Strips every factor p from z (z nonzero) and returns the p-free part.
inline mpz_class p_free_part(const mpz_class& z, unsigned long p) {
    mpz_class rest, prime(p);
    mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), prime.get_mpz_t());
    return rest;
}

inline mpz_class ipow(const mpz_class& base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline mpz_class ipow(unsigned long base, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

/// Least nonnegative residue.
inline mpz_class mod(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline mpz_class inv_mod(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw DomainError("element " + a.get_str() + " is not invertible modulo " + m.get_str());
    return r;
}

/// a^e mod m for any integer e (negative exponents need gcd(a, m) = 1).
inline mpz_class pow_mod(const mpz_class& a, const mpz_class& e, const mpz_class& m) {
    mpz_class base = mod(a, m);
    mpz_class ex = e;
    if (ex < 0) {
        base = inv_mod(base, m);
        ex = -ex;
    }
    mpz_class r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), ex.get_mpz_t(), m.get_mpz_t());
    return r;
}

/// Residue of a rational with p-free denominator modulo m = p^N.
inline mpz_class rational_mod(const mpq_class& q, const mpz_class& m) {
    return mod(q.get_num() * inv_mod(q.get_den(), m), m);
}

inline mpz_class gcd(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline mpz_class lcm(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline long to_long(const mpz_class& z, const char* what = "integer") {
    if (!z.fits_slong_p()) throw DomainError(std::string(what) + " does not fit a machine word: " + z.get_str());
    return z.get_si();
}

inline unsigned long to_ulong(const mpz_class& z, const char* what = "integer") {
    if (!z.fits_ulong_p()) throw DomainError(std::string(what) + " does not fit an unsigned machine word: " + z.get_str());
    return z.get_ui();
}

/// Rational base^e for any integer exponent.
inline mpq_class qpow(const mpq_class& base, long e) {
    mpq_class r(ipow(base.get_num(), static_cast<unsigned long>(e < 0 ? -e : e)),
                ipow(base.get_den(), static_cast<unsigned long>(e < 0 ? -e : e)));
    if (e < 0) {
        if (base == 0) throw DomainError("zero to a negative power");
        r = 1 / r;
    }
    r.canonicalize();
    return r;
}

} // namespace pvg
