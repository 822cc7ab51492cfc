#pragma once

// The standard model (G, H, V) = (α^Z β^Z, α^Z, V_p) as a pair of p-valued groups.
//
// Group notation is additive throughout: the term l·x - a is realised in the
// field as x^l · a^(-1). An element α^m β^n is stored by its exponent pair.

#include <gmpxx.h>

#include <ostream>
#include <string>
#include <vector>

#include "pvg/arith.hpp"
#include "pvg/errors.hpp"
#include "pvg/padic.hpp"
#include "pvg/value.hpp"

namespace pvg {

struct GroupElement {
    mpz_class m;  // exponent of α
    mpz_class n;  // exponent of β

    GroupElement() = default;
    GroupElement(mpz_class m_, mpz_class n_) : m(std::move(m_)), n(std::move(n_)) {}
    GroupElement(long m_, long n_) : m(m_), n(n_) {}

    static GroupElement identity() { return {0L, 0L}; }
    static GroupElement alpha() { return {1L, 0L}; }
    static GroupElement beta() { return {0L, 1L}; }

    bool is_identity() const { return m == 0 && n == 0; }
    bool in_H() const { return n == 0; }

    GroupElement operator+(const GroupElement& o) const { return {m + o.m, n + o.n}; }
    GroupElement operator-(const GroupElement& o) const { return {m - o.m, n - o.n}; }
    GroupElement operator-() const { return {-m, -n}; }
    friend GroupElement operator*(const mpz_class& c, const GroupElement& g) { return {c * g.m, c * g.n}; }
    GroupElement& operator+=(const GroupElement& o) { m += o.m; n += o.n; return *this; }

    bool operator==(const GroupElement& o) const { return m == o.m && n == o.n; }
    bool operator<(const GroupElement& o) const { return m < o.m || (m == o.m && n < o.n); }

    std::string str() const { return "g(" + m.get_str() + "," + n.get_str() + ")"; }
};

inline std::ostream& operator<<(std::ostream& os, const GroupElement& g) { return os << g.str(); }

/// Exact rational α^m β^n.
inline mpq_class realize(const Config& cfg, const GroupElement& g) {
    mpq_class r = qpow(mpq_class(cfg.alpha), to_long(g.m, "exponent")) *
                  qpow(mpq_class(cfg.beta), to_long(g.n, "exponent"));
    r.canonicalize();
    return r;
}

enum class VMethod { exact, log };

namespace detail {

inline ExtValue big_V_exact(const Config& cfg, const GroupElement& g) {
    if (g.is_identity()) return ExtValue::infinity();
    // α^m β^n = num/den with p-free den, so v_p(α^m β^n - 1) = v_p(num - den).
    const long m = to_long(g.m, "exponent"), n = to_long(g.n, "exponent");
    auto pw = [](const mpz_class& b, long e) { return ipow(b, static_cast<unsigned long>(e)); };
    mpz_class num = pw(cfg.alpha, m > 0 ? m : 0) * pw(cfg.beta, n > 0 ? n : 0);
    mpz_class den = pw(cfg.alpha, m < 0 ? -m : 0) * pw(cfg.beta, n < 0 ? -n : 0);
    return ExtValue(static_cast<std::int64_t>(vp_int(num - den, cfg.p)) - static_cast<std::int64_t>(cfg.k));
}

inline ExtValue big_V_log(const Config& cfg, const GroupElement& g) {
    if (g.is_identity()) return ExtValue::infinity();
    for (unsigned long prec = std::min<unsigned long>(32, cfg.max_precision);; prec *= 2) {
        prec = std::min(prec, cfg.max_precision);
        if (prec > cfg.k) {
            const PadicApprox la = padic_log(mpq_class(cfg.alpha), cfg.p, prec);
            const PadicApprox lb = padic_log(mpq_class(cfg.beta), cfg.p, prec);
            const PadicApprox s = PadicApprox(cfg.p, prec, g.m * la.residue() + g.n * lb.residue());
            if (!s.possibly_zero()) return ExtValue(s.valuation() - static_cast<std::int64_t>(cfg.k));
        }
        if (prec >= cfg.max_precision)
            throw IndeterminateError("V via logarithms not certified; raise --precision", prec);
    }
}

} // namespace detail

/// V(g) = v_p(α^m β^n - 1) - k, with V(identity) = ∞.
inline ExtValue big_V(const Config& cfg, const GroupElement& g, VMethod method = VMethod::exact) {
    return method == VMethod::exact ? detail::big_V_exact(cfg, g) : detail::big_V_log(cfg, g);
}

/// min(V(g), cap) computed modulo p^(k+cap); `saturated` is set when V(g) >= cap.
struct CappedValue {
    std::int64_t value;
    bool saturated;
};

inline CappedValue capped_V(const Config& cfg, const GroupElement& g, std::int64_t cap) {
    if (cap <= 0) return {cap, true};
    const mpz_class modulus = ipow(cfg.p, cfg.k + static_cast<unsigned long>(cap));
    const mpz_class r = mod(pow_mod(cfg.alpha, g.m, modulus) * pow_mod(cfg.beta, g.n, modulus) - 1, modulus);
    if (r == 0) return {cap, true};
    return {static_cast<std::int64_t>(vp_int(r, cfg.p)) - static_cast<std::int64_t>(cfg.k), false};
}

/// g ≡_n h: the exponent pairs agree componentwise modulo n.
inline bool cong(const GroupElement& g, const GroupElement& h, const mpz_class& n) {
    if (n < 1) throw DomainError("congruence modulus must be at least 1");
    return mod(g.m - h.m, n) == 0 && mod(g.n - h.n, n) == 0;
}

/// The unique i in 1..p-1 with V(x - i·y) > V(x), for V(x) = V(y) < ∞.
inline unsigned long residue_unit(const Config& cfg, const GroupElement& x, const GroupElement& y) {
    const ExtValue vx = big_V(cfg, x), vy = big_V(cfg, y);
    if (vx.is_infinite() || vx != vy)
        throw DomainError("residue_unit needs V(x) = V(y) < inf, got " + vx.str() + " and " + vy.str());
    const std::int64_t cap = vx.value() + 1;
    for (unsigned long i = 1; i < cfg.p; ++i) {
        const CappedValue c = capped_V(cfg, x - mpz_class(i) * y, cap);
        if (c.saturated) return i;
    }
    throw DomainError("no residue unit found; the configuration is inconsistent");
}

/// Representatives (i, j), 0 <= i, j < n, of G/nG; with `subgroup_H`, (i, 0) for H/nH.
inline std::vector<GroupElement> quotient_reps(unsigned long n, bool subgroup_H = false) {
    if (n < 2) throw DomainError("quotient_reps needs n >= 2");
    std::vector<GroupElement> out;
    for (unsigned long i = 0; i < n; ++i) {
        if (subgroup_H) {
            out.emplace_back(static_cast<long>(i), 0L);
            continue;
        }
        for (unsigned long j = 0; j < n; ++j) out.emplace_back(static_cast<long>(i), static_cast<long>(j));
    }
    return out;
}

} // namespace pvg
