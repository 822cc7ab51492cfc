#pragma once

// Normal form of a quantifier-free formula with respect to one variable x.
//
// The result is a disjunction of NormalConjuncts. In each, every literal that
// mentions x has been rewritten in terms of y = L·x for one common L:
//
//   V(y - c) □ bound        bound x-free: V(b) + s, a natural, or ∞
//   y - c ≡_n 0
//   y - e ∈ H,  y - e ∉ H
//
// Alignment uses V(q·t) = V(t) + v_p(q), q·t ≡_{qn} 0 ⟺ t ≡_n 0, and purity of
// H (q·t ∈ H ⟺ t ∈ H). A comparison with y on both sides is split three ways
// by the ultrametric case distinction on V(y - c1) against V(c1 - c2).

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pvg/arith.hpp"
#include "pvg/errors.hpp"
#include "pvg/formula.hpp"
#include "pvg/group.hpp"
#include "pvg/value.hpp"

namespace pvg {

/// V(t) + shift, or a literal in Z ∪ {∞}.
struct Bound {
    std::optional<LinearTerm> term;
    std::int64_t shift = 0;
    ExtValue literal;

    static Bound of(ExtValue v) { return {std::nullopt, 0, v}; }
    static Bound of(LinearTerm t, std::int64_t s = 0);

    bool is_literal() const { return !term.has_value(); }

    Bound operator+(std::int64_t k) const {
        Bound b = *this;
        if (term) {
            b.shift += k;
        } else {
            b.literal = literal + k;
        }
        return b;
    }

    ValueTerm to_value_term() const {
        if (term) return ValueTerm::of(*term, shift);
        if (literal.is_infinite()) return ValueTerm::infinity();
        return ValueTerm::number(literal.value());
    }

    bool operator==(const Bound&) const = default;
};

/// Sign-normalise a term so its leading coefficient is positive; V(-t) = V(t).
inline LinearTerm canonical_sign(const LinearTerm& t) {
    int sign = 0;
    if (!t.coeffs().empty()) {
        sign = sgn(t.coeffs().begin()->second);
    } else if (t.constant().m != 0) {
        sign = sgn(t.constant().m);
    } else {
        sign = sgn(t.constant().n);
    }
    return sign < 0 ? -t : t;
}

inline Bound Bound::of(LinearTerm t, std::int64_t s) {
    if (t.is_zero()) return of(ExtValue::infinity());
    return {canonical_sign(t), s, ExtValue(0)};
}

/// gcd of every coefficient and constant exponent; 0 for the zero term.
inline mpz_class content(const LinearTerm& t) {
    mpz_class g = gcd(t.constant().m, t.constant().n);
    for (const auto& [v, c] : t.coeffs()) g = gcd(g, c);
    return g;
}

inline LinearTerm divide_exact(const LinearTerm& t, const mpz_class& d) {
    LinearTerm out(GroupElement(t.constant().m / d, t.constant().n / d));
    for (const auto& [v, c] : t.coeffs()) out = out + LinearTerm::variable(v, c / d);
    return out;
}

struct PhiAtom {
    LinearTerm center;
    Cmp cmp;
    Bound bound;
};

struct PsiAtom {
    LinearTerm center;
    mpz_class modulus;
};

struct NormalConjunct {
    std::string var;
    mpz_class L = 1;
    std::vector<PhiAtom> phis;
    std::vector<PsiAtom> psis;
    std::vector<LinearTerm> h_pos;   // y - e ∈ H
    std::vector<LinearTerm> h_neg;   // y - e ∉ H
    std::vector<F> rest;             // literals free of the variable

    /// The term y - c written back in x.
    LinearTerm shifted(const LinearTerm& c) const { return LinearTerm::variable(var, L) - c; }

    F to_formula() const {
        std::vector<F> lits;
        for (const auto& phi : phis)
            lits.push_back(mk_valcmp(ValueTerm::of(shifted(phi.center)), phi.cmp, phi.bound.to_value_term()));
        for (const auto& psi : psis)
            lits.push_back(mk_cong(LinearTerm::variable(var, L).to_term(), psi.modulus, psi.center.to_term()));
        for (const auto& e : h_pos) lits.push_back(mk_inH(shifted(e).to_term()));
        for (const auto& e : h_neg) lits.push_back(mk_not(mk_inH(shifted(e).to_term())));
        for (const auto& r : rest) lits.push_back(r);
        return mk_and(std::move(lits));
    }
};

enum class HMode { strict, relaxed };

namespace detail {

/// Push negations to atoms; only Eq, Cong and InH remain under a Not.
inline F nnf(const F& ptr, bool negate) {
    const Formula& f = strip(ptr);
    switch (f.kind) {
    case Kind::True:
    case Kind::False: return mk_bool((f.kind == Kind::True) != negate);
    case Kind::ValCmp: {
        if (!negate) return mk_valcmp(f.lhs, f.cmp, f.rhs);
        static const Cmp opposite[] = {Cmp::ge, Cmp::gt, Cmp::eq, Cmp::lt, Cmp::le};
        if (f.cmp == Cmp::eq) {
            return mk_or({mk_valcmp(f.lhs, Cmp::lt, f.rhs), mk_valcmp(f.lhs, Cmp::gt, f.rhs)});
        }
        return mk_valcmp(f.lhs, opposite[static_cast<int>(f.cmp)], f.rhs);
    }
    case Kind::Eq:
    case Kind::Cong:
    case Kind::InH: {
        F atom = mk(Formula(f));
        return negate ? mk_not(atom) : atom;
    }
    case Kind::Not: return nnf(f.kids.front(), !negate);
    case Kind::And:
    case Kind::Or: {
        std::vector<F> kids;
        for (const auto& k : f.kids) kids.push_back(nnf(k, negate));
        return (f.kind == Kind::And) != negate ? mk_and(std::move(kids)) : mk_or(std::move(kids));
    }
    default: throw DomainError("normal forms need a quantifier-free formula");
    }
}

using Clause = std::vector<F>;

inline std::vector<Clause> dnf(const F& f, std::size_t budget) {
    switch (f->kind) {
    case Kind::True: return {{}};
    case Kind::False: return {};
    case Kind::Or: {
        std::vector<Clause> out;
        for (const auto& k : f->kids) {
            auto part = dnf(k, budget);
            out.insert(out.end(), part.begin(), part.end());
            if (out.size() > budget) throw BudgetError("disjunctive normal form exceeds " + std::to_string(budget) + " clauses");
        }
        return out;
    }
    case Kind::And: {
        std::vector<Clause> out{{}};
        for (const auto& k : f->kids) {
            auto part = dnf(k, budget);
            std::vector<Clause> next;
            for (const auto& a : out)
                for (const auto& b : part) {
                    Clause c = a;
                    c.insert(c.end(), b.begin(), b.end());
                    next.push_back(std::move(c));
                    if (next.size() > budget)
                        throw BudgetError("disjunctive normal form exceeds " + std::to_string(budget) + " clauses");
                }
            out = std::move(next);
        }
        return out;
    }
    default: return {{f}};
    }
}

/// A literal that mentions x, before the common coefficient is known.
struct Pre {
    enum class Type { one_sided, two_sided, cong, not_cong, h_pos, h_neg };
    Type type;
    mpz_class l;                 // coefficient of x (> 0)
    LinearTerm a;                // x-free part: l·x - a
    std::int64_t r = 0;
    Cmp cmp = Cmp::eq;
    Bound bound;                 // one_sided: V(l·x - a) + r □ bound
    mpz_class l2;                // two_sided right side
    LinearTerm a2;
    std::int64_t r2 = 0;
    mpz_class modulus;           // cong / not_cong
};

/// Divide t by `divisor` and orient it as l·x - a with l > 0.
inline void split_linear(LinearTerm t, const std::string& x, const mpz_class& divisor, mpz_class& l, LinearTerm& a) {
    t = divide_exact(t, divisor);
    if (t.coeff(x) < 0) t = -t;
    l = t.coeff(x);
    a = LinearTerm::variable(x, l) - t;
}

/// A value side V(l·x - a) + r, or an x-free bound.
struct Side {
    bool has_x = false;
    mpz_class l;      // > 0 when has_x
    LinearTerm a;     // x-free
    std::int64_t r = 0;
    Bound bound;      // when !has_x
};

inline Side side_of(const ValueTerm& v, const std::string& x, unsigned long p) {
    Side s;
    if (v.kind == ValueTerm::Kind::nat) {
        s.bound = Bound::of(ExtValue(v.nat));
        return s;
    }
    if (v.kind == ValueTerm::Kind::inf) {
        s.bound = Bound::of(ExtValue::infinity());
        return s;
    }
    const LinearTerm t = v.term.linear();
    if (!t.mentions(x)) {
        s.bound = Bound::of(t, v.shift);
        return s;
    }
    const mpz_class g = content(t);
    s.has_x = true;
    s.r = v.shift + static_cast<std::int64_t>(vp_int(g, p));
    split_linear(t, x, g, s.l, s.a);
    return s;
}

inline std::optional<bool> resolve(Cmp cmp, const Bound& b) {
    if (!b.is_literal()) return std::nullopt;
    const ExtValue& t = b.literal;
    if (t.is_infinite()) {
        if (cmp == Cmp::gt) return false;
        if (cmp == Cmp::le) return true;
        return std::nullopt;
    }
    const std::int64_t v = t.value();
    switch (cmp) {
    case Cmp::ge: if (v <= 0) return true; break;
    case Cmp::gt: if (v < 0) return true; break;
    case Cmp::le: if (v < 0) return false; break;
    case Cmp::lt: if (v <= 0) return false; break;
    case Cmp::eq: if (v < 0) return false; break;
    }
    return std::nullopt;
}

/// y-level constraint alternatives contributed by one literal.
struct Piece {
    std::vector<PhiAtom> phis;
    std::vector<PsiAtom> psis;
    std::vector<LinearTerm> h_pos, h_neg;
};

inline bool add_phi(Piece& piece, LinearTerm c, Cmp cmp, Bound b) {
    if (auto r = resolve(cmp, b)) return *r;
    piece.phis.push_back({std::move(c), cmp, std::move(b)});
    return true;
}

inline std::vector<Piece> lift(const Pre& pre, const mpz_class& L, unsigned long p) {
    const mpz_class q = L / pre.l;
    const LinearTerm c = q * pre.a;
    const std::int64_t dq = static_cast<std::int64_t>(vp_int(q, p));
    std::vector<Piece> out;
    switch (pre.type) {
    case Pre::Type::one_sided: {
        Piece piece;
        if (add_phi(piece, c, pre.cmp, pre.bound + (dq - pre.r))) out.push_back(std::move(piece));
        break;
    }
    case Pre::Type::two_sided: {
        const mpz_class q2 = L / pre.l2;
        const LinearTerm c2 = q2 * pre.a2;
        const std::int64_t R1 = pre.r - dq;
        const std::int64_t R2 = pre.r2 - static_cast<std::int64_t>(vp_int(q2, p));
        const Bound d = Bound::of(c - c2);
        {
            Piece piece;  // V(y - c) < d: both sides equal V(y - c)
            if (compare(ExtValue(R1), pre.cmp, ExtValue(R2)) && add_phi(piece, c, Cmp::lt, d)) out.push_back(piece);
        }
        {
            Piece piece;  // V(y - c) > d: right side is d
            if (add_phi(piece, c, Cmp::gt, d) && add_phi(piece, c, pre.cmp, d + (R2 - R1))) out.push_back(piece);
        }
        {
            Piece piece;  // V(y - c) = d: right side is at least d
            if (add_phi(piece, c, Cmp::eq, d) && add_phi(piece, c2, Cmp::ge, d) &&
                add_phi(piece, c2, flip(pre.cmp), d + (R1 - R2)))
                out.push_back(piece);
        }
        break;
    }
    case Pre::Type::cong: {
        Piece piece;
        piece.psis.push_back({c, q * pre.modulus});
        out.push_back(std::move(piece));
        break;
    }
    case Pre::Type::not_cong: {
        for (const GroupElement& rep : quotient_reps(to_ulong(pre.modulus, "modulus"))) {
            if (rep.is_identity()) continue;
            Piece piece;
            piece.psis.push_back({c + q * LinearTerm(rep), q * pre.modulus});
            out.push_back(std::move(piece));
        }
        break;
    }
    case Pre::Type::h_pos:
    case Pre::Type::h_neg: {
        Piece piece;
        (pre.type == Pre::Type::h_pos ? piece.h_pos : piece.h_neg).push_back(c);
        out.push_back(std::move(piece));
        break;
    }
    }
    return out;
}

/// Classify a literal that mentions x; nullopt when it is identically false.
/// Whether x survives in the linear forms of a literal; x - x does not count.
inline bool mentions_linearly(const F& lit, const std::string& x) {
    const Formula& f = lit->kind == Kind::Not ? *lit->kids.front() : *lit;
    auto val = [&](const ValueTerm& v) { return v.kind == ValueTerm::Kind::val && v.term.linear().mentions(x); };
    switch (f.kind) {
    case Kind::ValCmp: return val(f.lhs) || val(f.rhs);
    case Kind::Eq:
    case Kind::Cong: return (f.left.linear() - f.right.linear()).mentions(x);
    case Kind::InH: return f.left.linear().mentions(x);
    default: return free_vars(lit).count(x) != 0;
    }
}

inline std::optional<std::vector<Pre>> classify(const F& lit, const std::string& x, unsigned long p, HMode mode) {
    const bool negated = lit->kind == Kind::Not;
    const Formula& f = negated ? *lit->kids.front() : *lit;
    Pre pre;
    switch (f.kind) {
    case Kind::ValCmp: {
        Side lhs = side_of(f.lhs, x, p), rhs = side_of(f.rhs, x, p);
        Cmp cmp = f.cmp;
        if (!lhs.has_x) {
            std::swap(lhs, rhs);
            cmp = flip(cmp);
        }
        pre.l = lhs.l;
        pre.a = lhs.a;
        pre.r = lhs.r;
        pre.cmp = cmp;
        if (rhs.has_x) {
            pre.type = Pre::Type::two_sided;
            pre.l2 = rhs.l;
            pre.a2 = rhs.a;
            pre.r2 = rhs.r;
        } else {
            pre.type = Pre::Type::one_sided;
            pre.bound = rhs.bound;
        }
        return std::vector<Pre>{pre};
    }
    case Kind::Eq: {
        const LinearTerm t = f.left.linear() - f.right.linear();
        split_linear(t, x, content(t), pre.l, pre.a);
        pre.type = Pre::Type::one_sided;
        pre.cmp = negated ? Cmp::lt : Cmp::eq;
        pre.bound = Bound::of(ExtValue::infinity());
        return std::vector<Pre>{pre};
    }
    case Kind::Cong: {
        const LinearTerm t = f.left.linear() - f.right.linear();
        const mpz_class d = gcd(content(t), f.modulus);
        pre.modulus = f.modulus / d;
        if (pre.modulus == 1) {
            if (negated) return std::nullopt;
            return std::vector<Pre>{};
        }
        split_linear(t, x, d, pre.l, pre.a);
        pre.type = negated ? Pre::Type::not_cong : Pre::Type::cong;
        return std::vector<Pre>{pre};
    }
    case Kind::InH: {
        const LinearTerm t = f.left.linear();
        if (mode == HMode::strict && !(t == LinearTerm::variable(x)))
            throw UnsupportedFragment("H applied to the compound term '" + f.left.str() + "'");
        split_linear(t, x, content(t), pre.l, pre.a);
        pre.type = negated ? Pre::Type::h_neg : Pre::Type::h_pos;
        return std::vector<Pre>{pre};
    }
    default: throw DomainError("unexpected literal in normal form");
    }
}

} // namespace detail

inline constexpr std::size_t default_dnf_budget = 200000;

/// Normal form of a quantifier-free formula with respect to `x`.
inline std::vector<NormalConjunct> normalize_conjuncts(const F& f, const std::string& x, unsigned long p,
                                                       HMode mode = HMode::relaxed,
                                                       std::size_t budget = default_dnf_budget) {
    using namespace detail;
    std::vector<NormalConjunct> out;
    for (const Clause& clause : dnf(nnf(f, false), budget)) {
        NormalConjunct base;
        base.var = x;
        std::vector<Pre> pres;
        bool dead = false;
        for (const F& lit : clause) {
            if (!mentions_linearly(lit, x)) {
                base.rest.push_back(free_vars(lit).count(x) ? substitute(lit, x, LinearTerm()) : lit);
                continue;
            }
            auto classified = classify(lit, x, p, mode);
            if (!classified) {
                dead = true;
                break;
            }
            pres.insert(pres.end(), classified->begin(), classified->end());
        }
        if (dead) continue;
        for (const Pre& pre : pres) {
            base.L = lcm(base.L, pre.l);
            if (pre.type == Pre::Type::two_sided) base.L = lcm(base.L, pre.l2);
        }
        std::vector<NormalConjunct> acc{base};
        for (const Pre& pre : pres) {
            std::vector<Piece> pieces = lift(pre, base.L, p);
            std::vector<NormalConjunct> next;
            for (const auto& partial : acc)
                for (const Piece& piece : pieces) {
                    NormalConjunct nc = partial;
                    nc.phis.insert(nc.phis.end(), piece.phis.begin(), piece.phis.end());
                    nc.psis.insert(nc.psis.end(), piece.psis.begin(), piece.psis.end());
                    nc.h_pos.insert(nc.h_pos.end(), piece.h_pos.begin(), piece.h_pos.end());
                    nc.h_neg.insert(nc.h_neg.end(), piece.h_neg.begin(), piece.h_neg.end());
                    next.push_back(std::move(nc));
                    if (next.size() > budget) throw BudgetError("normal form exceeds clause budget");
                }
            acc = std::move(next);
        }
        out.insert(out.end(), acc.begin(), acc.end());
    }
    return out;
}

/// The same normal form as a formula.
inline F normalize(const F& f, const std::string& x, unsigned long p, HMode mode = HMode::strict) {
    std::vector<F> disjuncts;
    for (const auto& nc : normalize_conjuncts(f, x, p, mode)) disjuncts.push_back(nc.to_formula());
    return mk_or(std::move(disjuncts));
}

} // namespace pvg
