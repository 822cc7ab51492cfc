#pragma once

// Quantifier elimination and decision over the standard model (G, H, V).
//
// ∃y is eliminated from one NormalConjunct (y = L·x) as follows.
//
//  * If some constraint V(y - c) ≥ ∞ or V(y - c) = ∞ holds, y = c is forced and
//    every constraint is evaluated at c.
//  * Otherwise the congruences y ≡ c_j (mod n_j) must be pairwise compatible;
//    positive H-translates y - e ∈ H must agree with each other, with the
//    negative ones and with every congruence; and the region
//        ⋂ lower balls ∖ ⋃ excluded balls
//    inside the ambient ball B(c_j*, v_p(n_j*)) must be nonempty. The closure of
//    each admissible coset in the completion of G is exactly that ambient
//    ball, so a nonempty open region contains a point of G of the right kind.
//
// The procedure is written once against an AtomOracle. Ground atoms are
// evaluated exactly. An atom that still mentions outer variables is answered
// from a scripted path; when the script runs out the whole run is restarted
// with the path extended both ways. The elimination result is the disjunction
// over accepted paths of the path literals and the side conditions collected.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pvg/arith.hpp"
#include "pvg/errors.hpp"
#include "pvg/formula.hpp"
#include "pvg/group.hpp"
#include "pvg/normalize.hpp"
#include "pvg/padic.hpp"
#include "pvg/ultrametric.hpp"
#include "pvg/value.hpp"

namespace pvg {

using Env = std::map<std::string, GroupElement>;

// ---------------------------------------------------------------------------
// Ground evaluation

class Evaluator {
public:
    explicit Evaluator(const Config& cfg) : cfg_(cfg) {}

    const Config& config() const { return cfg_; }

    ExtValue V(const GroupElement& g) {
        auto it = cache_.find(g);
        if (it != cache_.end()) return it->second;
        const ExtValue v = big_V(cfg_, g);
        cache_.emplace(g, v);
        return v;
    }

    ExtValue value(const ValueTerm& v, const Env& env) {
        switch (v.kind) {
        case ValueTerm::Kind::nat: return ExtValue(v.nat);
        case ValueTerm::Kind::inf: return ExtValue::infinity();
        case ValueTerm::Kind::val: break;
        }
        return V(v.term.linear().evaluate(env)) + v.shift;
    }

    bool eval(const F& ptr, const Env& env) {
        const Formula& f = *ptr;
        switch (f.kind) {
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::ValCmp: return compare(value(f.lhs, env), f.cmp, value(f.rhs, env));
        case Kind::Eq: return f.left.linear().evaluate(env) == f.right.linear().evaluate(env);
        case Kind::Cong: return cong(f.left.linear().evaluate(env), f.right.linear().evaluate(env), f.modulus);
        case Kind::InH: return f.left.linear().evaluate(env).in_H();
        case Kind::Not: return !eval(f.kids.front(), env);
        case Kind::Paren: return eval(f.kids.front(), env);
        case Kind::And:
            for (const auto& k : f.kids)
                if (!eval(k, env)) return false;
            return true;
        case Kind::Or:
            for (const auto& k : f.kids)
                if (eval(k, env)) return true;
            return false;
        case Kind::Exists:
        case Kind::Forall: throw DomainError("ground evaluation needs a quantifier-free formula");
        }
        return false;
    }

    /// Fold every ground atom to a truth value and simplify the connectives.
    F simplify(const F& ptr) {
        const Formula& f = *ptr;
        switch (f.kind) {
        case Kind::True:
        case Kind::False: return ptr;
        case Kind::ValCmp:
        case Kind::Eq:
        case Kind::Cong:
        case Kind::InH:
            if (free_vars(ptr).empty()) return mk_bool(eval(ptr, {}));
            return ptr;
        case Kind::Paren: return simplify(f.kids.front());
        case Kind::Not: {
            F k = simplify(f.kids.front());
            if (k->kind == Kind::True) return mk_false();
            if (k->kind == Kind::False) return mk_true();
            if (k->kind == Kind::Not) return k->kids.front();
            return mk_not(k);
        }
        case Kind::And:
        case Kind::Or: {
            const bool is_and = f.kind == Kind::And;
            std::vector<F> kids;
            std::set<std::string> seen;
            for (const auto& k0 : f.kids) {
                F k = simplify(k0);
                if (k->kind == (is_and ? Kind::False : Kind::True)) return k;
                if (k->kind == (is_and ? Kind::True : Kind::False)) continue;
                std::vector<F> parts = k->kind == f.kind ? k->kids : std::vector<F>{k};
                for (auto& part : parts)
                    if (seen.insert(to_string(part)).second) kids.push_back(part);
            }
            return is_and ? mk_and(std::move(kids)) : mk_or(std::move(kids));
        }
        case Kind::Exists:
        case Kind::Forall: return mk_quant(f.kind, f.var, f.sort, simplify(f.kids.front()));
        }
        return ptr;
    }

private:
    const Config& cfg_;
    std::map<GroupElement, ExtValue> cache_;
};

inline bool eval_ground(const F& f, const Env& env, const Config& cfg) {
    Evaluator ev(cfg);
    return ev.eval(f, env);
}

// ---------------------------------------------------------------------------
// Atoms over bounds

namespace detail {

inline F v_atom(const LinearTerm& t, Cmp c, const ValueTerm& rhs) { return mk_valcmp(ValueTerm::of(t), c, rhs); }

/// a □ b as a formula with trivial cases folded. V is never negative.
inline F compare_atom(const Bound& a, Cmp c, const Bound& b) {
    if (a.is_literal() && b.is_literal()) return mk_bool(compare(a.literal, c, b.literal));
    if (a.is_literal()) return compare_atom(b, flip(c), a);
    const LinearTerm& t = *a.term;
    if (b.is_literal()) {
        // V(t) □ b - s
        const Bound k = b + (-a.shift);
        if (auto r = resolve(c, k)) return mk_bool(*r);
        return v_atom(t, c, k.to_value_term());
    }
    if (t == *b.term) {
        // Both sides agree unless V(t) = ∞, where every shift is absorbed.
        const bool finite_case = compare(ExtValue(a.shift), c, ExtValue(b.shift));
        const bool infinite_case = c == Cmp::le || c == Cmp::eq || c == Cmp::ge;
        if (finite_case == infinite_case) return mk_bool(finite_case);
        F at_inf = v_atom(t, Cmp::ge, ValueTerm::infinity());
        return infinite_case ? at_inf : mk_valcmp(ValueTerm::of(t), Cmp::lt, ValueTerm::infinity());
    }
    return v_atom(t, c, ValueTerm::of(*b.term, b.shift - a.shift));
}

inline F cong_atom(const LinearTerm& t, const mpz_class& n) {
    if (n == 1) return mk_true();
    return mk_cong(t.to_term(), n, LinearTerm().to_term());
}

inline F negate_literal(const F& f) {
    if (f->kind == Kind::Not) return f->kids.front();
    if (f->kind == Kind::ValCmp) {
        static const Cmp opposite[] = {Cmp::ge, Cmp::gt, Cmp::eq, Cmp::lt, Cmp::le};
        if (f->cmp != Cmp::eq) return mk_valcmp(f->lhs, opposite[static_cast<int>(f->cmp)], f->rhs);
    }
    return mk_not(f);
}

/// Bounds on V(t) for terms t already constrained on the current path.
class IntervalStore {
public:
    std::optional<bool> implied(const F& atom) const {
        auto key = single_term(atom);
        if (!key) return std::nullopt;
        auto it = ranges_.find(key->first);
        if (it == ranges_.end()) return std::nullopt;
        const auto [lo, hi] = it->second;
        const Cmp c = atom->cmp;
        const ExtValue k = key->second;
        const bool at_lo = compare(lo, c, k), at_hi = compare(hi, c, k);
        if (c == Cmp::eq) {
            if (lo == hi) return lo == k;
            if (k < lo || hi < k) return false;
            return std::nullopt;
        }
        if (at_lo == at_hi) return at_lo;
        return std::nullopt;
    }

    void record(const F& atom, bool truth) {
        auto key = single_term(atom);
        if (!key) return;
        auto& [lo, hi] = ranges_.try_emplace(key->first, ExtValue(0), ExtValue::infinity()).first->second;
        const ExtValue k = key->second;
        Cmp c = atom->cmp;
        if (!truth) {
            static const Cmp opposite[] = {Cmp::ge, Cmp::gt, Cmp::eq, Cmp::lt, Cmp::le};
            if (c == Cmp::eq) return;
            c = opposite[static_cast<int>(c)];
        }
        switch (c) {
        case Cmp::ge: lo = max(lo, k); break;
        case Cmp::gt: if (k.is_finite()) lo = max(lo, k + 1); break;
        case Cmp::le: hi = min(hi, k); break;
        case Cmp::lt: if (k.is_finite()) hi = min(hi, k - 1); break;
        case Cmp::eq: lo = max(lo, k); hi = min(hi, k); break;
        }
    }

private:
    static std::optional<std::pair<std::string, ExtValue>> single_term(const F& atom) {
        if (atom->kind != Kind::ValCmp || atom->lhs.kind != ValueTerm::Kind::val || atom->lhs.has_shift)
            return std::nullopt;
        if (atom->rhs.kind == ValueTerm::Kind::val) return std::nullopt;
        const ExtValue k = atom->rhs.kind == ValueTerm::Kind::inf ? ExtValue::infinity() : ExtValue(atom->rhs.nat);
        return std::make_pair(atom->lhs.term.str(), k);
    }

    std::map<std::string, std::pair<ExtValue, ExtValue>> ranges_;
};

} // namespace detail

struct NeedBranch {};
struct LeafFalse {};

/// Truth of atoms during one run of the elimination procedure.
class AtomOracle {
public:
    AtomOracle(Evaluator& ev, std::vector<bool> script) : ev_(ev), script_(std::move(script)) {}

    unsigned long p() const { return ev_.config().p; }

    /// Value of V(t) as a bound; ground terms are evaluated.
    Bound value(const LinearTerm& t) {
        if (t.is_ground()) return Bound::of(ev_.V(t.constant()));
        return Bound::of(t);
    }

    Bound ground(const Bound& b) {
        if (b.term && b.term->is_ground()) return Bound::of(ev_.V(b.term->constant()) + b.shift);
        return b;
    }

    /// A control-flow question.
    bool ask(const F& atom0) {
        const F atom = ev_.simplify(atom0);
        if (atom->kind == Kind::True) return true;
        if (atom->kind == Kind::False) return false;
        const std::string key = to_string(atom);
        if (auto it = answers_.find(key); it != answers_.end()) return it->second;
        if (auto implied = store_.implied(atom)) return *implied;
        if (pos_ >= script_.size()) throw NeedBranch{};
        const bool truth = script_[pos_++];
        answers_[key] = truth;
        store_.record(atom, truth);
        path_.push_back(truth ? atom : detail::negate_literal(atom));
        return truth;
    }

    bool le(const Bound& a, const Bound& b) { return ask(detail::compare_atom(a, Cmp::le, b)); }

    /// A condition the answer depends on but the control flow does not.
    void require(const F& f0) {
        const F f = ev_.simplify(f0);
        if (f->kind == Kind::False) throw LeafFalse{};
        if (f->kind != Kind::True) required_.push_back(f);
    }

    F leaf_formula() const {
        std::vector<F> parts = path_;
        parts.insert(parts.end(), required_.begin(), required_.end());
        return mk_and(std::move(parts));
    }

    std::size_t branches_taken() const { return pos_; }

private:
    Evaluator& ev_;
    std::vector<bool> script_;
    std::size_t pos_ = 0;
    std::map<std::string, bool> answers_;
    detail::IntervalStore store_;
    std::vector<F> path_;
    std::vector<F> required_;
};

namespace detail {

struct OracleTree {
    AtomOracle& oracle;
    const std::vector<LinearTerm>& centers;

    Bound dist(std::size_t i, std::size_t j) {
        if (i == j) return Bound::of(ExtValue::infinity());
        return oracle.value(centers[i] - centers[j]);
    }
    bool le(const Bound& a, const Bound& b) { return oracle.le(a, b); }
    Bound succ(const Bound& a) { return a + 1; }
    unsigned long branching() const { return oracle.p(); }
};

inline F constraints_at(const NormalConjunct& nc, const LinearTerm& y, AtomOracle& oracle) {
    std::vector<F> parts;
    for (const auto& phi : nc.phis) parts.push_back(compare_atom(oracle.value(y - phi.center), phi.cmp, oracle.ground(phi.bound)));
    for (const auto& psi : nc.psis) parts.push_back(cong_atom(y - psi.center, psi.modulus));
    if (nc.L > 1) parts.push_back(cong_atom(y, nc.L));
    for (const auto& e : nc.h_pos) parts.push_back(mk_inH((y - e).to_term()));
    for (const auto& e : nc.h_neg) parts.push_back(mk_not(mk_inH((y - e).to_term())));
    return mk_and(std::move(parts));
}

} // namespace detail

/// One run of the ∃y procedure on a normal conjunct (the `rest` literals are
/// the caller's business).
inline bool exists_conjunct(const NormalConjunct& nc, AtomOracle& oracle) {
    using detail::compare_atom;
    const Bound inf = Bound::of(ExtValue::infinity());

    std::vector<Bound> bounds;
    for (const auto& phi : nc.phis) bounds.push_back(oracle.ground(phi.bound));

    // Forced point.
    for (std::size_t i = 0; i < nc.phis.size(); ++i) {
        const Cmp c = nc.phis[i].cmp;
        if ((c == Cmp::ge || c == Cmp::eq) && oracle.le(inf, bounds[i])) {
            oracle.require(detail::constraints_at(nc, nc.phis[i].center, oracle));
            return true;
        }
    }

    std::vector<LinearTerm> centers;
    auto center = [&](const LinearTerm& c) {
        for (std::size_t i = 0; i < centers.size(); ++i)
            if (centers[i] == c) return i;
        centers.push_back(c);
        return centers.size() - 1;
    };
    std::vector<Ball<Bound>> lower, excluded;
    for (std::size_t i = 0; i < nc.phis.size(); ++i) {
        const PhiAtom& phi = nc.phis[i];
        const Bound& b = bounds[i];
        switch (phi.cmp) {
        case Cmp::gt:
            if (oracle.le(inf, b)) return false;
            lower.push_back({center(phi.center), b + 1});
            break;
        case Cmp::ge: lower.push_back({center(phi.center), b}); break;
        case Cmp::eq:
            lower.push_back({center(phi.center), b});
            excluded.push_back({center(phi.center), b + 1});
            break;
        case Cmp::le:
            if (!oracle.le(inf, b)) excluded.push_back({center(phi.center), b + 1});
            break;
        case Cmp::lt:
            if (!oracle.le(inf, b)) excluded.push_back({center(phi.center), b});
            break;
        }
    }

    // Congruences, including y ≡ 0 (mod L).
    std::vector<PsiAtom> psis = nc.psis;
    if (nc.L > 1) psis.push_back({LinearTerm(), nc.L});
    for (std::size_t i = 0; i < psis.size(); ++i)
        for (std::size_t j = i + 1; j < psis.size(); ++j)
            oracle.require(detail::cong_atom(psis[i].center - psis[j].center, gcd(psis[i].modulus, psis[j].modulus)));

    // H-translates.
    if (!nc.h_pos.empty()) {
        const LinearTerm& e0 = nc.h_pos.front();
        for (std::size_t i = 1; i < nc.h_pos.size(); ++i) oracle.require(mk_inH((e0 - nc.h_pos[i]).to_term()));
        for (const auto& e : nc.h_neg) oracle.require(mk_not(mk_inH((e0 - e).to_term())));
        for (const auto& psi : psis) {
            // Some y ∈ e0 + H meets the coset: e0 + iα ≡ c for some 0 ≤ i < n.
            std::vector<F> options;
            const unsigned long n = to_ulong(psi.modulus, "modulus");
            for (unsigned long i = 0; i < n; ++i)
                options.push_back(detail::cong_atom(psi.center - e0 - LinearTerm(mpz_class(i) * GroupElement::alpha()), psi.modulus));
            oracle.require(mk_or(std::move(options)));
        }
    }

    // Ambient ball of the combined coset.
    std::size_t amb = center(LinearTerm());
    long amb_radius = 0;
    for (const auto& psi : psis) {
        const long r = static_cast<long>(vp_int(psi.modulus, oracle.p()));
        if (r > amb_radius) {
            amb_radius = r;
            amb = center(psi.center);
        }
    }
    lower.push_back({amb, Bound::of(ExtValue(amb_radius))});

    detail::OracleTree tree{oracle, centers};
    return region_nonempty(lower, excluded, tree);
}

/// Quantifier-free equivalent of ∃y (conjunct) over the remaining variables.
inline F eliminate_conjunct(const NormalConjunct& nc, Evaluator& ev, std::size_t max_leaves = 1u << 16) {
    std::vector<F> leaves;
    std::vector<std::vector<bool>> todo{{}};
    std::size_t runs = 0;
    while (!todo.empty()) {
        std::vector<bool> script = std::move(todo.back());
        todo.pop_back();
        if (++runs > max_leaves) throw BudgetError("elimination exceeded " + std::to_string(max_leaves) + " case splits");
        AtomOracle oracle(ev, script);
        try {
            if (exists_conjunct(nc, oracle)) leaves.push_back(oracle.leaf_formula());
        } catch (const NeedBranch&) {
            script.push_back(false);
            todo.push_back(script);
            script.back() = true;
            todo.push_back(std::move(script));
        } catch (const LeafFalse&) {
        }
    }
    std::vector<F> parts = nc.rest;
    parts.push_back(mk_or(std::move(leaves)));
    return ev.simplify(mk_and(std::move(parts)));
}

/// Quantifier-free equivalent of ∃x ∈ sort. body, with body quantifier-free.
inline F eliminate_exists(const std::string& x, Sort sort, const F& body, Evaluator& ev) {
    F matrix = sort == Sort::H ? mk_and({body, mk_inH(LinearTerm::variable(x).to_term())}) : body;
    std::vector<F> out;
    for (const auto& nc : normalize_conjuncts(ev.simplify(matrix), x, ev.config().p, HMode::relaxed)) {
        F part = eliminate_conjunct(nc, ev);
        if (part->kind == Kind::True) return part;
        out.push_back(part);
    }
    return ev.simplify(mk_or(std::move(out)));
}

/// Quantifier-free equivalent of any formula, innermost quantifier first.
inline F eliminate(const F& ptr, Evaluator& ev) {
    const Formula& f = *ptr;
    switch (f.kind) {
    case Kind::Exists: return eliminate_exists(f.var, f.sort, eliminate(f.kids.front(), ev), ev);
    case Kind::Forall: {
        F inner = ev.simplify(mk_not(eliminate(f.kids.front(), ev)));
        return ev.simplify(mk_not(eliminate_exists(f.var, f.sort, inner, ev)));
    }
    case Kind::Not: return ev.simplify(mk_not(eliminate(f.kids.front(), ev)));
    case Kind::Paren: return eliminate(f.kids.front(), ev);
    case Kind::And:
    case Kind::Or: {
        std::vector<F> kids;
        for (const auto& k : f.kids) kids.push_back(eliminate(k, ev));
        return ev.simplify(f.kind == Kind::And ? mk_and(std::move(kids)) : mk_or(std::move(kids)));
    }
    default: return ev.simplify(ptr);
    }
}

/// Reject H on compound terms in user input.
inline void check_user_fragment(const F& ptr) {
    const Formula& f = *ptr;
    if (f.kind == Kind::InH) {
        const LinearTerm t = f.left.linear();
        if (!(t.coeffs().size() == 1 && t.constant().is_identity() && t.coeffs().begin()->second == 1) && !t.is_ground())
            throw UnsupportedFragment("H applied to the compound term '" + f.left.str() + "'");
    }
    for (const auto& k : f.kids) check_user_fragment(k);
}

inline bool decide(const F& sentence, const Config& cfg) {
    check_user_fragment(sentence);
    const auto free = free_vars(sentence);
    if (!free.empty()) throw Error("unknown identifier '" + *free.begin() + "'");
    Evaluator ev(cfg);
    F r = eliminate(sentence, ev);
    if (r->kind == Kind::True) return true;
    if (r->kind == Kind::False) return false;
    throw Error("elimination left a residual formula: " + to_string(r));
}

// ---------------------------------------------------------------------------
// Ground systems

struct Coset {
    mpz_class modulus;
    GroupElement rep;
};

/// Solve y ≡ c_j (mod n_j) componentwise; nullopt when inconsistent.
inline std::optional<Coset> combine_congruences(const std::vector<std::pair<mpz_class, GroupElement>>& system) {
    Coset acc{1, GroupElement::identity()};
    for (const auto& [n, c] : system) {
        const mpz_class g = gcd(acc.modulus, n);
        const GroupElement diff = c - acc.rep;
        if (mod(diff.m, g) != 0 || mod(diff.n, g) != 0) return std::nullopt;
        const mpz_class m1 = acc.modulus / g, m2 = n / g;
        const mpz_class inv = m2 == 1 ? mpz_class(0) : inv_mod(m1, m2);
        auto lift = [&](const mpz_class& a, const mpz_class& d) -> mpz_class { return a + acc.modulus * mod((d / g) * inv, m2); };
        const mpz_class L = acc.modulus * m2;
        acc.rep = GroupElement(mod(lift(acc.rep.m, diff.m), L), mod(lift(acc.rep.n, diff.n), L));
        acc.modulus = L;
    }
    return acc;
}

/// Satisfiability of a ground conjunct by the ∃-procedure.
inline bool decide_exists(const NormalConjunct& nc, const Config& cfg) {
    Evaluator ev(cfg);
    for (const auto& r : nc.rest)
        if (!ev.eval(r, {})) return false;
    AtomOracle oracle(ev, {});
    try {
        return exists_conjunct(nc, oracle);
    } catch (const LeafFalse&) {
        return false;
    } catch (const NeedBranch&) {
        throw DomainError("decide_exists needs a ground system");
    }
}

/// Ball-region satisfiability of a ground conjunct, ignoring congruences and H.
inline bool ball_consistency(const NormalConjunct& nc, const Config& cfg) {
    NormalConjunct balls = nc;
    balls.psis.clear();
    balls.h_pos.clear();
    balls.h_neg.clear();
    balls.rest.clear();
    balls.L = 1;
    return decide_exists(balls, cfg);
}

/// Smallest x with |m|, |n| ≤ bound in the order (|m| + |n|, m, n) satisfying φ.
inline std::optional<GroupElement> witness_search(const F& phi, const std::string& x, const Env& params,
                                                  const Config& cfg, long bound, Sort sort = Sort::G) {
    Evaluator ev(cfg);
    Env env = params;
    for (long s = 0; s <= 2 * bound; ++s) {
        for (long m = -std::min(s, bound); m <= std::min(s, bound); ++m) {
            const long rest = s - (m < 0 ? -m : m);
            if (rest > bound) continue;
            for (long n : {-rest, rest}) {
                if (sort == Sort::H && n != 0) continue;
                env[x] = GroupElement(m, n);
                if (ev.eval(phi, env)) return GroupElement(m, n);
                if (rest == 0) break;
            }
        }
    }
    return std::nullopt;
}

} // namespace pvg
