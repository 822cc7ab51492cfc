#pragma once

// The discrete case: α, β of positive valuation. The maps τ, σ and α^n ↦ α^(v_p(n))
// are computed exactly, and atomic (N, +, V_p, p^x, <)-statements are compiled to
// statements about α-powers and evaluated both ways.

#include <gmpxx.h>

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pvg/arith.hpp"
#include "pvg/errors.hpp"
#include "pvg/independence.hpp"
#include "pvg/padic.hpp"

namespace pvg {

struct DiscreteConfig {
    unsigned long p = 0;
    mpz_class alpha0, beta0;      // as given
    unsigned long ea = 1, eb = 1; // alpha = alpha0^ea, beta = beta0^eb
    mpz_class alpha, beta;
    mpq_class gamma;              // alpha / beta, in 1 + p Z_p
    unsigned long v_alpha = 0;    // v_p(alpha) = v_p(beta)
    unsigned long log_power = 1;  // γ^log_power is in 1 + 4 Z_2 when p = 2
    long gamma_shift = 0;         // v_p(γ^log_power - 1)

    static DiscreteConfig make(unsigned long p, const mpz_class& alpha, const mpz_class& beta) {
        if (!is_prime(p)) throw ConfigError("p = " + std::to_string(p) + " is not prime");
        if (alpha <= 1 || beta <= 1) throw ConfigError("alpha and beta must be naturals > 1");
        const unsigned long va = vp_int(alpha, p), vb = vp_int(beta, p);
        if (va == 0 || vb == 0) throw ConfigError("the discrete case needs v_p(alpha), v_p(beta) > 0");
        if (auto w = dependence_witness(alpha, beta))
            throw ConfigError("alpha and beta are multiplicatively dependent: alpha^" + w->m.get_str() + " = beta^" +
                              w->n.get_str() + "; the groups share a finite-index subgroup, so the theory is that of "
                              "a single group");
        DiscreteConfig c;
        c.p = p;
        c.alpha0 = alpha;
        c.beta0 = beta;
        const unsigned long L = to_ulong(lcm(mpz_class(va), mpz_class(vb)));
        c.ea = L / va;
        c.eb = L / vb;
        mpq_class g(ipow(alpha, c.ea), ipow(beta, c.eb));
        g.canonicalize();
        if (vp(g - 1, p) < 1) {
            // Raise to the order of γ in F_p^× so that γ ≡ 1 (mod p).
            const mpz_class r = rational_mod(g, mpz_class(p));
            unsigned long e = 1;
            for (mpz_class acc = r; acc != 1; acc = mod(acc * r, mpz_class(p))) ++e;
            c.ea *= e;
            c.eb *= e;
        }
        c.alpha = ipow(alpha, c.ea);
        c.beta = ipow(beta, c.eb);
        c.gamma = mpq_class(c.alpha, c.beta);
        c.gamma.canonicalize();
        c.v_alpha = vp_int(c.alpha, p);
        c.log_power = p == 2 && vp(c.gamma - 1, p) == 1 ? 2 : 1;
        c.gamma_shift = vp(qpow(c.gamma, static_cast<long>(c.log_power)) - 1, p);
        return c;
    }
};

/// τ(α^n) = β^n, the element of β^Z with the valuation of α^n.
inline mpq_class tau(const DiscreteConfig& c, long n) { return qpow(mpq_class(c.beta), n); }

/// σ(α^n) = α^n / τ(α^n) = γ^n.
inline mpq_class sigma(const DiscreteConfig& c, long n) { return qpow(c.gamma, n); }

struct VpMap {
    unsigned long value;  // v_p(n)
    unsigned long m;      // v_p(n) = v(α^m) + k
    unsigned long k;      // 0 <= k < v_p(α)
};

/// v_p(n), computed directly and as v_p(γ_L^n - 1) - v_p(γ_L - 1); both must agree.
inline VpMap vp_selfmap(const DiscreteConfig& c, const mpz_class& n) {
    if (n < 1) throw DomainError("vp_selfmap needs n >= 1; v_p(0) is undefined");
    const unsigned long direct = vp_int(n, c.p);
    const mpq_class gl = qpow(c.gamma, static_cast<long>(c.log_power));
    const long via_gamma = vp(qpow(gl, to_long(n, "n")) - 1, c.p) - c.gamma_shift;
    if (via_gamma != static_cast<long>(direct))
        throw Error("valuation identity failed at n = " + n.get_str() + ": " + std::to_string(via_gamma) +
                    " != " + std::to_string(direct));
    return {direct, direct / c.v_alpha, direct % c.v_alpha};
}

/// p^n as min{k in N : v_p(k) = n}, cross-checked against direct exponentiation.
inline mpz_class p_pow(unsigned long p, unsigned long n, std::uint64_t max_steps = 100'000'000) {
    std::uint64_t k = 1;
    for (; vp_int(mpz_class(static_cast<unsigned long>(k)), p) != n; ++k)
        if (k >= max_steps) throw BudgetError("p^" + std::to_string(n) + " is beyond the scan limit");
    const mpz_class r(static_cast<unsigned long>(k));
    if (r != ipow(p, n)) throw Error("p_pow characterization disagrees with exponentiation");
    return r;
}

/// p^(v_p(n)), the highest power of p dividing n.
inline mpz_class big_Vp(unsigned long p, const mpz_class& n) {
    if (n < 1) throw DomainError("V_p needs n >= 1");
    return ipow(p, vp_int(n, p));
}

// ---------------------------------------------------------------------------
// The arithmetic language over (N, +, V_p, p^x, <)

struct ArithTerm {
    enum class Kind { num, var, add, vp, ppow } kind = Kind::num;
    mpz_class value;
    std::string name;
    std::vector<std::shared_ptr<const ArithTerm>> kids;
};
using AT = std::shared_ptr<const ArithTerm>;

struct ArithFormula {
    enum class Kind { atom, not_, and_, or_, forall, exists } kind = Kind::atom;
    std::string cmp;  // =, <, <=, >, >=, !=
    AT lhs, rhs;
    std::string var;
    AT bound;  // bounded quantifier: var < bound; null when unbounded
    std::vector<std::shared_ptr<const ArithFormula>> kids;
};
using AF = std::shared_ptr<const ArithFormula>;

namespace detail {

class ArithParser {
public:
    explicit ArithParser(std::string s) : s_(std::move(s)) {}

    AF parse() {
        AF f = disj();
        skip();
        if (pos_ != s_.size()) error("unexpected input");
        return f;
    }

private:
    std::string s_;
    std::size_t pos_ = 0;

    [[noreturn]] void error(const std::string& msg) const { throw ParseError(msg, 1, pos_ + 1); }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(const std::string& t) {
        skip();
        return s_.compare(pos_, t.size(), t) == 0;
    }
    bool eat(const std::string& t) {
        if (!peek(t)) return false;
        pos_ += t.size();
        return true;
    }
    bool word(const std::string& w) {
        skip();
        if (s_.compare(pos_, w.size(), w) != 0) return false;
        const std::size_t end = pos_ + w.size();
        if (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) return false;
        pos_ = end;
        return true;
    }
    void expect(const std::string& t) {
        if (!eat(t)) error("expected '" + t + "'");
    }
    std::string ident() {
        skip();
        const std::size_t start = pos_;
        if (pos_ >= s_.size() || !std::isalpha(static_cast<unsigned char>(s_[pos_]))) error("expected identifier");
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        std::string id = s_.substr(start, pos_ - start);
        for (const char* kw : {"and", "or", "not", "forall", "exists", "p", "V_p"})
            if (id == kw) {
                pos_ = start;
                error("'" + id + "' is reserved");
            }
        return id;
    }

    AF disj() {
        AF f = conj();
        while (word("or")) f = std::make_shared<ArithFormula>(ArithFormula{ArithFormula::Kind::or_, "", {}, {}, "", {}, {f, conj()}});
        return f;
    }
    AF conj() {
        AF f = unary();
        while (word("and")) f = std::make_shared<ArithFormula>(ArithFormula{ArithFormula::Kind::and_, "", {}, {}, "", {}, {f, unary()}});
        return f;
    }
    AF unary() {
        if (word("not")) return std::make_shared<ArithFormula>(ArithFormula{ArithFormula::Kind::not_, "", {}, {}, "", {}, {unary()}});
        for (auto [kw, kind] : {std::pair{"forall", ArithFormula::Kind::forall}, {"exists", ArithFormula::Kind::exists}})
            if (word(kw)) {
                ArithFormula q;
                q.kind = kind;
                q.var = ident();
                if (eat("<")) q.bound = term();
                expect(".");
                q.kids = {disj()};
                return std::make_shared<ArithFormula>(std::move(q));
            }
        const std::size_t save = pos_;
        try {
            return atom();
        } catch (const ParseError&) {
            pos_ = save;
            if (!eat("(")) throw;
        }
        AF f = disj();
        expect(")");
        return f;
    }
    AF atom() {
        ArithFormula a;
        a.lhs = term();
        skip();
        for (const char* op : {"<=", ">=", "!=", "=", "<", ">"})
            if (eat(op)) {
                a.cmp = op;
                break;
            }
        if (a.cmp.empty()) error("expected a comparison");
        a.rhs = term();
        return std::make_shared<ArithFormula>(std::move(a));
    }
    AT term() {
        AT t = factor();
        while (eat("+")) t = std::make_shared<ArithTerm>(ArithTerm{ArithTerm::Kind::add, 0, "", {t, factor()}});
        return t;
    }
    AT factor() {
        skip();
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return std::make_shared<ArithTerm>(ArithTerm{ArithTerm::Kind::num, mpz_class(s_.substr(start, pos_ - start)), "", {}});
        }
        if (word("V_p")) {
            expect("(");
            AT t = term();
            expect(")");
            return std::make_shared<ArithTerm>(ArithTerm{ArithTerm::Kind::vp, 0, "", {t}});
        }
        if (word("p")) {
            expect("^");
            return std::make_shared<ArithTerm>(ArithTerm{ArithTerm::Kind::ppow, 0, "", {factor()}});
        }
        if (eat("(")) {
            AT t = term();
            expect(")");
            return t;
        }
        return std::make_shared<ArithTerm>(ArithTerm{ArithTerm::Kind::var, 0, ident(), {}});
    }
};

inline bool compare_mpz(const mpz_class& a, const std::string& op, const mpz_class& b) {
    if (op == "=") return a == b;
    if (op == "!=") return a != b;
    if (op == "<") return a < b;
    if (op == "<=") return a <= b;
    if (op == ">") return a > b;
    return a >= b;
}

inline std::string term_str(const AT& t) {
    switch (t->kind) {
    case ArithTerm::Kind::num: return t->value.get_str();
    case ArithTerm::Kind::var: return t->name;
    case ArithTerm::Kind::add: return "(" + term_str(t->kids[0]) + " + " + term_str(t->kids[1]) + ")";
    case ArithTerm::Kind::vp: return "V_p(" + term_str(t->kids[0]) + ")";
    case ArithTerm::Kind::ppow: return "p^" + term_str(t->kids[0]);
    }
    return "";
}

} // namespace detail

inline AF parse_arith(const std::string& text) { return detail::ArithParser(text).parse(); }

using ArithEnv = std::map<std::string, mpz_class>;

/// Direct evaluation over N.
inline mpz_class eval_arith(const AT& t, unsigned long p, const ArithEnv& env) {
    switch (t->kind) {
    case ArithTerm::Kind::num: return t->value;
    case ArithTerm::Kind::var: {
        auto it = env.find(t->name);
        if (it == env.end()) throw Error("unknown identifier '" + t->name + "'");
        return it->second;
    }
    case ArithTerm::Kind::add: return eval_arith(t->kids[0], p, env) + eval_arith(t->kids[1], p, env);
    case ArithTerm::Kind::vp: return big_Vp(p, eval_arith(t->kids[0], p, env));
    case ArithTerm::Kind::ppow: return ipow(p, to_ulong(eval_arith(t->kids[0], p, env), "exponent"));
    }
    return 0;
}

inline bool eval_arith(const AF& f, unsigned long p, const ArithEnv& env) {
    using K = ArithFormula::Kind;
    switch (f->kind) {
    case K::atom: return detail::compare_mpz(eval_arith(f->lhs, p, env), f->cmp, eval_arith(f->rhs, p, env));
    case K::not_: return !eval_arith(f->kids[0], p, env);
    case K::and_: return eval_arith(f->kids[0], p, env) && eval_arith(f->kids[1], p, env);
    case K::or_: return eval_arith(f->kids[0], p, env) || eval_arith(f->kids[1], p, env);
    case K::forall:
    case K::exists: {
        if (!f->bound) throw UnsupportedFragment("unbounded quantifier over N cannot be evaluated");
        const mpz_class b = eval_arith(f->bound, p, env);
        ArithEnv inner = env;
        for (mpz_class x = 0; x < b; ++x) {
            inner[f->var] = x;
            const bool v = eval_arith(f->kids[0], p, inner);
            if (f->kind == K::exists && v) return true;
            if (f->kind == K::forall && !v) return false;
        }
        return f->kind == K::forall;
    }
    }
    return false;
}

/// Definitions the compiled statements use; a, b are the normalized generators, g = a / b.
inline std::string discrete_definitions(const DiscreteConfig& c) {
    const std::string gl = c.log_power == 1 ? "g" : "g^" + std::to_string(c.log_power);
    return "a := " + c.alpha.get_str() + ", b := " + c.beta.get_str() + ", g := a / b\n"
           "tau(X) := the Y in b^Z with v(Y) = v(X)\n"
           "sigma(X) := X / tau(X)\n"
           "vpmap(X) := (Z^" + std::to_string(c.v_alpha) + ") * a^k for the unique Z in a^N and 0 <= k < v(a) with "
           "v(sigma(X)^" + std::to_string(c.log_power) + " - 1) - v(" + gl + " - 1) = v(Z) + k\n"
           "ppow(X) := the Y in a^N of least valuation, Y != 1, with vpmap(Y) = X\n";
}

namespace detail {

inline std::string compile_term(const AT& t) {
    switch (t->kind) {
    case ArithTerm::Kind::num: return "a^" + t->value.get_str();
    case ArithTerm::Kind::var: return t->name;
    case ArithTerm::Kind::add: return "(" + compile_term(t->kids[0]) + " * " + compile_term(t->kids[1]) + ")";
    case ArithTerm::Kind::vp: return "ppow(vpmap(" + compile_term(t->kids[0]) + "))";
    case ArithTerm::Kind::ppow: return "ppow(" + compile_term(t->kids[0]) + ")";
    }
    return "";
}

inline std::string compile_formula(const AF& f) {
    using K = ArithFormula::Kind;
    switch (f->kind) {
    case K::atom: {
        const std::string l = compile_term(f->lhs), r = compile_term(f->rhs);
        if (f->cmp == "=") return l + " = " + r;
        if (f->cmp == "!=") return "not " + l + " = " + r;
        return "v(" + l + ") " + f->cmp + " v(" + r + ")";
    }
    case K::not_: return "not (" + compile_formula(f->kids[0]) + ")";
    case K::and_: return "(" + compile_formula(f->kids[0]) + " and " + compile_formula(f->kids[1]) + ")";
    case K::or_: return "(" + compile_formula(f->kids[0]) + " or " + compile_formula(f->kids[1]) + ")";
    case K::forall:
    case K::exists: {
        std::string out = (f->kind == K::forall ? "forall " : "exists ") + f->var + " in a^N. ";
        if (!f->bound) return out + compile_formula(f->kids[0]);
        const std::string guard = "v(" + f->var + ") < v(" + compile_term(f->bound) + ")";
        return out + "(" + guard + (f->kind == K::forall ? " -> " : " and ") + compile_formula(f->kids[0]) + ")";
    }
    }
    return "";
}

/// Evaluation of compiled statements over exact rationals, using only the defined maps.
class CompiledModel {
public:
    explicit CompiledModel(const DiscreteConfig& c, std::uint64_t scan_limit = 4096) : c_(c), limit_(scan_limit) {}

    using Env = std::map<std::string, mpq_class>;

    long v(const mpq_class& x) const { return pvg::vp(x, c_.p); }

    mpq_class tau(const mpq_class& x) const {
        // the element of b^Z with valuation v(x)
        const long vb = static_cast<long>(c_.v_alpha);
        if (v(x) % vb != 0) throw DomainError("tau: no element of b^Z has valuation " + std::to_string(v(x)));
        return qpow(mpq_class(c_.beta), v(x) / vb);
    }
    mpq_class sigma(const mpq_class& x) const {
        mpq_class r = x / tau(x);
        r.canonicalize();
        return r;
    }
    mpq_class vpmap(const mpq_class& x) const {
        const mpq_class s = qpow(sigma(x), static_cast<long>(c_.log_power));
        if (s == 1) throw DomainError("vpmap is undefined at 1, where v_p(0) would be needed");
        const long w = v(s - 1) - c_.gamma_shift;
        const long va = static_cast<long>(c_.v_alpha);
        const mpq_class z = qpow(mpq_class(c_.alpha), w / va);  // the Z in a^N with v(Z) = va * (w / va)
        return qpow(z, va) * qpow(mpq_class(c_.alpha), w % va);
    }
    mpq_class ppow(const mpq_class& x) const {
        mpq_class y = c_.alpha;
        for (std::uint64_t i = 0; i < limit_; ++i, y *= c_.alpha)
            if (vpmap(y) == x) return y;
        throw BudgetError("ppow scan exceeded " + std::to_string(limit_) + " powers of a");
    }

    mpq_class term(const AT& t, const Env& env) const {
        switch (t->kind) {
        case ArithTerm::Kind::num: return qpow(mpq_class(c_.alpha), to_long(t->value, "constant"));
        case ArithTerm::Kind::var: {
            auto it = env.find(t->name);
            if (it == env.end()) throw Error("unknown identifier '" + t->name + "'");
            return it->second;
        }
        case ArithTerm::Kind::add: return term(t->kids[0], env) * term(t->kids[1], env);
        case ArithTerm::Kind::vp: return ppow(vpmap(term(t->kids[0], env)));
        case ArithTerm::Kind::ppow: return ppow(term(t->kids[0], env));
        }
        return 0;
    }

    bool formula(const AF& f, const Env& env) const {
        using K = ArithFormula::Kind;
        switch (f->kind) {
        case K::atom: {
            const mpq_class l = term(f->lhs, env), r = term(f->rhs, env);
            if (f->cmp == "=") return l == r;
            if (f->cmp == "!=") return l != r;
            return compare_mpz(v(l), f->cmp, v(r));
        }
        case K::not_: return !formula(f->kids[0], env);
        case K::and_: return formula(f->kids[0], env) && formula(f->kids[1], env);
        case K::or_: return formula(f->kids[0], env) || formula(f->kids[1], env);
        case K::forall:
        case K::exists: {
            if (!f->bound) throw UnsupportedFragment("unbounded quantifier over a^N cannot be evaluated");
            const long top = v(term(f->bound, env));
            Env inner = env;
            mpq_class x = 1;
            for (; v(x) < top; x *= c_.alpha) {
                inner[f->var] = x;
                const bool val = formula(f->kids[0], inner);
                if (f->kind == K::exists && val) return true;
                if (f->kind == K::forall && !val) return false;
            }
            return f->kind == K::forall;
        }
        }
        return false;
    }

private:
    const DiscreteConfig& c_;
    std::uint64_t limit_;
};

} // namespace detail

/// The statement about powers of a that corresponds to f.
inline std::string compile_atomic(const AF& f) { return detail::compile_formula(f); }

struct DualResult {
    bool direct;
    bool compiled;
    bool agree() const { return direct == compiled; }
};

/// f over N and its compilation over the rational model; free variables n map to a^n.
inline DualResult dual_eval(const AF& f, const DiscreteConfig& c, const ArithEnv& env = {}) {
    detail::CompiledModel model(c);
    detail::CompiledModel::Env cenv;
    for (const auto& [name, n] : env) cenv[name] = qpow(mpq_class(c.alpha), to_long(n, "value"));
    return {eval_arith(f, c.p, env), model.formula(f, cenv)};
}

} // namespace pvg
