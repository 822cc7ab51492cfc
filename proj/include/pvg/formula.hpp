#pragma once

// Formulas of the two-sorted language of pairs of p-valued groups.
//
// Group terms keep their surface form so that printing a parsed formula gives
// back the input up to whitespace; `GroupTerm::linear()` gives the canonical
// integer-linear form used by every semantic routine.
//
// Grammar (whitespace-insensitive):
//   formula := quant | disj
//   quant   := ("exists" | "forall") VAR "in" ("G" | "H") "." formula
//   disj    := conj ("or" conj)*
//   conj    := lit ("and" lit)*
//   lit     := "not" lit | quant | "(" formula ")" | "true" | "false" | atom
//   atom    := vterm CMP vterm | gterm "=" gterm | gterm "cong" NAT gterm | "H(" gterm ")"
//   gterm   := term (("+" | "-") term)*
//   term    := [INT "*"] (VAR | "a" | "b" | "g(" INT "," INT ")")
//   vterm   := "V(" gterm ")" [("+" INT) | ("-" NAT)] | NAT | "inf"
//   CMP     := "<" | "<=" | "=" | ">=" | ">"
//
// `a` is α = g(1,0) and `b` is β = g(0,1). A quantifier in the middle of a
// conjunction extends to the end of the enclosing group.

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pvg/errors.hpp"
#include "pvg/group.hpp"
#include "pvg/value.hpp"

namespace pvg {

// ---------------------------------------------------------------------------
// Group terms

struct Summand {
    enum class Atom { var, a, b, literal };

    bool minus = false;               // joined to the previous summand by "-"
    std::optional<mpz_class> coeff;   // written "INT *"
    Atom atom = Atom::var;
    std::string name;                 // Atom::var
    GroupElement literal;             // Atom::literal

    bool operator==(const Summand&) const = default;
};

class LinearTerm;

struct GroupTerm {
    std::vector<Summand> parts;

    LinearTerm linear() const;
    std::string str() const;
    bool operator==(const GroupTerm&) const = default;
};

/// Σ c_v · v + constant, with zero coefficients dropped.
class LinearTerm {
public:
    LinearTerm() = default;
    explicit LinearTerm(GroupElement c) : constant_(std::move(c)) {}

    static LinearTerm variable(const std::string& name, const mpz_class& c = 1) {
        LinearTerm t;
        if (c != 0) t.coeffs_[name] = c;
        return t;
    }

    const std::map<std::string, mpz_class>& coeffs() const { return coeffs_; }
    const GroupElement& constant() const { return constant_; }

    mpz_class coeff(const std::string& v) const {
        auto it = coeffs_.find(v);
        return it == coeffs_.end() ? mpz_class(0) : it->second;
    }
    bool mentions(const std::string& v) const { return coeffs_.count(v) != 0; }
    bool is_ground() const { return coeffs_.empty(); }
    bool is_zero() const { return coeffs_.empty() && constant_.is_identity(); }

    LinearTerm without(const std::string& v) const {
        LinearTerm t = *this;
        t.coeffs_.erase(v);
        return t;
    }

    LinearTerm operator+(const LinearTerm& o) const {
        LinearTerm t = *this;
        t.constant_ += o.constant_;
        for (const auto& [v, c] : o.coeffs_) t.add(v, c);
        return t;
    }
    LinearTerm operator-() const { return mpz_class(-1) * *this; }
    LinearTerm operator-(const LinearTerm& o) const { return *this + (-o); }
    friend LinearTerm operator*(const mpz_class& k, const LinearTerm& x) {
        LinearTerm t;
        if (k == 0) return t;
        t.constant_ = k * x.constant_;
        for (const auto& [v, c] : x.coeffs_) t.coeffs_[v] = k * c;
        return t;
    }

    /// Replace `v` by `by`.
    LinearTerm substitute(const std::string& v, const LinearTerm& by) const {
        const mpz_class c = coeff(v);
        if (c == 0) return *this;
        return without(v) + c * by;
    }

    GroupElement evaluate(const std::map<std::string, GroupElement>& env) const {
        GroupElement g = constant_;
        for (const auto& [v, c] : coeffs_) {
            auto it = env.find(v);
            if (it == env.end()) throw Error("unknown identifier '" + v + "'");
            g += c * it->second;
        }
        return g;
    }

    /// Printable surface form; variables in name order, then the constant.
    GroupTerm to_term() const {
        GroupTerm out;
        for (const auto& [v, c] : coeffs_) {
            Summand s;
            s.name = v;
            push(out, s, c);
        }
        const GroupElement& k = constant_;
        if (!k.is_identity() || out.parts.empty()) {
            Summand s;
            mpz_class sign = 1;
            if (k.n == 0) {
                s.atom = Summand::Atom::a;
                sign = k.m;
            } else if (k.m == 0) {
                s.atom = Summand::Atom::b;
                sign = k.n;
            } else {
                s.atom = Summand::Atom::literal;
                s.literal = k;
            }
            if (k.is_identity()) {
                s.atom = Summand::Atom::literal;
                s.literal = k;
                sign = 1;
            }
            push(out, s, sign);
        }
        return out;
    }

    bool operator==(const LinearTerm&) const = default;

private:
    void add(const std::string& v, const mpz_class& c) {
        mpz_class& slot = coeffs_[v];
        slot += c;
        if (slot == 0) coeffs_.erase(v);
    }

    static void push(GroupTerm& out, Summand s, const mpz_class& c) {
        if (out.parts.empty()) {
            if (c != 1) s.coeff = c;
        } else {
            s.minus = c < 0;
            const mpz_class a = abs(c);
            if (a != 1) s.coeff = a;
        }
        out.parts.push_back(std::move(s));
    }

    std::map<std::string, mpz_class> coeffs_;
    GroupElement constant_ = GroupElement::identity();
};

inline LinearTerm GroupTerm::linear() const {
    LinearTerm t;
    for (const auto& s : parts) {
        mpz_class c = s.coeff.value_or(mpz_class(1));
        if (s.minus) c = -c;
        switch (s.atom) {
        case Summand::Atom::var: t = t + LinearTerm::variable(s.name, c); break;
        case Summand::Atom::a: t = t + LinearTerm(c * GroupElement::alpha()); break;
        case Summand::Atom::b: t = t + LinearTerm(c * GroupElement::beta()); break;
        case Summand::Atom::literal: t = t + LinearTerm(c * s.literal); break;
        }
    }
    return t;
}

inline std::string GroupTerm::str() const {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const Summand& s = parts[i];
        if (i > 0) out += s.minus ? " - " : " + ";
        if (s.coeff) out += s.coeff->get_str() + " * ";
        switch (s.atom) {
        case Summand::Atom::var: out += s.name; break;
        case Summand::Atom::a: out += "a"; break;
        case Summand::Atom::b: out += "b"; break;
        case Summand::Atom::literal: out += s.literal.str(); break;
        }
    }
    return out;
}

inline GroupTerm term_of(const LinearTerm& t) { return t.to_term(); }

// ---------------------------------------------------------------------------
// Value terms

struct ValueTerm {
    enum class Kind { nat, inf, val };

    Kind kind = Kind::nat;
    std::int64_t nat = 0;
    GroupTerm term;
    std::int64_t shift = 0;
    bool has_shift = false;

    static ValueTerm number(std::int64_t v) { return {Kind::nat, v, {}, 0, false}; }
    static ValueTerm infinity() { return {Kind::inf, 0, {}, 0, false}; }
    static ValueTerm of(GroupTerm t, std::int64_t shift = 0) {
        return {Kind::val, 0, std::move(t), shift, shift != 0};
    }
    static ValueTerm of(const LinearTerm& t, std::int64_t shift = 0) { return of(t.to_term(), shift); }

    std::string str() const {
        switch (kind) {
        case Kind::nat: return std::to_string(nat);
        case Kind::inf: return "inf";
        case Kind::val: break;
        }
        std::string s = "V(" + term.str() + ")";
        if (has_shift) s += shift < 0 ? " - " + std::to_string(-shift) : " + " + std::to_string(shift);
        return s;
    }
    bool operator==(const ValueTerm&) const = default;
};

enum class Cmp { lt, le, eq, ge, gt };

inline const char* cmp_str(Cmp c) {
    switch (c) {
    case Cmp::lt: return "<";
    case Cmp::le: return "<=";
    case Cmp::eq: return "=";
    case Cmp::ge: return ">=";
    case Cmp::gt: return ">";
    }
    return "?";
}

inline bool compare(const ExtValue& a, Cmp c, const ExtValue& b) {
    switch (c) {
    case Cmp::lt: return a < b;
    case Cmp::le: return a <= b;
    case Cmp::eq: return a == b;
    case Cmp::ge: return a >= b;
    case Cmp::gt: return a > b;
    }
    return false;
}

/// a □ b  ⟺  b □' a.
inline Cmp flip(Cmp c) {
    switch (c) {
    case Cmp::lt: return Cmp::gt;
    case Cmp::le: return Cmp::ge;
    case Cmp::ge: return Cmp::le;
    case Cmp::gt: return Cmp::lt;
    default: return c;
    }
}

// ---------------------------------------------------------------------------
// Formulas

enum class Kind { True, False, ValCmp, Eq, Cong, InH, Not, And, Or, Exists, Forall, Paren };
enum class Sort { G, H };

struct Formula;
using F = std::shared_ptr<const Formula>;

struct Formula {
    Formula(Kind k = Kind::True) : kind(k) {}  // NOLINT(implicit)

    Kind kind;
    Cmp cmp = Cmp::eq;          // ValCmp
    ValueTerm lhs, rhs;         // ValCmp
    GroupTerm left, right;      // Eq, Cong; InH uses `left`
    mpz_class modulus;          // Cong
    std::string var;            // quantifiers
    Sort sort = Sort::G;        // quantifiers
    std::vector<F> kids;
};

inline F mk(Formula f) { return std::make_shared<const Formula>(std::move(f)); }
inline F mk_true() { return mk({Kind::True}); }
inline F mk_false() { return mk({Kind::False}); }
inline F mk_bool(bool b) { return b ? mk_true() : mk_false(); }

inline F mk_valcmp(ValueTerm l, Cmp c, ValueTerm r) {
    Formula f{Kind::ValCmp};
    f.cmp = c;
    f.lhs = std::move(l);
    f.rhs = std::move(r);
    return mk(std::move(f));
}
inline F mk_eq(GroupTerm l, GroupTerm r) {
    Formula f{Kind::Eq};
    f.left = std::move(l);
    f.right = std::move(r);
    return mk(std::move(f));
}
inline F mk_cong(GroupTerm l, mpz_class n, GroupTerm r) {
    Formula f{Kind::Cong};
    f.left = std::move(l);
    f.modulus = std::move(n);
    f.right = std::move(r);
    return mk(std::move(f));
}
inline F mk_inH(GroupTerm t) {
    Formula f{Kind::InH};
    f.left = std::move(t);
    return mk(std::move(f));
}
inline F mk_not(F k) {
    Formula f{Kind::Not};
    f.kids = {std::move(k)};
    return mk(std::move(f));
}
inline F mk_paren(F k) {
    Formula f{Kind::Paren};
    f.kids = {std::move(k)};
    return mk(std::move(f));
}

namespace detail {
inline F mk_nary(Kind kind, std::vector<F> kids) {
    if (kids.empty()) return kind == Kind::And ? mk_true() : mk_false();
    if (kids.size() == 1) return kids.front();
    Formula f{kind};
    f.kids = std::move(kids);
    return mk(std::move(f));
}
} // namespace detail

inline F mk_and(std::vector<F> kids) { return detail::mk_nary(Kind::And, std::move(kids)); }
inline F mk_or(std::vector<F> kids) { return detail::mk_nary(Kind::Or, std::move(kids)); }

inline F mk_quant(Kind q, std::string var, Sort s, F body) {
    Formula f{q};
    f.var = std::move(var);
    f.sort = s;
    f.kids = {std::move(body)};
    return mk(std::move(f));
}
inline F mk_exists(std::string var, Sort s, F body) { return mk_quant(Kind::Exists, std::move(var), s, std::move(body)); }
inline F mk_forall(std::string var, Sort s, F body) { return mk_quant(Kind::Forall, std::move(var), s, std::move(body)); }

inline const Formula& strip(const F& f) {
    const Formula* p = f.get();
    while (p->kind == Kind::Paren) p = p->kids.front().get();
    return *p;
}

/// Structural equality, ignoring explicit parentheses.
inline bool equal(const F& x, const F& y) {
    const Formula& a = strip(x);
    const Formula& b = strip(y);
    if (a.kind != b.kind || a.kids.size() != b.kids.size()) return false;
    switch (a.kind) {
    case Kind::ValCmp:
        if (a.cmp != b.cmp || !(a.lhs == b.lhs) || !(a.rhs == b.rhs)) return false;
        break;
    case Kind::Eq:
        if (!(a.left == b.left) || !(a.right == b.right)) return false;
        break;
    case Kind::Cong:
        if (a.modulus != b.modulus || !(a.left == b.left) || !(a.right == b.right)) return false;
        break;
    case Kind::InH:
        if (!(a.left == b.left)) return false;
        break;
    case Kind::Exists:
    case Kind::Forall:
        if (a.var != b.var || a.sort != b.sort) return false;
        break;
    default: break;
    }
    for (std::size_t i = 0; i < a.kids.size(); ++i)
        if (!equal(a.kids[i], b.kids[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Printing

namespace detail {

struct Printed {
    std::string text;
    bool open = false;  // ends in a quantifier body that would absorb a continuation
};

inline Printed print(const F& f);

inline std::string wrap(const Printed& p) { return "(" + p.text + ")"; }

inline Printed print_nary(const Formula& f, const char* sep) {
    Printed out;
    for (std::size_t i = 0; i < f.kids.size(); ++i) {
        const Formula& k = *f.kids[i];
        Printed p = print(f.kids[i]);
        const bool last = i + 1 == f.kids.size();
        const bool nested = k.kind == f.kind || k.kind == Kind::Or;
        if (nested || (p.open && !last)) {
            p.text = wrap(p);
            p.open = false;
        }
        if (i > 0) out.text += sep;
        out.text += p.text;
        out.open = p.open;
    }
    return out;
}

inline Printed print(const F& ptr) {
    const Formula& f = *ptr;
    switch (f.kind) {
    case Kind::True: return {"true"};
    case Kind::False: return {"false"};
    case Kind::ValCmp: return {f.lhs.str() + " " + cmp_str(f.cmp) + " " + f.rhs.str()};
    case Kind::Eq: return {f.left.str() + " = " + f.right.str()};
    case Kind::Cong: return {f.left.str() + " cong " + f.modulus.get_str() + " " + f.right.str()};
    case Kind::InH: return {"H(" + f.left.str() + ")"};
    case Kind::Paren: return {wrap(print(f.kids.front()))};
    case Kind::Not: {
        Printed p = print(f.kids.front());
        const Kind k = f.kids.front()->kind;
        if (k == Kind::And || k == Kind::Or) return {"not " + wrap(p)};
        return {"not " + p.text, p.open};
    }
    case Kind::And: return print_nary(f, " and ");
    case Kind::Or: return print_nary(f, " or ");
    case Kind::Exists:
    case Kind::Forall: {
        std::string head = f.kind == Kind::Exists ? "exists " : "forall ";
        head += f.var + " in " + (f.sort == Sort::G ? "G" : "H") + ". ";
        return {head + print(f.kids.front()).text, true};
    }
    }
    return {};
}

} // namespace detail

inline std::string to_string(const F& f) { return detail::print(f).text; }

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

struct Token {
    enum class Type { ident, number, symbol, end };
    Type type = Type::end;
    std::string text;
    std::size_t line = 1, column = 1;
};

inline std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t j = 0; j < n; ++j, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        const unsigned char c = static_cast<unsigned char>(src[i]);
        if (std::isspace(c)) {
            advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        std::size_t j = i;
        if (std::isalpha(c) || c == '_') {
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
                ++j;
            t.type = Token::Type::ident;
        } else if (std::isdigit(c)) {
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            t.type = Token::Type::number;
        } else if ((c == '<' || c == '>') && i + 1 < src.size() && src[i + 1] == '=') {
            j += 2;
            t.type = Token::Type::symbol;
        } else if (std::string_view("()<>=.,*+-").find(static_cast<char>(c)) != std::string_view::npos) {
            j += 1;
            t.type = Token::Type::symbol;
        } else {
            throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'", line, col);
        }
        t.text = std::string(src.substr(i, j - i));
        advance(j - i);
        out.push_back(std::move(t));
    }
    Token end;
    end.line = line;
    end.column = col;
    out.push_back(end);
    return out;
}

inline bool is_keyword(const std::string& s) {
    static const std::set<std::string> words{"exists", "forall", "in", "and", "or", "not", "cong", "inf",
                                             "true", "false", "V", "H", "G", "g", "a", "b"};
    return words.count(s) != 0;
}

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(lex(src)) {}

    F parse_all() {
        F f = formula();
        if (peek().type != Token::Type::end) fail("unexpected '" + peek().text + "'");
        return f;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    bool at(const char* text, std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.type != Token::Type::end && t.text == text;
    }
    bool accept(const char* text) {
        if (!at(text)) return false;
        ++pos_;
        return true;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, peek().line, peek().column);
    }
    void expect(const char* text) {
        if (!accept(text)) {
            const Token& t = peek();
            fail(std::string("expected '") + text + "' but found " +
                 (t.type == Token::Type::end ? std::string("end of input") : "'" + t.text + "'"));
        }
    }
    std::string identifier() {
        const Token& t = peek();
        if (t.type != Token::Type::ident || is_keyword(t.text)) fail("expected a variable name");
        ++pos_;
        return t.text;
    }
    mpz_class natural() {
        const Token& t = peek();
        if (t.type != Token::Type::number) fail("expected a natural number");
        ++pos_;
        return mpz_class(t.text);
    }
    mpz_class integer() {
        const bool neg = accept("-");
        mpz_class v = natural();
        return neg ? mpz_class(-v) : v;
    }
    std::int64_t small(const mpz_class& v) {
        if (!v.fits_slong_p()) fail("number out of range");
        return v.get_si();
    }

    F formula() {
        if (at("exists") || at("forall")) return quantifier();
        return disjunction();
    }

    F quantifier() {
        const Kind q = at("exists") ? Kind::Exists : Kind::Forall;
        ++pos_;
        std::string v = identifier();
        expect("in");
        Sort s = Sort::G;
        if (accept("H")) {
            s = Sort::H;
        } else if (at("V")) {
            throw UnsupportedFragment("quantification over the value sort is not supported (variable '" + v + "')");
        } else {
            expect("G");
        }
        expect(".");
        return mk_quant(q, std::move(v), s, formula());
    }

    F disjunction() {
        std::vector<F> kids{conjunction()};
        while (accept("or")) kids.push_back(conjunction());
        return mk_or(std::move(kids));
    }

    F conjunction() {
        std::vector<F> kids{literal()};
        while (accept("and")) kids.push_back(literal());
        return mk_and(std::move(kids));
    }

    F literal() {
        if (accept("not")) return mk_not(literal());
        if (at("exists") || at("forall")) return quantifier();
        if (accept("(")) {
            F inner = formula();
            expect(")");
            return mk_paren(std::move(inner));
        }
        if (accept("true")) return mk_true();
        if (accept("false")) return mk_false();
        return atom();
    }

    bool starts_value_term() const {
        if (at("V") && at("(", 1)) return true;
        if (at("inf")) return true;
        return peek().type == Token::Type::number && !at("*", 1);
    }

    std::optional<Cmp> comparison() {
        static const std::pair<const char*, Cmp> table[] = {
            {"<=", Cmp::le}, {">=", Cmp::ge}, {"<", Cmp::lt}, {">", Cmp::gt}, {"=", Cmp::eq}};
        for (const auto& [text, c] : table)
            if (accept(text)) return c;
        return std::nullopt;
    }

    F atom() {
        if (at("H") && at("(", 1)) {
            pos_ += 2;
            GroupTerm t = group_term();
            expect(")");
            return mk_inH(std::move(t));
        }
        if (starts_value_term()) {
            ValueTerm l = value_term();
            auto c = comparison();
            if (!c) fail("expected a comparison operator");
            return mk_valcmp(std::move(l), *c, value_term());
        }
        GroupTerm l = group_term();
        if (accept("=")) return mk_eq(std::move(l), group_term());
        if (accept("cong")) {
            mpz_class n = natural();
            if (n < 1) fail("congruence modulus must be at least 1");
            return mk_cong(std::move(l), std::move(n), group_term());
        }
        fail("expected '=' or 'cong' after a group term");
    }

    ValueTerm value_term() {
        if (accept("inf")) return ValueTerm::infinity();
        if (peek().type == Token::Type::number) return ValueTerm::number(small(natural()));
        expect("V");
        expect("(");
        ValueTerm v = ValueTerm::of(group_term());
        expect(")");
        if (accept("+")) {
            v.shift = small(integer());
            v.has_shift = true;
        } else if (at("-") && peek(1).type == Token::Type::number) {
            ++pos_;
            v.shift = -small(natural());
            v.has_shift = true;
        }
        return v;
    }

    GroupTerm group_term() {
        GroupTerm t;
        t.parts.push_back(summand(false));
        while (true) {
            if (at("+")) {
                ++pos_;
                t.parts.push_back(summand(false));
            } else if (at("-") && !(peek(1).type == Token::Type::number && !at("*", 2))) {
                ++pos_;
                t.parts.push_back(summand(true));
            } else {
                break;
            }
        }
        return t;
    }

    Summand summand(bool minus) {
        Summand s;
        s.minus = minus;
        if (at("-") || peek().type == Token::Type::number) {
            s.coeff = integer();
            expect("*");
        }
        if (at("g") && at("(", 1)) {
            pos_ += 2;
            mpz_class m = integer();
            expect(",");
            mpz_class n = integer();
            expect(")");
            s.atom = Summand::Atom::literal;
            s.literal = GroupElement(m, n);
        } else if (accept("a")) {
            s.atom = Summand::Atom::a;
        } else if (accept("b")) {
            s.atom = Summand::Atom::b;
        } else {
            s.atom = Summand::Atom::var;
            s.name = identifier();
        }
        return s;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline F parse(std::string_view text) { return detail::Parser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Traversals

namespace detail {
inline void collect_free(const F& f, std::set<std::string>& bound, std::set<std::string>& out) {
    auto terms = [&](const GroupTerm& t) {
        const LinearTerm l = t.linear();
        for (const auto& [v, c] : l.coeffs())
            if (!bound.count(v)) out.insert(v);
    };
    switch (f->kind) {
    case Kind::ValCmp:
        terms(f->lhs.term);
        terms(f->rhs.term);
        return;
    case Kind::Eq:
    case Kind::Cong:
        terms(f->left);
        terms(f->right);
        return;
    case Kind::InH: terms(f->left); return;
    case Kind::Exists:
    case Kind::Forall: {
        const bool had = bound.count(f->var) != 0;
        bound.insert(f->var);
        collect_free(f->kids.front(), bound, out);
        if (!had) bound.erase(f->var);
        return;
    }
    default:
        for (const auto& k : f->kids) collect_free(k, bound, out);
    }
}
} // namespace detail

inline std::set<std::string> free_vars(const F& f) {
    std::set<std::string> bound, out;
    detail::collect_free(f, bound, out);
    return out;
}

inline bool is_quantifier_free(const F& f) {
    if (f->kind == Kind::Exists || f->kind == Kind::Forall) return false;
    for (const auto& k : f->kids)
        if (!is_quantifier_free(k)) return false;
    return true;
}

/// Capture-free substitution of a linear term for a free variable. Terms that
/// mention `v` are rewritten into canonical form.
inline F substitute(const F& f, const std::string& v, const LinearTerm& by) {
    auto term = [&](const GroupTerm& t) {
        const LinearTerm l = t.linear();
        return l.mentions(v) ? l.substitute(v, by).to_term() : t;
    };
    auto value = [&](ValueTerm x) {
        if (x.kind == ValueTerm::Kind::val) x.term = term(x.term);
        return x;
    };
    switch (f->kind) {
    case Kind::ValCmp: return mk_valcmp(value(f->lhs), f->cmp, value(f->rhs));
    case Kind::Eq: return mk_eq(term(f->left), term(f->right));
    case Kind::Cong: return mk_cong(term(f->left), f->modulus, term(f->right));
    case Kind::InH: return mk_inH(term(f->left));
    case Kind::Exists:
    case Kind::Forall: {
        if (f->var == v) return f;
        for (const auto& [w, c] : by.coeffs())
            if (w == f->var) throw Error("substitution would capture '" + w + "'");
        return mk_quant(f->kind, f->var, f->sort, substitute(f->kids.front(), v, by));
    }
    case Kind::True:
    case Kind::False: return f;
    default: {
        Formula g = *f;
        for (auto& k : g.kids) k = substitute(k, v, by);
        return mk(std::move(g));
    }
    }
}

} // namespace pvg
