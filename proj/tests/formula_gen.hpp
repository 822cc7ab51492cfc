#pragma once

// Random formulas for round-trip and semantic-preservation tests.

#include <random>
#include <string>
#include <vector>

#include "pvg/formula.hpp"

namespace pvg::testing {

struct FormulaGen {
    std::mt19937_64& rng;
    std::vector<std::string> vars{"x", "y"};
    long max_exp = 5;
    long max_coeff = 3;
    int max_radius = 6;
    bool surface = true;  // explicit parens and odd spellings

    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
    bool coin(int one_in = 2) { return uniform(0, one_in - 1) == 0; }

    GroupElement element() { return {uniform(-max_exp, max_exp), uniform(-max_exp, max_exp)}; }

    GroupTerm term(bool allow_ground = true) {
        GroupTerm t;
        const long n = uniform(1, 3);
        for (long i = 0; i < n; ++i) {
            Summand s;
            s.minus = i > 0 && coin();
            if (coin(3)) {
                long c = uniform(-max_coeff, max_coeff);
                if (c == 0) c = 2;
                s.coeff = mpz_class(i > 0 ? std::abs(c) : c);
            }
            const long kind = uniform(0, allow_ground ? 4 : 1);
            if (kind <= 1 || (!allow_ground && i == 0)) {
                s.atom = Summand::Atom::var;
                s.name = vars[static_cast<std::size_t>(uniform(0, static_cast<long>(vars.size()) - 1))];
            } else if (kind == 2) {
                s.atom = Summand::Atom::a;
            } else if (kind == 3) {
                s.atom = Summand::Atom::b;
            } else {
                s.atom = Summand::Atom::literal;
                s.literal = element();
            }
            t.parts.push_back(s);
        }
        return t;
    }

    ValueTerm value() {
        switch (uniform(0, 5)) {
        case 0: return ValueTerm::number(uniform(0, max_radius));
        case 1: return coin(3) ? ValueTerm::infinity() : ValueTerm::number(uniform(0, max_radius));
        default: {
            ValueTerm v = ValueTerm::of(term());
            if (coin()) {
                v.has_shift = true;
                v.shift = uniform(-3, 3);
            }
            return v;
        }
        }
    }

    F atom() {
        switch (uniform(0, 5)) {
        case 0: return mk_eq(term(), term());
        case 1: return mk_cong(term(), mpz_class(uniform(1, 6)), term());
        case 2: {
            GroupTerm t;
            Summand s;
            s.name = vars[static_cast<std::size_t>(uniform(0, static_cast<long>(vars.size()) - 1))];
            t.parts.push_back(s);
            return mk_inH(t);
        }
        default: {
            ValueTerm l = ValueTerm::of(term());
            if (coin()) {
                l.has_shift = true;
                l.shift = uniform(-2, 2);
            }
            return mk_valcmp(l, static_cast<Cmp>(uniform(0, 4)), value());
        }
        }
    }

    F quantifier_free(int depth) {
        if (depth <= 0 || coin(3)) return atom();
        switch (uniform(0, 3)) {
        case 0: return mk_not(quantifier_free(depth - 1));
        case 1:
        case 2: {
            std::vector<F> kids;
            const long n = uniform(2, 3);
            for (long i = 0; i < n; ++i) kids.push_back(quantifier_free(depth - 1));
            return coin() ? mk_and(kids) : mk_or(kids);
        }
        default: {
            F inner = quantifier_free(depth - 1);
            return surface ? mk_paren(inner) : inner;
        }
        }
    }

    F any(int depth) {
        if (depth > 0 && coin(3)) {
            const std::string& v = vars[static_cast<std::size_t>(uniform(0, static_cast<long>(vars.size()) - 1))];
            return mk_quant(coin() ? Kind::Exists : Kind::Forall, v, coin() ? Sort::G : Sort::H, any(depth - 1));
        }
        if (depth > 0 && coin(4)) return mk_and({quantifier_free(depth - 1), any(depth - 1)});
        return quantifier_free(depth);
    }
};

} // namespace pvg::testing
