#pragma once

// Random single-variable systems ∃x. φ(x) with ground parameters.

#include <random>
#include <string>
#include <vector>

#include "pvg/formula.hpp"

namespace pvg::testing {

struct SystemGen {
    std::mt19937_64& rng;
    long max_exp = 5;
    int max_radius = 6;

    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

    LinearTerm param() { return LinearTerm(GroupElement(uniform(-max_exp, max_exp), uniform(-max_exp, max_exp))); }

    /// l·x - a with small l; l = 1 most of the time.
    LinearTerm x_term(const std::vector<LinearTerm>& pool) {
        const long l = uniform(0, 3) == 0 ? uniform(2, 5) : 1;
        return LinearTerm::variable("x", l) - pool[static_cast<std::size_t>(uniform(0, static_cast<long>(pool.size()) - 1))];
    }

    F literal(const std::vector<LinearTerm>& pool) {
        switch (uniform(0, 9)) {
        case 0: return mk_cong(LinearTerm::variable("x").to_term(), mpz_class(uniform(2, 4)), pool[0].to_term());
        case 1: return mk_inH(LinearTerm::variable("x").to_term());
        case 2: return mk_not(mk_inH(LinearTerm::variable("x").to_term()));
        case 3: {
            // Two-sided comparison.
            return mk_valcmp(ValueTerm::of(x_term(pool)), static_cast<Cmp>(uniform(0, 4)),
                             ValueTerm::of(x_term(pool), uniform(-1, 1)));
        }
        case 4: {
            // Bound given by a parameter distance.
            const LinearTerm b = pool[static_cast<std::size_t>(uniform(0, static_cast<long>(pool.size()) - 1))] - param();
            return mk_valcmp(ValueTerm::of(x_term(pool)), static_cast<Cmp>(uniform(0, 4)), ValueTerm::of(b, uniform(0, 1)));
        }
        case 5: return uniform(0, 1) ? mk_eq(x_term(pool).to_term(), LinearTerm().to_term())
                                     : mk_not(mk_eq(x_term(pool).to_term(), LinearTerm().to_term()));
        default:
            return mk_valcmp(ValueTerm::of(x_term(pool)), static_cast<Cmp>(uniform(0, 4)),
                             ValueTerm::number(uniform(0, max_radius)));
        }
    }

    /// A conjunction of 1..4 literals over a pool of 1..3 parameters.
    F system() {
        std::vector<LinearTerm> pool;
        const long np = uniform(1, 3);
        for (long i = 0; i < np; ++i) pool.push_back(param());
        std::vector<F> lits;
        const long n = uniform(1, 4);
        for (long i = 0; i < n; ++i) lits.push_back(literal(pool));
        return mk_and(std::move(lits));
    }
};

} // namespace pvg::testing
