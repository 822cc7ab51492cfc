#pragma once

// Bounded enumeration of nondegenerate solutions of a_1 x_1 + ... + a_n x_n = 1
// with every x_i in the group generated by the given naturals.
//
// The solution lists are relative to the exponent box |e| <= B. Nothing here
// claims that a list is complete beyond B.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pvg/arith.hpp"
#include "pvg/errors.hpp"
#include "pvg/independence.hpp"

namespace pvg {

struct IndependenceResult {
    bool independent;
    std::optional<DependenceWitness> witness;  // a^m = b^n, lowest terms
};

inline IndependenceResult mult_indep(const mpz_class& a, const mpz_class& b) {
    auto w = dependence_witness(a, b);
    return {!w.has_value(), w};
}

/// Rank of the prime-exponent vectors of the generators, over Q.
inline std::size_t generator_rank(const std::vector<mpz_class>& gens) {
    std::vector<std::map<mpz_class, unsigned long>> fs;
    std::map<mpz_class, std::size_t> primes;
    for (const auto& g : gens) {
        if (g <= 1) throw DomainError("generators must be naturals > 1, got " + g.get_str());
        fs.push_back(factorize(g));
        for (const auto& [q, e] : fs.back()) primes.emplace(q, 0);
    }
    std::size_t col = 0;
    for (auto& [q, i] : primes) i = col++;
    std::vector<std::vector<mpq_class>> rows;
    for (const auto& f : fs) {
        std::vector<mpq_class> r(primes.size(), 0);
        for (const auto& [q, e] : f) r[primes.at(q)] = e;
        rows.push_back(std::move(r));
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < primes.size() && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c] == 0) continue;
            const mpq_class f = rows[r][c] / rows[rank][c];
            for (std::size_t k = c; k < primes.size(); ++k) rows[r][k] -= f * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

struct MannSolution {
    std::vector<std::vector<long>> exponents;  // one exponent vector per unknown
    std::vector<mpq_class> values;
};

struct MannInstance {
    std::vector<mpq_class> coeffs;
    std::vector<mpz_class> generators;
    unsigned long bound = 0;
    std::vector<MannSolution> solutions;
    bool complete_within_bound = true;
};

inline constexpr std::uint64_t default_mann_ceiling = 50'000'000;

namespace detail {

inline mpq_class group_value(const std::vector<mpz_class>& gens, const std::vector<long>& exps) {
    mpq_class v = 1;
    for (std::size_t i = 0; i < gens.size(); ++i) v *= qpow(mpq_class(gens[i]), exps[i]);
    v.canonicalize();
    return v;
}

inline bool nondegenerate(const std::vector<mpq_class>& coeffs, const std::vector<mpq_class>& xs) {
    const std::size_t n = coeffs.size();
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
        mpq_class s = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) s += coeffs[i] * xs[i];
        if (s == 0) return false;
    }
    return true;
}

} // namespace detail

/// All nondegenerate solutions with every exponent in [-bound, bound], sorted by exponents.
inline MannInstance mann_enumerate(const std::vector<mpq_class>& coeffs, const std::vector<mpz_class>& generators,
                                   unsigned long bound, std::uint64_t ceiling = default_mann_ceiling) {
    if (coeffs.empty()) throw DomainError("mann_enumerate needs at least one coefficient");
    if (coeffs.size() > 20) throw BudgetError("at most 20 unknowns are supported");
    for (const auto& a : coeffs)
        if (a == 0) throw DomainError("coefficients must be nonzero");
    if (generators.empty()) throw DomainError("mann_enumerate needs at least one generator");
    if (generator_rank(generators) != generators.size())
        throw ConfigError("generators are multiplicatively dependent; exponent vectors would not be unique");

    // The last unknown is solved for, so the scan covers |box|^(n-1) tuples.
    const std::uint64_t side = 2 * static_cast<std::uint64_t>(bound) + 1;
    std::uint64_t box_size = 1, work = 1;
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (box_size > ceiling / side) throw BudgetError("exponent box exceeds the budget of " + std::to_string(ceiling) + "; lower --bound");
        box_size *= side;
    }
    for (std::size_t i = 0; i + 1 < coeffs.size(); ++i) {
        if (work > ceiling / box_size)
            throw BudgetError("scan of " + std::to_string(coeffs.size()) + " unknowns at bound " +
                              std::to_string(bound) + " exceeds the budget of " + std::to_string(ceiling) +
                              " tuples; lower --bound");
        work *= box_size;
    }

    std::vector<std::vector<long>> box;
    std::vector<mpq_class> values;
    std::map<mpq_class, std::size_t> index;
    std::vector<long> e(generators.size(), -static_cast<long>(bound));
    for (std::uint64_t i = 0; i < box_size; ++i) {
        box.push_back(e);
        values.push_back(detail::group_value(generators, e));
        index.emplace(values.back(), i);
        for (std::size_t j = e.size(); j-- > 0;) {
            if (e[j] < static_cast<long>(bound)) {
                ++e[j];
                break;
            }
            e[j] = -static_cast<long>(bound);
        }
    }

    MannInstance inst{coeffs, generators, bound, {}, true};
    const std::size_t n = coeffs.size();
    std::vector<std::size_t> idx(n - 1, 0);
    for (std::uint64_t w = 0; w < work; ++w) {
        mpq_class s = 1;
        for (std::size_t i = 0; i + 1 < n; ++i) s -= coeffs[i] * values[idx[i]];
        const mpq_class last = s / coeffs[n - 1];
        if (auto it = index.find(last); it != index.end()) {
            MannSolution sol;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                sol.exponents.push_back(box[idx[i]]);
                sol.values.push_back(values[idx[i]]);
            }
            sol.exponents.push_back(box[it->second]);
            sol.values.push_back(values[it->second]);
            if (detail::nondegenerate(coeffs, sol.values)) inst.solutions.push_back(std::move(sol));
        }
        for (std::size_t j = idx.size(); j-- > 0;) {
            if (++idx[j] < box_size) break;
            idx[j] = 0;
        }
    }
    std::sort(inst.solutions.begin(), inst.solutions.end(),
              [](const MannSolution& a, const MannSolution& b) { return a.exponents < b.exponents; });
    return inst;
}

struct MannAxiom {
    std::string text;
    bool bound_relative = true;
    std::string caveat;
};

namespace detail {

inline std::string linear_sum(const std::vector<mpq_class>& coeffs, const std::vector<std::size_t>& which) {
    std::string out;
    for (std::size_t i : which) {
        const mpq_class& a = coeffs[i];
        const mpq_class mag = abs(a);
        const std::string var = "x" + std::to_string(i + 1);
        const std::string term = mag == 1 ? var : mag.get_str() + " * " + var;
        if (out.empty()) out = a < 0 ? "- " + term : term;
        else out += (a < 0 ? " - " : " + ") + term;
    }
    return out;
}

} // namespace detail

/// The sentence saying the listed tuples are all nondegenerate solutions in A.
inline MannAxiom mann_axiom(const MannInstance& inst) {
    const std::size_t n = inst.coeffs.size();
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    std::string text;
    for (std::size_t i = 0; i < n; ++i) text += "forall x" + std::to_string(i + 1) + " in A. ";
    text += "(" + detail::linear_sum(inst.coeffs, all) + " = 1";
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
        std::vector<std::size_t> part;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) part.push_back(i);
        text += " and not " + detail::linear_sum(inst.coeffs, part) + " = 0";
    }
    text += ") -> ";
    if (inst.solutions.empty()) {
        text += "false";
    } else {
        for (std::size_t s = 0; s < inst.solutions.size(); ++s) {
            if (s) text += " or ";
            text += "(";
            for (std::size_t i = 0; i < n; ++i) {
                if (i) text += " and ";
                text += "x" + std::to_string(i + 1) + " = " + inst.solutions[s].values[i].get_str();
            }
            text += ")";
        }
    }
    MannAxiom ax;
    ax.text = text;
    ax.bound_relative = inst.complete_within_bound;
    ax.caveat = "solutions listed are those with every exponent in [-" + std::to_string(inst.bound) + ", " +
                std::to_string(inst.bound) + "]; completeness beyond that box is not established";
    return ax;
}

} // namespace pvg
