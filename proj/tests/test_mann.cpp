#include <gtest/gtest.h>

#include <fstream>
#include <json.hpp>

#include "pvg/mann.hpp"

using namespace pvg;

namespace {

std::vector<std::vector<std::vector<long>>> exponents_of(const MannInstance& inst) {
    std::vector<std::vector<std::vector<long>>> out;
    for (const auto& s : inst.solutions) out.push_back(s.exponents);
    return out;
}

// Written by tests/oracles/mann_bruteforce.py, a scan over every exponent tuple.
std::vector<std::vector<std::vector<long>>> fixture(const std::string& name) {
    std::ifstream in(std::string(PVG_SOURCE_DIR) + "/tests/fixtures/" + name);
    const nlohmann::json j = nlohmann::json::parse(in);
    return j.at("solutions").get<std::vector<std::vector<std::vector<long>>>>();
}

std::vector<mpz_class> two_three() { return {2, 3}; }

} // namespace

TEST(MultIndep, Examples) {
    EXPECT_TRUE(mult_indep(2, 3).independent);
    const auto r = mult_indep(4, 8);
    ASSERT_FALSE(r.independent);
    EXPECT_EQ(r.witness->m, 3);
    EXPECT_EQ(r.witness->n, 2);
    const auto s = mult_indep(6, 36);
    ASSERT_FALSE(s.independent);
    EXPECT_EQ(s.witness->m, 2);
    EXPECT_EQ(s.witness->n, 1);
}

TEST(MultIndep, AgreesWithPowerSearch) {
    for (long a = 2; a <= 40; ++a)
        for (long b = 2; b <= 40; ++b) {
            bool dep = false;
            for (unsigned long m = 1; m <= 6 && !dep; ++m)
                for (unsigned long n = 1; n <= 6 && !dep; ++n) dep = ipow(mpz_class(a), m) == ipow(mpz_class(b), n);
            EXPECT_EQ(mult_indep(a, b).independent, !dep) << a << " " << b;
        }
}

TEST(Mann, OneMinusOneMatchesFixture) {
    const MannInstance inst = mann_enumerate({1, -1}, two_three(), 10);
    EXPECT_EQ(exponents_of(inst), fixture("mann_1_-1_gens_2_3_b10.json"));
    std::set<std::pair<std::string, std::string>> vals;
    for (const auto& s : inst.solutions) vals.insert({s.values[0].get_str(), s.values[1].get_str()});
    const std::set<std::pair<std::string, std::string>> want{{"2", "1"},     {"3", "2"},     {"4", "3"},  {"9", "8"},
                                                             {"3/2", "1/2"}, {"4/3", "1/3"}, {"9/8", "1/8"}};
    EXPECT_EQ(vals, want);
}

TEST(Mann, OnePlusOneMatchesFixture) {
    const MannInstance inst = mann_enumerate({1, 1}, two_three(), 5);
    EXPECT_EQ(exponents_of(inst), fixture("mann_1_1_gens_2_3_b5.json"));
    EXPECT_EQ(inst.solutions.size(), 7u);
}

TEST(Mann, SingleUnknown) {
    const MannInstance one = mann_enumerate({1}, two_three(), 0);
    ASSERT_EQ(one.solutions.size(), 1u);
    EXPECT_EQ(one.solutions[0].values[0], 1);
    const MannInstance two = mann_enumerate({2}, two_three(), 3);
    ASSERT_EQ(two.solutions.size(), 1u);
    EXPECT_EQ(two.solutions[0].values[0], mpq_class(1, 2));
}

TEST(Mann, SolutionsVerifyExactly) {
    const std::vector<mpq_class> coeffs{1, mpq_class(-1, 2), 3};
    const MannInstance inst = mann_enumerate(coeffs, two_three(), 3);
    EXPECT_FALSE(inst.solutions.empty());
    for (const auto& s : inst.solutions) {
        mpq_class sum = 0;
        for (std::size_t i = 0; i < 3; ++i) sum += coeffs[i] * s.values[i];
        EXPECT_EQ(sum, 1);
        for (int mask = 1; mask < 7; ++mask) {
            mpq_class part = 0;
            for (int i = 0; i < 3; ++i)
                if (mask >> i & 1) part += coeffs[static_cast<std::size_t>(i)] * s.values[static_cast<std::size_t>(i)];
            EXPECT_NE(part, 0);
        }
    }
}

TEST(Mann, MonotoneInBound) {
    std::set<std::vector<std::vector<long>>> prev;
    for (unsigned long b = 0; b <= 8; ++b) {
        std::set<std::vector<std::vector<long>>> now;
        for (const auto& s : mann_enumerate({1, -1}, two_three(), b).solutions) now.insert(s.exponents);
        EXPECT_TRUE(std::includes(now.begin(), now.end(), prev.begin(), prev.end())) << b;
        prev = now;
    }
}

TEST(Mann, PermutingCoefficientsPermutesSolutions) {
    const std::vector<mpq_class> c{2, -1, mpq_class(1, 3)}, swapped{mpq_class(1, 3), -1, 2};
    std::set<std::vector<std::vector<long>>> a, b;
    for (const auto& s : mann_enumerate(c, two_three(), 2).solutions) a.insert({s.exponents[2], s.exponents[1], s.exponents[0]});
    for (const auto& s : mann_enumerate(swapped, two_three(), 2).solutions) b.insert(s.exponents);
    EXPECT_EQ(a, b);
}

TEST(Mann, Guards) {
    EXPECT_THROW(mann_enumerate({1, 1, 1, 1}, two_three(), 200), BudgetError);
    EXPECT_THROW(mann_enumerate({1, 0}, two_three(), 2), DomainError);
    EXPECT_THROW(mann_enumerate({1, -1}, {4, 8}, 2), ConfigError);
}

TEST(MannAxiom, Text) {
    const MannAxiom ax = mann_axiom(mann_enumerate({1, -1}, two_three(), 10));
    EXPECT_TRUE(ax.bound_relative);
    EXPECT_EQ(ax.text.rfind("forall x1 in A. forall x2 in A. (x1 - x2 = 1 and not x1 = 0 and not - x2 = 0) -> ", 0), 0u);
    std::size_t disjuncts = 0;
    for (std::size_t pos = 0; (pos = ax.text.find("(x1 = ", pos)) != std::string::npos; ++pos) ++disjuncts;
    EXPECT_EQ(disjuncts, 7u);
    EXPECT_NE(ax.caveat.find("[-10, 10]"), std::string::npos);

    MannInstance none;
    none.coeffs = {1, 1};
    none.bound = 3;
    EXPECT_EQ(mann_axiom(none).text.substr(mann_axiom(none).text.size() - 8), "-> false");
}
