#include <gtest/gtest.h>

#include "pvg/auditor.hpp"

using namespace pvg;

namespace {

// Multiplicative order of a modulo m by repeated multiplication.
unsigned long brute_order(unsigned long a, unsigned long m) {
    unsigned long e = 1, acc = a % m;
    while (acc != 1) {
        acc = acc * a % m;
        ++e;
    }
    return e;
}

AuditOptions small_opts(unsigned long depth, long bound, std::uint64_t seed = 1) {
    AuditOptions o;
    o.depth = depth;
    o.bound = bound;
    o.seed = seed;
    o.samples = 16;
    return o;
}

} // namespace

TEST(Auditor, OrderOfSixModulo125) {
    EXPECT_EQ(brute_order(6, 125), 25u);
    const Config cfg = Config::make(5, 6, 11);
    AuditOptions o = small_opts(3, 10);
    const AxiomResult r = audit(cfg, o).at("density_K");
    EXPECT_EQ(r.status, AuditStatus::pass);
    EXPECT_EQ(r.instances, 4u);  // N = 2, 3 for α and β
}

TEST(Auditor, OrdersAgreeWithBruteForce) {
    for (auto [p, a, b] : {std::tuple{5UL, 6UL, 11UL}, {3UL, 4UL, 7UL}, {7UL, 8UL, 29UL}}) {
        const Config cfg = Config::make(p, a, b);
        unsigned long pn = p;
        for (unsigned long N = 2; N <= 5; ++N) {
            pn *= p;
            unsigned long expect = 1;
            for (unsigned long i = cfg.k; i < N; ++i) expect *= p;
            EXPECT_EQ(brute_order(a, pn), expect) << p << " " << a << " " << N;
            EXPECT_EQ(brute_order(b, pn), expect) << p << " " << b << " " << N;
        }
    }
}

TEST(Auditor, AlphaLogMatchesPowerTable) {
    const Config cfg = Config::make(5, 6, 11);
    const unsigned long M = 3;
    const unsigned long Q = 5 * 125;  // p^(k+M)
    std::map<unsigned long, unsigned long> table;
    unsigned long acc = 1;
    for (unsigned long t = 0; t < 125; ++t) {
        table[acc] = t;
        acc = acc * 6 % Q;
    }
    for (unsigned long h = 1; h < Q; h += 5) EXPECT_EQ(detail::alpha_log(cfg, h, M), table.at(h)) << h;
}

TEST(Auditor, ShortSolutionsAreMinimal) {
    const mpz_class P = 625;
    for (long b : {1L, 7L, 123L, 400L})
        for (long c : {0L, 1L, 99L, 311L}) {
            const auto sols = detail::short_solutions(b, c, P);
            const detail::Vec2& z = sols.front();
            EXPECT_EQ(mod(z.x + b * z.y - c, P), 0);
            long best = 1 << 30;
            for (long x = -320; x <= 320; ++x)
                for (long y = -320; y <= 320; ++y)
                    if (((x + b * y - c) % 625 + 625) % 625 == 0) best = std::min(best, std::max(std::abs(x), std::abs(y)));
            EXPECT_EQ(detail::max_abs(z), best) << b << " " << c;
        }
}

TEST(Auditor, StandardConfigPassesAtDepthSix) {
    AuditOptions o;
    o.depth = 6;
    o.bound = 10000;
    const AuditReport rep = audit(Config::make(5, 6, 11), o);
    for (const auto& a : rep.axioms) EXPECT_EQ(a.status, AuditStatus::pass) << a.id << ": " << a.detail;
    EXPECT_EQ(rep.axioms.size(), 10u);
}

TEST(Auditor, SmallBoundIsInconclusiveNotFail) {
    const AuditReport rep = audit(Config::make(7, 8, 29), small_opts(5, 3));
    EXPECT_EQ(rep.count(AuditStatus::fail), 0u);
    EXPECT_EQ(rep.at("axiom8").status, AuditStatus::inconclusive);
    EXPECT_NE(rep.at("axiom8").detail.find("--bound"), std::string::npos);
}

TEST(Auditor, MonotoneInDepthAndBound) {
    const Config cfg = Config::make(3, 4, 7);
    const AuditReport big = audit(cfg, small_opts(6, 2000));
    for (unsigned long d = 1; d <= 6; ++d)
        for (long b : {1L, 50L, 2000L}) {
            const AuditReport r = audit(cfg, small_opts(d, b));
            EXPECT_EQ(r.count(AuditStatus::fail), 0u);
        }
    EXPECT_EQ(big.count(AuditStatus::fail), 0u);
}

TEST(Auditor, DeterministicForSeed) {
    const Config cfg = Config::make(5, 6, 11);
    const AuditReport a = audit(cfg, small_opts(4, 100, 9)), b = audit(cfg, small_opts(4, 100, 9));
    ASSERT_EQ(a.axioms.size(), b.axioms.size());
    for (std::size_t i = 0; i < a.axioms.size(); ++i) {
        EXPECT_EQ(a.axioms[i].status, b.axioms[i].status);
        EXPECT_EQ(a.axioms[i].instances, b.axioms[i].instances);
        EXPECT_EQ(a.axioms[i].detail, b.axioms[i].detail);
    }
}

TEST(Auditor, InconsistentConfigFailsWithCheckableCounterexample) {
    // k = 0 is wrong for α = 6 at p = 5; V(α) becomes 1.
    Config bad = Config::make(5, 6, 11);
    bad.k = 0;
    const AuditReport rep = audit(bad, small_opts(3, 100));
    const AxiomResult& a5 = rep.at("axiom5");
    ASSERT_EQ(a5.status, AuditStatus::fail);
    ASSERT_TRUE(a5.counterexample);
    ASSERT_EQ(a5.counterexample->elements.size(), 1u);
    EXPECT_NE(big_V(bad, a5.counterexample->elements.front()), ExtValue(0));
    for (const auto& a : rep.axioms)
        if (a.status == AuditStatus::fail) {
            EXPECT_TRUE(a.counterexample) << a.id;
        }
}

TEST(Auditor, RejectsBadParameters) {
    const Config cfg = Config::make(5, 6, 11);
    EXPECT_THROW(audit(cfg, small_opts(0, 10)), DomainError);
    EXPECT_THROW(audit(cfg, small_opts(3, 0)), DomainError);
    EXPECT_THROW(Config::make(5, 6, 6), ConfigError);
}
