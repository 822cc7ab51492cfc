#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "pvg/padic.hpp"

using namespace pvg;

namespace {

// Repeated-division valuation of an integer; independent of mpz_remove.
long vp_by_division(long x, long p) {
    long v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

// log_p(x) mod p^N from an exact rational partial sum of the series.
mpz_class log_oracle(const mpq_class& x, unsigned long p, unsigned long precision, unsigned long terms) {
    mpq_class t = x - 1, power = 1, sum = 0;
    for (unsigned long i = 1; i <= terms; ++i) {
        power *= t;
        mpq_class term = power / mpq_class(i);
        sum += (i % 2 == 1) ? term : mpq_class(-term);
    }
    sum.canonicalize();
    const mpz_class m = ipow(p, precision);
    return rational_mod(sum, m);
}

// Units mod p^8 that are n-th powers, by exhaustive enumeration.
std::vector<bool> power_residues(unsigned long p, unsigned long n) {
    unsigned long m = 1;
    for (int i = 0; i < 8; ++i) m *= p;
    std::vector<bool> hit(m, false);
    for (unsigned long y = 1; y < m; ++y) {
        if (y % p == 0) continue;
        unsigned __int128 acc = 1;
        for (unsigned long i = 0; i < n; ++i) acc = acc * y % m;
        hit[static_cast<unsigned long>(acc)] = true;
    }
    return hit;
}

} // namespace

TEST(Vp, Examples) {
    EXPECT_EQ(vp(mpq_class(75), 5), 2);
    EXPECT_EQ(vp(mpq_class(-5, 11), 5), 1);
    EXPECT_EQ(vp(mpq_class(63), 3), vp_by_division(63, 3));
    EXPECT_EQ(vp(mpq_class(63), 3), 2);
    EXPECT_EQ(vp(mpq_class(3, 4), 2), -2);
}

TEST(Vp, ZeroIsDomainError) { EXPECT_THROW(vp(mpq_class(0), 5), DomainError); }

TEST(Vp, MultiplicativeAndUltrametric) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-5000, 5000);
    for (unsigned long p : {2UL, 3UL, 5UL, 7UL}) {
        for (int i = 0; i < 300; ++i) {
            long a = d(rng), b = d(rng), c = d(rng), e = d(rng);
            if (!a || !b || !c || !e) continue;
            mpq_class q(a, b), r(c, e);
            q.canonicalize();
            r.canonicalize();
            EXPECT_EQ(vp(q * r, p), vp(q, p) + vp(r, p));
            if (q + r != 0) {
                long lhs = vp(q + r, p), lo = std::min(vp(q, p), vp(r, p));
                EXPECT_GE(lhs, lo);
                if (vp(q, p) != vp(r, p)) {
                    EXPECT_EQ(lhs, lo);
                }
            }
        }
    }
}

TEST(PadicLog, SixModOneTwentyFive) {
    PadicApprox l = padic_log(mpq_class(6), 5, 3);
    EXPECT_EQ(l.residue(), 55);
    // 5 - 25/2 with 2^-1 = 63 mod 125.
    EXPECT_EQ(mod(mpz_class(5) - 25 * 63, 125), 55);
}

TEST(PadicLog, IdentityIsZero) {
    for (unsigned long n : {1UL, 5UL, 40UL}) {
        PadicApprox l = padic_log(mpq_class(1), 5, n);
        EXPECT_TRUE(l.possibly_zero());
        EXPECT_EQ(l.residue(), 0);
    }
}

TEST(PadicLog, ValuationOfLogSix) {
    for (unsigned long n = 2; n <= 64; ++n) EXPECT_EQ(padic_log(mpq_class(6), 5, n).valuation(), 1) << n;
}

TEST(PadicLog, AgreesWithRationalSeriesOracle) {
    for (auto [x, p] : std::vector<std::pair<mpq_class, unsigned long>>{
             {mpq_class(6), 5}, {mpq_class(11, 6), 5}, {mpq_class(4), 3}, {mpq_class(5), 2}, {mpq_class(8), 7}}) {
        const unsigned long n = 10;
        // Terms beyond i = 60 have valuation > 10 for every case above.
        EXPECT_EQ(padic_log(x, p, n).residue(), log_oracle(x, p, n, 60)) << x.get_str() << " p=" << p;
    }
}

TEST(PadicLog, Multiplicative) {
    std::mt19937_64 rng(11);
    for (unsigned long p : {3UL, 5UL, 7UL}) {
        std::uniform_int_distribution<long> d(1, 400);
        for (int i = 0; i < 60; ++i) {
            mpq_class x(1 + static_cast<long>(p) * d(rng)), y(1 + static_cast<long>(p) * d(rng), 1 + static_cast<long>(p) * d(rng));
            y.canonicalize();
            for (unsigned long n : {5UL, 17UL, 40UL}) {
                mpz_class lhs = mpz_class(0), rhs = mpz_class(0);
                const mpz_class m = ipow(p, n);
                auto safe = [&](const mpq_class& z) -> mpz_class {
                    try {
                        return padic_log(z, p, n).residue();
                    } catch (const IndeterminateError&) {
                        return 0;
                    }
                };
                lhs = safe(x * y);
                rhs = mod(safe(x) + safe(y), m);
                EXPECT_EQ(lhs, rhs);
            }
        }
    }
}

TEST(PadicLog, DomainAndPrecisionErrors) {
    EXPECT_THROW(padic_log(mpq_class(2), 5, 10), DomainError);
    EXPECT_THROW(padic_log(mpq_class(3), 2, 10), DomainError);  // 3 ∉ 1 + 4Z_2
    EXPECT_THROW(padic_log(mpq_class(1 + 625), 5, 3), IndeterminateError);
    try {
        padic_log(mpq_class(1 + 625), 5, 3);
    } catch (const IndeterminateError& e) {
        EXPECT_EQ(e.precision_reached(), 3u);
    }
    EXPECT_EQ(log_valuation(mpq_class(1 + 625), 5), 4);
}

TEST(NthPower, Examples) {
    EXPECT_TRUE(is_nth_power(mpq_class(6), 2, 5));
    EXPECT_FALSE(is_nth_power(mpq_class(2), 2, 5));
    EXPECT_TRUE(is_nth_power(mpq_class(25), 2, 5));
    EXPECT_FALSE(is_nth_power(mpq_class(5), 2, 5));
    EXPECT_TRUE(is_nth_power(mpq_class(17), 2, 2));
    EXPECT_FALSE(is_nth_power(mpq_class(5), 2, 2));
}

TEST(NthPower, PowersArePowers) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> d(-60, 60);
    for (unsigned long p : {2UL, 3UL, 5UL, 7UL})
        for (unsigned long n = 2; n <= 6; ++n)
            for (int i = 0; i < 40; ++i) {
                long a = d(rng), b = d(rng);
                if (!a || !b) continue;
                mpq_class x(a, b);
                x.canonicalize();
                EXPECT_TRUE(is_nth_power(qpow(x, static_cast<long>(n)), n, p));
            }
}

TEST(NthPower, AgreesWithResidueEnumerationModP8) {
    for (unsigned long p : {2UL, 3UL, 5UL}) {
        const mpz_class m = ipow(p, 8);
        for (unsigned long n : {2UL, 3UL, 4UL, 5UL, 6UL}) {
            const auto table = power_residues(p, n);
            for (long x = -200; x <= 200; ++x) {
                if (x == 0) continue;
                long v = vp_by_division(x < 0 ? -x : x, static_cast<long>(p));
                bool expected = false;
                if (v % static_cast<long>(n) == 0) {
                    long unit = x;
                    for (long i = 0; i < v; ++i) unit /= static_cast<long>(p);
                    expected = table[mod(mpz_class(unit), m).get_ui()];
                }
                EXPECT_EQ(is_nth_power(mpq_class(x), n, p), expected) << "x=" << x << " n=" << n << " p=" << p;
            }
        }
    }
}

TEST(LambdaRep, Examples) {
    EXPECT_EQ(lambda_rep(mpq_class(50), 5), 25);
    EXPECT_EQ(lambda_rep(mpq_class(3, 4), 2), mpq_class(1, 4));
    EXPECT_EQ(lambda_rep(mpq_class(1), 3), 1);
    EXPECT_THROW(lambda_rep(mpq_class(0), 3), DomainError);
}

TEST(LambdaRep, Multiplicative) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> d(-999, 999);
    for (int i = 0; i < 200; ++i) {
        long a = d(rng), b = d(rng), c = d(rng), e = d(rng);
        if (!a || !b || !c || !e) continue;
        mpq_class x(a, b), y(c, e);
        x.canonicalize();
        y.canonicalize();
        EXPECT_EQ(lambda_rep(x * y, 3), lambda_rep(x, 3) * lambda_rep(y, 3));
    }
}

TEST(ConfigTest, ValidDenseConfigs) {
    EXPECT_EQ(Config::make(5, 6, 11).k, 1u);
    EXPECT_EQ(Config::make(3, 4, 7).k, 1u);
    EXPECT_EQ(Config::make(7, 8, 29).k, 1u);
    EXPECT_EQ(Config::make(2, 5, 13).k, 2u);
}

TEST(ConfigTest, Rejections) {
    EXPECT_THROW(Config::make(4, 5, 9), ConfigError);
    EXPECT_THROW(Config::make(5, 6, 6), ConfigError);
    try {
        Config::make(5, 4, 8);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("(3, 2)"), std::string::npos);
    }
    EXPECT_THROW(Config::make(5, 10, 11), ConfigError);   // v_5(10) > 0
    EXPECT_THROW(Config::make(5, 6, 26), ConfigError);    // k differs
    EXPECT_THROW(Config::make(2, 3, 5), ConfigError);     // p = 2 needs k >= 2
    try {
        Config::make(5, 2, 3);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("alpha^4"), std::string::npos) << e.what();
    }
}

TEST(PadicApproxTest, PrecisionPropagation) {
    PadicApprox a(5, 10, 5 * 7), b(5, 6, 25);
    EXPECT_EQ((a + b).precision(), 6u);
    EXPECT_EQ((mpz_class(25) * b).precision(), 8u);
    EXPECT_EQ((a * b).precision(), std::min(10u + 2u, 6u + 1u));
    EXPECT_EQ(a.valuation(), 1);
    EXPECT_EQ(a.unit_part(), 7);
}
