#include <gtest/gtest.h>

#include <random>

#include "formula_gen.hpp"
#include "pvg/qe.hpp"
#include "system_gen.hpp"

using namespace pvg;

namespace {

const Config& cfg5() {
    static const Config c = Config::make(5, 6, 11);
    return c;
}

bool decide_text(const std::string& s, const Config& cfg = cfg5()) { return decide(parse(s), cfg); }

// v_p(num/den - 1) by repeated division, independent of the library.
long vp_minus_one(mpz_class num, mpz_class den, unsigned long p) {
    mpz_class d = num - den;
    if (d == 0) return 1L << 40;
    long v = 0;
    while (d % p == 0) {
        d /= p;
        ++v;
    }
    return v;
}

} // namespace

TEST(EvalGround, Examples) {
    EXPECT_TRUE(eval_ground(parse("V(x) >= 1"), {{"x", {5L, 0L}}}, cfg5()));
    EXPECT_FALSE(eval_ground(parse("V(x) >= 2"), {{"x", {5L, 0L}}}, cfg5()));
    EXPECT_TRUE(eval_ground(parse("H(x)"), {{"x", {3L, 0L}}}, cfg5()));
    EXPECT_TRUE(eval_ground(parse("x cong 2 a"), {{"x", {3L, 2L}}}, cfg5()));
    EXPECT_THROW(eval_ground(parse("V(y) >= 1"), {{"x", {5L, 0L}}}, cfg5()), Error);
}

TEST(CombineCongruences, Examples) {
    auto c = combine_congruences({{2, GroupElement::alpha()}, {3, GroupElement::alpha()}});
    ASSERT_TRUE(c);
    EXPECT_EQ(c->modulus, 6);
    EXPECT_EQ(c->rep, GroupElement::alpha());
    EXPECT_FALSE(combine_congruences({{2, GroupElement::alpha()}, {2, GroupElement::beta()}}));
    auto none = combine_congruences({});
    ASSERT_TRUE(none);
    EXPECT_EQ(none->modulus, 1);
    EXPECT_EQ(none->rep, GroupElement::identity());
}

TEST(CombineCongruences, AgreesWithBruteForce) {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> mod(1, 6), e(-9, 9);
    for (int i = 0; i < 300; ++i) {
        std::vector<std::pair<mpz_class, GroupElement>> sys;
        for (int j = 0; j < 3; ++j) sys.push_back({mod(rng), GroupElement(e(rng), e(rng))});
        std::optional<GroupElement> found;
        for (long m = 0; m < 60 && !found; ++m)
            for (long n = 0; n < 60 && !found; ++n) {
                bool ok = true;
                for (const auto& [k, c] : sys) ok = ok && cong({m, n}, c, k);
                if (ok) found = GroupElement(m, n);
            }
        auto c = combine_congruences(sys);
        ASSERT_EQ(c.has_value(), found.has_value());
        if (c) {
            for (const auto& [k, r] : sys) EXPECT_TRUE(cong(c->rep, r, k));
            EXPECT_TRUE(cong(c->rep, *found, c->modulus));
        }
    }
}

TEST(BallConsistency, Examples) {
    // V(a - b) = V(α - β) = 0 here, so V(x - a) ≥ 3 and V(x - b) ≥ 3 clash.
    auto sys = normalize_conjuncts(parse("V(x - a) >= 3 and V(x - b) >= 3"), "x", 5);
    EXPECT_FALSE(ball_consistency(sys.front(), cfg5()));
    sys = normalize_conjuncts(parse("V(x - a) >= 2 and V(x - a) < 5"), "x", 5);
    EXPECT_TRUE(ball_consistency(sys.front(), cfg5()));
    // Centres a and 3126·a are at distance V(3125·a) = 5.
    sys = normalize_conjuncts(parse("V(x - a) = 2 and V(x - g(3126,0)) = 2"), "x", 5);
    EXPECT_TRUE(ball_consistency(sys.front(), cfg5()));
}

TEST(DecideExists, Examples) {
    auto one = [](const char* s) { return decide_exists(normalize_conjuncts(parse(s), "x", 5).front(), cfg5()); };
    EXPECT_TRUE(one("V(x) = 0"));
    EXPECT_FALSE(one("V(x) >= 1 and V(x) < 1"));
    EXPECT_TRUE(one("x cong 2 a and V(x - a) >= 9"));
    EXPECT_TRUE(one("x cong 2 a and V(x) >= 9"));
    EXPECT_FALSE(one("x cong 5 a and V(x) >= 9"));  // x ∈ a + 5G forces V(x) = 0
}

TEST(Decide, Examples) {
    EXPECT_TRUE(decide_text("exists x in G. V(x) = 0"));
    EXPECT_TRUE(decide_text("exists x in G. H(x) and V(x - b) >= 4"));
    EXPECT_FALSE(decide_text("exists x in G. x = a and x = b"));
    EXPECT_TRUE(decide_text("forall x in G. V(x + x) = V(x)"));
    const Config two = Config::make(2, 5, 13);
    EXPECT_TRUE(decide_text("forall x in G. V(x + x) = V(x) + 1", two));
    EXPECT_FALSE(decide_text("forall x in G. V(x + x) = V(x)", two));
    EXPECT_TRUE(decide_text("forall x in H. exists y in G. not H(y) and V(y - x) >= 7"));
    EXPECT_FALSE(decide_text("exists x in H. x cong 2 b"));
    EXPECT_TRUE(decide_text("exists x in H. x cong 2 g(3,4)"));
    EXPECT_TRUE(decide_text("forall x in G. exists y in G. 5 * y = 5 * x"));
    EXPECT_FALSE(decide_text("forall x in G. exists y in G. 2 * y = x"));
    EXPECT_TRUE(decide_text("forall x in G. exists y in G. y cong 2 x and not y = x"));
}

TEST(Decide, FragmentAndIdentifierErrors) {
    EXPECT_THROW(decide_text("exists x in G. H(x - a)"), UnsupportedFragment);
    EXPECT_THROW(decide_text("exists x in G. V(x - y) >= 1"), Error);
}

TEST(Decide, SoundAgainstWitnessSearch) {
    std::mt19937_64 rng(31337);
    pvg::testing::SystemGen gen{rng};
    int sat_witnessed = 0, unsat = 0, sat_unwitnessed = 0;
    for (int i = 0; i < 260; ++i) {
        F phi = gen.system();
        const bool sat = decide(mk_exists("x", Sort::G, phi), cfg5());
        auto w = witness_search(phi, "x", {}, cfg5(), 20);
        if (w) {
            EXPECT_TRUE(sat) << to_string(phi) << " witness " << *w;
            EXPECT_TRUE(eval_ground(phi, {{"x", *w}}, cfg5()));
            ++sat_witnessed;
        } else if (!sat) {
            ++unsat;
        } else {
            ++sat_unwitnessed;
        }
    }
    EXPECT_GT(sat_witnessed, 50);
    EXPECT_GT(unsat, 20);
}

TEST(Decide, NegationCoherence) {
    std::mt19937_64 rng(5);
    pvg::testing::FormulaGen gen{rng};
    gen.surface = false;
    gen.max_exp = 3;
    gen.max_radius = 3;
    for (int i = 0; i < 60; ++i) {
        F body = gen.quantifier_free(2);
        F s = mk_forall("x", Sort::G, mk_exists("y", i % 2 ? Sort::G : Sort::H, body));
        EXPECT_EQ(decide(mk_not(s), cfg5()), !decide(s, cfg5())) << to_string(s);
    }
}

TEST(Decide, QuantifierOrderRobustness) {
    std::mt19937_64 rng(77);
    pvg::testing::FormulaGen gen{rng};
    gen.surface = false;
    gen.max_exp = 3;
    gen.max_radius = 4;
    int truths = 0;
    for (int i = 0; i < 60; ++i) {
        F body = gen.quantifier_free(2);
        const bool xy = decide(mk_exists("x", Sort::G, mk_exists("y", Sort::G, body)), cfg5());
        const bool yx = decide(mk_exists("y", Sort::G, mk_exists("x", Sort::G, body)), cfg5());
        EXPECT_EQ(xy, yx) << to_string(body);
        truths += xy;
    }
    EXPECT_GT(truths, 5);
    EXPECT_LT(truths, 55);
}

TEST(Eliminate, AgreesPointwiseWithWitnessSearch) {
    // ψ(y) := QE(∃x φ(x, y)); at sampled y, a witness forces ψ(y) and ¬ψ(y) forbids one.
    std::mt19937_64 rng(2718);
    pvg::testing::FormulaGen gen{rng};
    gen.surface = false;
    gen.max_exp = 3;
    gen.max_radius = 3;
    std::uniform_int_distribution<long> e(-4, 4);
    Evaluator ev(cfg5());
    int witnessed = 0, refuted = 0;
    for (int i = 0; i < 40; ++i) {
        F phi = gen.quantifier_free(2);
        F psi = eliminate(mk_exists("x", Sort::G, phi), ev);
        ASSERT_TRUE(is_quantifier_free(psi));
        ASSERT_FALSE(free_vars(psi).count("x"));
        for (int j = 0; j < 4; ++j) {
            const Env env{{"y", GroupElement(e(rng), e(rng))}};
            const bool truth = ev.eval(psi, env);
            auto w = witness_search(phi, "x", env, cfg5(), 12);
            if (w) {
                EXPECT_TRUE(truth) << to_string(phi) << " at y=" << env.at("y") << "\n  psi: " << to_string(psi);
                ++witnessed;
            }
            if (!truth) ++refuted;
        }
    }
    EXPECT_GT(witnessed, 20);
    EXPECT_GT(refuted, 5);
}

TEST(WitnessSearch, Examples) {
    F sys = parse("x cong 2 a and V(x - a) >= 2");
    auto w = witness_search(sys, "x", {}, cfg5(), 200);
    ASSERT_TRUE(w);
    EXPECT_NE(w->m % 2, 0);
    EXPECT_EQ(w->n % 2, 0);
    // v_5(6^(m-1) 11^n - 1) ≥ 3, checked over integers.
    const long m1 = w->m.get_si() - 1, n = w->n.get_si();
    mpz_class num = 1, den = 1;
    mpz_class six = 6, eleven = 11;
    for (long i = 0; i < std::abs(m1); ++i) (m1 > 0 ? num : den) *= six;
    for (long i = 0; i < std::abs(n); ++i) (n > 0 ? num : den) *= eleven;
    EXPECT_GE(vp_minus_one(num, den, 5), 3);

    EXPECT_FALSE(witness_search(parse("V(x) >= 1 and V(x) < 1"), "x", {}, cfg5(), 20));
    auto self = witness_search(parse("V(x - a) >= 0"), "x", {}, cfg5(), 20);
    ASSERT_TRUE(self);
    EXPECT_EQ(*self, GroupElement::identity());  // every element qualifies; the order starts at (0, 0)
    auto pinned = witness_search(parse("x = a"), "x", {}, cfg5(), 20);
    ASSERT_TRUE(pinned);
    EXPECT_EQ(*pinned, GroupElement::alpha());
}
