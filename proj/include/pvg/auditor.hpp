#pragma once

// Finite-scale audit of the pair axioms on the standard model.
//
// Density witnesses are built in α-logarithm coordinates: on
// (1 + p^k Z_p)/(1 + p^(k+M) Z_p), cyclic of order p^M and generated by α,
// an element α^m β^n has coordinate m + n·b where β ≡ α^b. Every witness is
// then re-checked with capped_V, which does not use these coordinates.

#include <gmpxx.h>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pvg/arith.hpp"
#include "pvg/errors.hpp"
#include "pvg/group.hpp"
#include "pvg/independence.hpp"
#include "pvg/padic.hpp"

namespace pvg {

enum class AuditStatus { pass, fail, inconclusive, vacuous };

inline const char* status_str(AuditStatus s) {
    switch (s) {
    case AuditStatus::pass: return "pass";
    case AuditStatus::fail: return "fail";
    case AuditStatus::inconclusive: return "inconclusive";
    case AuditStatus::vacuous: return "vacuous";
    }
    return "?";
}

struct Counterexample {
    std::vector<GroupElement> elements;
    std::string claim;
};

struct AxiomResult {
    std::string id;
    std::string statement;
    AuditStatus status = AuditStatus::vacuous;
    std::size_t instances = 0;
    std::string detail;
    std::optional<Counterexample> counterexample;
};

struct AuditOptions {
    unsigned long depth = 6;
    mpz_class bound = 10000;       // witnesses y = n·z need |exponents of z| <= bound
    std::uint64_t seed = 1;
    unsigned long samples = 64;
    long sample_range = 1000;      // sampled exponents lie in [-range, range]
};

struct AuditReport {
    Config config;
    AuditOptions options;
    std::vector<AxiomResult> axioms;
    double wall_ms = 0;

    std::size_t count(AuditStatus s) const {
        std::size_t c = 0;
        for (const auto& a : axioms) c += a.status == s;
        return c;
    }
    const AxiomResult& at(const std::string& id) const {
        for (const auto& a : axioms)
            if (a.id == id) return a;
        throw Error("no audit entry '" + id + "'");
    }
};

namespace detail {

/// Outcome accumulator for one axiom; a fail is final.
class Tally {
public:
    Tally(std::string id, std::string statement) {
        r_.id = std::move(id);
        r_.statement = std::move(statement);
    }
    bool failed() const { return failed_; }
    void ok() { ++r_.instances; }
    void fail(Counterexample ce) {
        ++r_.instances;
        if (failed_) return;
        failed_ = true;
        r_.detail = ce.claim;
        r_.counterexample = std::move(ce);
    }
    void beyond(const std::string& why) {
        ++r_.instances;
        if (!inconclusive_ && !failed_) r_.detail = why;
        inconclusive_ = true;
    }
    AxiomResult finish() {
        if (failed_) r_.status = AuditStatus::fail;
        else if (inconclusive_) r_.status = AuditStatus::inconclusive;
        else if (r_.instances == 0) r_.status = AuditStatus::vacuous;
        else r_.status = AuditStatus::pass;
        if (r_.status == AuditStatus::pass)
            r_.detail = std::to_string(r_.instances) + " instances";
        else if (r_.status == AuditStatus::vacuous)
            r_.detail = "no instance met the hypotheses";
        return std::move(r_);
    }

private:
    AxiomResult r_;
    bool failed_ = false;
    bool inconclusive_ = false;
};

/// t with α^t ≡ h modulo p^(k+M), for h ≡ 1 mod p^k; digit by digit.
inline mpz_class alpha_log(const Config& cfg, const mpz_class& h, unsigned long M) {
    const mpz_class Q = ipow(cfg.p, cfg.k + M);
    const mpz_class p(cfg.p);
    mpz_class t = 0;
    for (unsigned long j = 0; j < M; ++j) {
        const mpz_class pj = ipow(cfg.p, j);
        const mpz_class scale = ipow(cfg.p, cfg.k + j);
        const mpz_class r = mod(h * pow_mod(cfg.alpha, -t, Q), Q);
        const mpz_class step = mod(pow_mod(cfg.alpha, pj, Q) - 1, Q);
        if (mod(r - 1, scale) != 0 || mod(step, scale) != 0)
            throw DomainError("alpha does not generate 1 + p^k Z_p modulo p^" + std::to_string(cfg.k + M));
        const mpz_class s = (r - 1) / scale;
        const mpz_class u = step / scale;
        const mpz_class d = mod(s * inv_mod(u, p), p);
        t += d * pj;
    }
    return t;
}

struct Vec2 {
    mpz_class x, y;
};

inline mpz_class round_q(mpq_class q) {
    q.canonicalize();
    mpz_class r;
    mpq_class h = q + mpq_class(1, 2);
    mpz_fdiv_q(r.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
    return r;
}

inline mpz_class floor_q(mpq_class q) {
    q.canonicalize();
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline mpz_class ceil_q(const mpq_class& q) { return -floor_q(-q); }

inline mpz_class max_abs(const Vec2& v) {
    mpz_class a = abs(v.x), b = abs(v.y);
    return a < b ? b : a;
}

/// Short z with z.x + b·z.y ≡ c (mod P), smallest max-norm first.
inline std::vector<Vec2> short_solutions(const mpz_class& b, const mpz_class& c, const mpz_class& P) {
    Vec2 u{P, 0}, v{-mod(b, P), 1};
    auto dot = [](const Vec2& s, const Vec2& t) -> mpz_class { return s.x * t.x + s.y * t.y; };
    for (;;) {
        if (dot(u, u) > dot(v, v)) std::swap(u, v);
        const mpz_class mu = round_q(mpq_class(dot(u, v), dot(u, u)));
        if (mu == 0) break;
        v = Vec2{v.x - mu * u.x, v.y - mu * u.y};
    }
    // Babai rounding gives a first candidate of max-norm N0; Cramer's rule bounds the
    // coefficients of every solution of max-norm <= N0; that box is enumerated.
    const Vec2 z0{mod(c, P), 0};
    const mpz_class det = abs(u.x * v.y - u.y * v.x);
    const mpz_class sgn = u.x * v.y - u.y * v.x > 0 ? 1 : -1;
    const mpq_class s_real(sgn * (z0.x * v.y - z0.y * v.x), det), t_real(sgn * (u.x * z0.y - u.y * z0.x), det);
    auto at = [&](const mpz_class& s, const mpz_class& t) {
        return Vec2{z0.x - s * u.x - t * v.x, z0.y - s * u.y - t * v.y};
    };
    const mpz_class n0 = max_abs(at(round_q(s_real), round_q(t_real)));
    const mpq_class ds(n0 * (abs(v.x) + abs(v.y)), det), dt(n0 * (abs(u.x) + abs(u.y)), det);
    std::vector<Vec2> out;
    // One extra step each way keeps z ± u and z ± v, so some candidate has z.y != 0.
    for (mpz_class s = floor_q(s_real - ds) - 1; s <= ceil_q(s_real + ds) + 1; ++s)
        for (mpz_class t = floor_q(t_real - dt) - 1; t <= ceil_q(t_real + dt) + 1; ++t) out.push_back(at(s, t));
    std::sort(out.begin(), out.end(), [](const Vec2& a, const Vec2& b2) {
        const mpz_class na = max_abs(a), nb = max_abs(b2);
        if (na != nb) return na < nb;
        if (a.x != b2.x) return a.x < b2.x;
        return a.y < b2.y;
    });
    return out;
}

/// Symmetric residue of c modulo P.
inline mpz_class centered(const mpz_class& c, const mpz_class& P) {
    mpz_class r = mod(c, P);
    if (2 * r > P) r -= P;
    return r;
}

struct Sampler {
    std::mt19937_64 rng;
    long range;

    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
    GroupElement g() { return {uniform(-range, range), uniform(-range, range)}; }
    GroupElement h() { return {uniform(-range, range), 0L}; }
};

inline bool within(const GroupElement& z, const mpz_class& bound) { return abs(z.m) <= bound && abs(z.n) <= bound; }

inline std::string beyond_msg(const std::string& what, unsigned long radius, const mpz_class& bound) {
    return what + " at radius " + std::to_string(radius) + " needs exponents beyond bound " + bound.get_str() +
           "; raise --bound";
}

// (a) axioms 1 and 2: quotient sizes, congruence and purity.
inline AxiomResult check_quotients(const Config&, const AuditOptions& o, Sampler s, bool subgroup_H) {
    Tally t(subgroup_H ? "axiom2" : "axiom1",
            subgroup_H ? "H pure in G, [H : nH] = n, 1 in H" : "x cong_n y iff x - y in nG, [G : nG] = n^2");
    if (subgroup_H) {
        if (GroupElement::alpha().in_H()) t.ok();
        else t.fail({{GroupElement::alpha()}, "1 is not in H"});
    }
    for (unsigned long n = 2; n <= std::max(2UL, o.depth); ++n) {
        const mpz_class nz(n);
        const auto reps = quotient_reps(n, subgroup_H);
        if (reps.size() == (subgroup_H ? n : n * n)) t.ok();
        else t.fail({{}, "quotient by " + std::to_string(n) + " has " + std::to_string(reps.size()) + " classes"});
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (std::size_t j = i + 1; j < reps.size(); ++j) {
                if (!cong(reps[i], reps[j], nz)) t.ok();
                else t.fail({{reps[i], reps[j]}, "representatives congruent mod " + std::to_string(n)});
            }
        for (unsigned long k = 0; k < o.samples; ++k) {
            const GroupElement x = subgroup_H ? s.h() : s.g();
            std::size_t hits = 0;
            for (const auto& r : reps) hits += cong(x, r, nz);
            if (hits == 1) t.ok();
            else t.fail({{x}, "element lies in " + std::to_string(hits) + " classes mod " + std::to_string(n)});
            // x ≡_n y iff x = y + n·g for some g
            const GroupElement y = subgroup_H ? s.h() : s.g();
            const GroupElement d = x - y;
            const bool divisible = mod(d.m, nz) == 0 && mod(d.n, nz) == 0;
            if (cong(x, y, nz) == divisible) t.ok();
            else t.fail({{x, y}, "congruence mod " + std::to_string(n) + " disagrees with divisibility"});
            if (subgroup_H) {
                const GroupElement h = nz * s.h();
                const GroupElement q{h.m / nz, h.n / nz};
                if (q.in_H() && nz * q == h) t.ok();
                else t.fail({{h}, "element of H n G is not in nH for n = " + std::to_string(n)});
            }
        }
    }
    return t.finish();
}

// Axiom 3: V takes values in N ∪ {∞} and S(∞) = ∞.
inline AxiomResult check_value_set(const Config& cfg, const AuditOptions& o, Sampler s) {
    Tally t("axiom3", "VG discrete with first element 0, S(inf) = inf");
    if (ExtValue::infinity() + 1 == ExtValue::infinity()) t.ok();
    else t.fail({{}, "S(inf) != inf"});
    for (unsigned long k = 0; k < o.samples; ++k) {
        const GroupElement x = s.g();
        const ExtValue v = big_V(cfg, x);
        if (x.is_identity() || (!v.is_infinite() && v.value() >= 0 && v + 1 > v)) t.ok();
        else t.fail({{x}, "V(x) = " + v.str() + " is not a natural number"});
    }
    return t.finish();
}

// (f) axiom 4: the p-valued group laws on G and on H.
inline AxiomResult check_valuation_laws(const Config& cfg, const AuditOptions& o, Sampler s) {
    Tally t("axiom4", "(G, V) and (H, V) are p-valued groups");
    Sampler small{std::mt19937_64(s.rng()), std::min<long>(s.range, 60)};
    if (big_V(cfg, GroupElement::identity()).is_infinite()) t.ok();
    else t.fail({{GroupElement::identity()}, "V(0) is finite"});
    for (unsigned long k = 0; k < 2 * o.samples; ++k) {
        const bool in_h = k % 2 == 1;
        const GroupElement x = in_h ? small.h() : small.g(), y = in_h ? small.h() : small.g();
        const ExtValue vx = big_V(cfg, x), vy = big_V(cfg, y);
        if (x.is_identity() || !vx.is_infinite()) t.ok();
        else t.fail({{x}, "V(x) = inf for x != 0"});
        long c = small.uniform(-30, 30);
        if (c == 0) c = 1;
        const mpz_class cz(c);
        const ExtValue vc = big_V(cfg, cz * x);
        if (vc == vx + static_cast<std::int64_t>(vp_int(cz, cfg.p))) t.ok();
        else t.fail({{x, cz * x}, "V(c x) != V(x) + v_p(c) for c = " + std::to_string(c)});
        const ExtValue vs = big_V(cfg, x + y);
        const bool ultra = vs >= min(vx, vy) && (vx == vy || vs == min(vx, vy));
        if (ultra) t.ok();
        else t.fail({{x, y}, "ultrametric law fails: V(x + y) = " + vs.str()});
    }
    return t.finish();
}

// (b) axiom 5: V(1) = V(C) = 0 and the coset pattern of i·1 + j·C.
inline AxiomResult check_constants(const Config& cfg, const AuditOptions& o) {
    Tally t("axiom5", "V(1) = V(C) = 0; i 1 + j C pairwise incongruent mod n; i 1 in distinct cosets of nH");
    for (const GroupElement& g : {GroupElement::alpha(), GroupElement::beta()}) {
        if (big_V(cfg, g) == ExtValue(0)) t.ok();
        else t.fail({{g}, "V = " + big_V(cfg, g).str() + ", expected 0"});
    }
    for (unsigned long n = 2; n <= std::max(2UL, o.depth); ++n) {
        const mpz_class nz(n);
        std::vector<GroupElement> cs;
        for (unsigned long i = 0; i < n; ++i)
            for (unsigned long j = 0; j < n; ++j)
                cs.push_back(mpz_class(i) * GroupElement::alpha() + mpz_class(j) * GroupElement::beta());
        for (std::size_t a = 0; a < cs.size(); ++a)
            for (std::size_t b = a + 1; b < cs.size(); ++b) {
                if (!cong(cs[a], cs[b], nz)) t.ok();
                else t.fail({{cs[a], cs[b]}, "congruent mod " + std::to_string(n)});
            }
        for (unsigned long i = 0; i < n; ++i)
            for (unsigned long j = i + 1; j < n; ++j) {
                const GroupElement d = mpz_class(j - i) * GroupElement::alpha();
                if (!(d.in_H() && mod(d.m, nz) == 0)) t.ok();
                else t.fail({{mpz_class(i) * GroupElement::alpha(), mpz_class(j) * GroupElement::alpha()},
                             "same coset of nH for n = " + std::to_string(n)});
            }
    }
    return t.finish();
}

// (c) axiom 6: unique residue unit on pairs of equal value.
inline AxiomResult check_residue_units(const Config& cfg, const AuditOptions& o, Sampler s) {
    Tally t("axiom6", "V(x) = V(y) implies a unique 0 < i < p with V(x - i y) > V(x)");
    for (unsigned long k = 0; k < 4 * o.samples; ++k) {
        const mpz_class lift = ipow(cfg.p, static_cast<unsigned long>(s.uniform(0, 3)));
        const GroupElement x = lift * s.g(), y = lift * s.g();
        const ExtValue vx = big_V(cfg, x), vy = big_V(cfg, y);
        if (vx.is_infinite() || vx != vy) continue;
        unsigned long hits = 0;
        for (unsigned long i = 1; i < cfg.p; ++i)
            hits += capped_V(cfg, x - mpz_class(i) * y, vx.value() + 1).saturated;
        if (hits == 1) t.ok();
        else t.fail({{x, y}, std::to_string(hits) + " values of i raise the valuation"});
    }
    return t.finish();
}

/// Log coordinates modulo p^M, or the reason they are unavailable.
struct LogFrame {
    mpz_class P;
    mpz_class b;
    std::string error;

    mpz_class of(const GroupElement& g) const { return mod(g.m + g.n * b, P); }
};

inline LogFrame log_frame(const Config& cfg, unsigned long M) {
    LogFrame f;
    f.P = ipow(cfg.p, M);
    try {
        f.b = alpha_log(cfg, mod(cfg.beta, ipow(cfg.p, cfg.k + M)), M);
    } catch (const Error& e) {
        f.error = e.what();
    }
    return f;
}

// (d) axiom 7: nG is dense in {V >= v_p(n)}.
inline AxiomResult check_regular_density(const Config& cfg, const AuditOptions& o, Sampler s, const LogFrame& lf) {
    Tally t("axiom7", "nG dense in {x : V(x) >= v_p(n)}");
    if (!lf.error.empty()) {
        t.beyond(lf.error);
        return t.finish();
    }
    for (unsigned long n = 1; n <= o.depth; ++n) {
        const mpz_class nz(n);
        const unsigned long e = vp_int(nz, cfg.p);
        const mpz_class u = nz / ipow(cfg.p, e);
        for (unsigned long k = 0; k < o.samples && !t.failed(); ++k) {
            GroupElement x = s.g();
            if (capped_V(cfg, x, static_cast<std::int64_t>(e)).value < static_cast<std::int64_t>(e))
                x = ipow(cfg.p, e) * x;
            for (unsigned long gamma = e; gamma <= o.depth; ++gamma) {
                const mpz_class Pg = ipow(cfg.p, gamma - e);
                const mpz_class c = lf.of(x);
                if (mod(c, ipow(cfg.p, e)) != 0) {
                    t.fail({{x}, "V(x) >= v_p(n) but x has no n-divisible log coordinate, n = " + std::to_string(n)});
                    break;
                }
                const mpz_class target = Pg == 1 ? mpz_class(0) : mod(c / ipow(cfg.p, e) * inv_mod(u, Pg), Pg);
                const Vec2 z = short_solutions(lf.b, target, Pg).front();
                const GroupElement zg{z.x, z.y};
                if (!within(zg, o.bound)) {
                    t.beyond(beyond_msg("nG-witness", gamma, o.bound));
                    continue;
                }
                const GroupElement y = nz * zg;
                if (capped_V(cfg, x - y, static_cast<std::int64_t>(gamma)).saturated) t.ok();
                else t.fail({{x, y}, "V(x - y) < " + std::to_string(gamma) + " for the constructed y in nG"});
            }
        }
    }
    return t.finish();
}

// (e) axiom 8: nH is dense and codense in nG.
inline AxiomResult check_pair_density(const Config& cfg, const AuditOptions& o, Sampler s, const LogFrame& lf) {
    Tally t("axiom8", "nH dense, codense in nG");
    if (!lf.error.empty()) {
        t.beyond(lf.error);
        return t.finish();
    }
    for (unsigned long n = 1; n <= o.depth; ++n) {
        const mpz_class nz(n);
        const unsigned long e = vp_int(nz, cfg.p);
        for (unsigned long k = 0; k < o.samples && !t.failed(); ++k) {
            const GroupElement w = s.g();
            const GroupElement target = nz * w;
            for (unsigned long gamma = 0; gamma <= o.depth; ++gamma) {
                const mpz_class Pg = ipow(cfg.p, gamma > e ? gamma - e : 0);
                const mpz_class c = lf.of(w);
                const GroupElement zh{centered(c, Pg), 0L};
                if (!within(zh, o.bound)) {
                    t.beyond(beyond_msg("nH-witness", gamma, o.bound));
                } else {
                    const GroupElement y = nz * zh;
                    if (capped_V(cfg, target - y, static_cast<std::int64_t>(gamma)).saturated) t.ok();
                    else t.fail({{target, y}, "V(t - y) < " + std::to_string(gamma) + " for the constructed y in nH"});
                }
                std::optional<GroupElement> zc;
                for (const Vec2& z : short_solutions(lf.b, c, Pg))
                    if (z.y != 0) {
                        zc = GroupElement(z.x, z.y);
                        break;
                    }
                if (!zc || !within(*zc, o.bound)) {
                    t.beyond(beyond_msg("nG \\ nH witness", gamma, o.bound));
                    continue;
                }
                const GroupElement y = nz * *zc;
                if (!y.in_H() && capped_V(cfg, target - y, static_cast<std::int64_t>(gamma)).saturated) t.ok();
                else t.fail({{target, y}, "constructed y in nG \\ nH misses radius " + std::to_string(gamma)});
            }
        }
    }
    return t.finish();
}

// (g) α^Z ∩ β^Z = {1}.
inline AxiomResult check_intersection(const Config& cfg, const AuditOptions& o, Sampler s) {
    Tally t("intersection", "G_K and H_K meet only in 1");
    if (auto w = dependence_witness(cfg.alpha, cfg.beta))
        t.fail({{GroupElement(w->m, 0L), GroupElement(0L, w->n)}, "alpha^m = beta^n"});
    else
        t.ok();
    Sampler small{std::mt19937_64(s.rng()), std::min<long>(s.range, 30)};
    for (unsigned long k = 0; k < o.samples; ++k) {
        const GroupElement a{small.uniform(-small.range, small.range), 0L}, b{0L, small.uniform(1, small.range)};
        if (realize(cfg, a) != realize(cfg, b)) t.ok();
        else t.fail({{a, b}, "alpha^m = beta^n"});
    }
    return t.finish();
}

// (h) orders of α and β in (1 + p^k Z_p)/(1 + p^N Z_p).
inline AxiomResult check_orders(const Config& cfg, const AuditOptions& o) {
    Tally t("density_K", "order of alpha and beta mod p^N is p^(N-k) for k < N <= depth");
    for (unsigned long N = cfg.k + 1; N <= o.depth; ++N) {
        const mpz_class PN = ipow(cfg.p, N);
        for (const GroupElement& g : {GroupElement::alpha(), GroupElement::beta()}) {
            const mpz_class& base = g.in_H() ? cfg.alpha : cfg.beta;
            const bool full = pow_mod(base, ipow(cfg.p, N - cfg.k), PN) == 1;
            const bool proper = pow_mod(base, ipow(cfg.p, N - cfg.k - 1), PN) != 1;
            if (full && proper) t.ok();
            else t.fail({{g}, "order modulo p^" + std::to_string(N) + " is not p^" + std::to_string(N - cfg.k)});
        }
    }
    return t.finish();
}

} // namespace detail

/// Audit of axioms 1-8, G ∩ H = {1} and the density orders at the given depth and bound.
/// Smallest-norm y in nG with V(x - y) >= radius, given V(x) >= v_p(n); nullopt when
/// the factor z in y = n·z would leave |z| <= bound.
inline std::optional<GroupElement> density_witness(const Config& cfg, const GroupElement& x, unsigned long n,
                                                   unsigned long radius, const mpz_class& bound) {
    using namespace detail;
    if (n < 1) throw DomainError("density needs n >= 1");
    const mpz_class nz(n);
    const unsigned long e = vp_int(nz, cfg.p);
    if (capped_V(cfg, x, static_cast<std::int64_t>(e)).value < static_cast<std::int64_t>(e))
        throw DomainError("target " + x.str() + " has V < v_p(n) = " + std::to_string(e) + ", outside the ball nG is dense in");
    const unsigned long gamma = std::max(radius, e);
    const LogFrame lf = log_frame(cfg, gamma);
    if (!lf.error.empty()) throw DomainError(lf.error);
    const mpz_class Pg = ipow(cfg.p, gamma - e);
    const mpz_class c = lf.of(x);
    const mpz_class u = nz / ipow(cfg.p, e);
    const mpz_class target = Pg == 1 ? mpz_class(0) : mod(c / ipow(cfg.p, e) * inv_mod(u, Pg), Pg);
    const Vec2 z = short_solutions(lf.b, target, Pg).front();
    const GroupElement zg{z.x, z.y};
    if (!within(zg, bound)) return std::nullopt;
    const GroupElement y = nz * zg;
    if (!capped_V(cfg, x - y, static_cast<std::int64_t>(gamma)).saturated)
        throw Error("density witness failed re-verification");
    return y;
}

inline AuditReport audit(const Config& cfg, const AuditOptions& opts) {
    if (opts.depth < 1) throw DomainError("audit depth must be at least 1");
    if (opts.bound < 1) throw DomainError("audit bound must be at least 1");
    using namespace detail;
    const auto start = std::chrono::steady_clock::now();
    auto sampler = [&](std::uint64_t salt) {
        return Sampler{std::mt19937_64(opts.seed * 1000003ULL + salt), opts.sample_range};
    };
    const LogFrame lf = log_frame(cfg, opts.depth);
    AuditReport rep;
    rep.config = cfg;
    rep.options = opts;
    rep.axioms.push_back(check_quotients(cfg, opts, sampler(1), false));
    rep.axioms.push_back(check_quotients(cfg, opts, sampler(2), true));
    rep.axioms.push_back(check_value_set(cfg, opts, sampler(3)));
    rep.axioms.push_back(check_valuation_laws(cfg, opts, sampler(4)));
    rep.axioms.push_back(check_constants(cfg, opts));
    rep.axioms.push_back(check_residue_units(cfg, opts, sampler(6)));
    rep.axioms.push_back(check_regular_density(cfg, opts, sampler(7), lf));
    rep.axioms.push_back(check_pair_density(cfg, opts, sampler(8), lf));
    rep.axioms.push_back(check_intersection(cfg, opts, sampler(9)));
    rep.axioms.push_back(check_orders(cfg, opts));
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

} // namespace pvg
