#pragma once

// Command-line front end: option parsing, dispatch, text and JSON rendering.
// Exit codes: 0 decided or completed, 1 usage or configuration error,
// 2 indeterminate (precision or bound exhausted).

#include <gmpxx.h>

#include <CLI11.hpp>
#include <chrono>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pvg/auditor.hpp"
#include "pvg/errors.hpp"
#include "pvg/formula.hpp"
#include "pvg/interpret.hpp"
#include "pvg/mann.hpp"
#include "pvg/padic.hpp"
#include "pvg/qe.hpp"

namespace pvg {

namespace cli {

using json = nlohmann::ordered_json;

/// Raised for an answer that exists in theory but was not reached within a knob.
class Exhausted : public Error {
public:
    using Error::Error;
};

struct Globals {
    unsigned long p = 5;
    std::string alpha = "6";
    std::string beta = "11";
    unsigned long precision = 4096;
    std::optional<std::string> bound;
    std::uint64_t seed = 1;
    bool json = false;
    bool no_timing = false;
};

inline mpz_class parse_int(const std::string& s, const std::string& what) {
    mpz_class z;
    if (s.empty() || z.set_str(s, 10) != 0) throw ConfigError(what + " must be an integer, got '" + s + "'");
    return z;
}

inline mpq_class parse_rational(const std::string& s, const std::string& what) {
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0)
        throw ConfigError(what + " must be a rational a or a/b, got '" + s + "'");
    q.canonicalize();
    return q;
}

inline GroupElement parse_element(const std::string& s, const std::string& what) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw ConfigError(what + " must be an exponent pair m,n, got '" + s + "'");
    return {parse_int(s.substr(0, comma), what), parse_int(s.substr(comma + 1), what)};
}

inline mpz_class bound_or(const Globals& g, long fallback) {
    if (!g.bound) return fallback;
    const mpz_class b = parse_int(*g.bound, "--bound");
    if (b < 0) throw ConfigError("--bound must be non-negative");
    return b;
}

inline long to_long_checked(const mpz_class& z, const std::string& what) {
    if (!z.fits_slong_p()) throw ConfigError(what + " is too large");
    return z.get_si();
}

inline Config dense_config(const Globals& g) {
    return Config::make(g.p, parse_int(g.alpha, "--alpha"), parse_int(g.beta, "--beta"), g.precision);
}

inline json num(const mpz_class& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

inline json pair(const GroupElement& g) { return json::array({num(g.m), num(g.n)}); }

inline json config_json(const Config& c) {
    return {{"p", c.p}, {"alpha", c.alpha.get_str()}, {"beta", c.beta.get_str()}, {"k", c.k}};
}

class Clock {
public:
    Clock() : start_(std::chrono::steady_clock::now()) {}
    double ms() const { return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count(); }

private:
    std::chrono::steady_clock::time_point start_;
};

inline void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------
// Subcommands

inline int cmd_decide(const Globals& g, const std::string& text, std::ostream& out) {
    const Config cfg = dense_config(g);
    const Clock clock;
    const bool r = decide(parse(text), cfg);
    if (g.json) {
        json j{{"command", "decide"}, {"config", config_json(cfg)}, {"formula", text}, {"result", r}, {"method", "theory"}};
        if (!g.no_timing) j["elapsed_ms"] = clock.ms();
        emit(out, j);
    } else {
        out << (r ? "true" : "false") << "\n";
    }
    return 0;
}

inline int cmd_check_sat(const Globals& g, const std::string& text, std::ostream& out) {
    const Config cfg = dense_config(g);
    const mpz_class bound = bound_or(g, static_cast<long>(cfg.default_bound));
    const Clock clock;
    const F phi = parse(text);
    check_user_fragment(phi);
    const auto vars = free_vars(phi);
    F closed = phi;
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) closed = mk_exists(*it, Sort::G, closed);
    const bool sat = decide(closed, cfg);
    std::optional<GroupElement> w;
    if (sat && vars.size() == 1) w = witness_search(phi, *vars.begin(), {}, cfg, to_long_checked(bound, "--bound"));
    if (g.json) {
        json j{{"command", "check-sat"}, {"config", config_json(cfg)}, {"formula", text}, {"result", sat ? "sat" : "unsat"},
               {"method", w ? "witness" : "theory"}};
        if (w) j["witness"] = json{{*vars.begin(), pair(*w)}};
        if (sat && vars.size() == 1) j["witness_bound"] = num(bound);
        if (!g.no_timing) j["elapsed_ms"] = clock.ms();
        emit(out, j);
        return 0;
    }
    if (!sat) out << "unsat\n";
    else if (w) out << "sat (witness found: " << *vars.begin() << " = " << w->str() << ")\n";
    else if (vars.size() == 1) out << "sat (no witness within bound " << bound.get_str() << ")\n";
    else out << "sat (witness search needs exactly one free variable, found " << vars.size() << ")\n";
    return 0;
}

inline int cmd_eval(const Globals& g, const std::string& text, const std::vector<std::string>& assigns,
                    std::ostream& out) {
    const Config cfg = dense_config(g);
    const Clock clock;
    F phi = parse(text);
    check_user_fragment(phi);
    json env = json::object();
    for (const auto& a : assigns) {
        const auto eq = a.find('=');
        if (eq == std::string::npos || eq == 0) throw ConfigError("--env expects name=m,n, got '" + a + "'");
        const std::string name = a.substr(0, eq);
        const GroupElement v = parse_element(a.substr(eq + 1), "--env " + name);
        if (!free_vars(phi).count(name)) throw ConfigError("'" + name + "' is not a free variable of the formula");
        phi = substitute(phi, name, LinearTerm(v));
        env[name] = pair(v);
    }
    const bool r = decide(phi, cfg);
    if (g.json) {
        json j{{"command", "eval"}, {"config", config_json(cfg)}, {"formula", text}, {"env", env}, {"result", r}, {"method", "theory"}};
        if (!g.no_timing) j["elapsed_ms"] = clock.ms();
        emit(out, j);
    } else {
        out << (r ? "true" : "false") << "\n";
    }
    return 0;
}

inline int cmd_audit(const Globals& g, unsigned long depth, unsigned long samples, std::ostream& out,
                     std::ostream& err) {
    const Config cfg = dense_config(g);
    AuditOptions o;
    o.depth = depth;
    o.samples = samples;
    o.seed = g.seed;
    o.bound = bound_or(g, 10000);
    const AuditReport rep = audit(cfg, o);
    const std::size_t fails = rep.count(AuditStatus::fail), inc = rep.count(AuditStatus::inconclusive);
    if (g.json) {
        json axioms = json::object();
        for (const auto& a : rep.axioms) {
            json e{{"status", status_str(a.status)}, {"statement", a.statement}, {"instances", a.instances},
                   {"detail", a.detail}};
            if (a.counterexample) {
                json els = json::array();
                for (const auto& x : a.counterexample->elements) els.push_back(pair(x));
                e["counterexample"] = {{"elements", els}, {"claim", a.counterexample->claim}};
            }
            axioms[a.id] = e;
        }
        json j{{"command", "audit"},
               {"config", config_json(cfg)},
               {"seed", g.seed},
               {"depth", depth},
               {"bound", num(o.bound)},
               {"samples", samples},
               {"axioms", axioms},
               {"summary",
                {{"pass", rep.count(AuditStatus::pass)}, {"fail", fails}, {"inconclusive", inc},
                 {"vacuous", rep.count(AuditStatus::vacuous)}}}};
        if (!g.no_timing) j["elapsed_ms"] = rep.wall_ms;
        emit(out, j);
    } else {
        out << "audit p=" << cfg.p << " alpha=" << cfg.alpha << " beta=" << cfg.beta << " k=" << cfg.k
            << " depth=" << depth << " bound=" << o.bound << " samples=" << samples << " seed=" << g.seed << "\n";
        for (const auto& a : rep.axioms) {
            out << "  " << a.id << std::string(a.id.size() < 14 ? 14 - a.id.size() : 1, ' ') << status_str(a.status)
                << std::string(14 - std::string(status_str(a.status)).size(), ' ') << a.statement << " (" << a.detail
                << ")\n";
            if (a.counterexample) {
                out << "    counterexample:";
                for (const auto& x : a.counterexample->elements) out << " " << x.str();
                out << "\n";
            }
        }
        out << "summary: " << rep.count(AuditStatus::pass) << " pass, " << fails << " fail, " << inc
            << " inconclusive, " << rep.count(AuditStatus::vacuous) << " vacuous\n";
        if (!g.no_timing) out << "wall time: " << static_cast<long>(rep.wall_ms) << " ms\n";
    }
    if (fails) {
        err << "error: the configuration violates an axiom; see the counterexample\n";
        return 1;
    }
    if (inc) {
        err << "indeterminate: some density searches ran past the bound; raise --bound\n";
        return 2;
    }
    return 0;
}

inline int cmd_mann(const Globals& g, const std::vector<std::string>& coeff_text,
                    const std::vector<std::string>& gen_text, std::ostream& out) {
    std::vector<mpq_class> coeffs;
    for (const auto& c : coeff_text) coeffs.push_back(parse_rational(c, "--coeffs"));
    std::vector<mpz_class> gens;
    for (const auto& s : gen_text) gens.push_back(parse_int(s, "--generators"));
    const mpz_class b = bound_or(g, 10);
    if (!b.fits_ulong_p()) throw ConfigError("--bound is too large");
    const Clock clock;
    const MannInstance inst = mann_enumerate(coeffs, gens, b.get_ui());
    const MannAxiom ax = mann_axiom(inst);
    if (g.json) {
        json cs = json::array(), gs = json::array(), sols = json::array(), vals = json::array();
        for (const auto& c : coeffs) cs.push_back(c.get_str());
        for (const auto& x : gens) gs.push_back(num(x));
        for (const auto& s : inst.solutions) {
            sols.push_back(s.exponents);
            json v = json::array();
            for (const auto& x : s.values) v.push_back(x.get_str());
            vals.push_back(v);
        }
        json j{{"command", "mann"}, {"coeffs", cs},     {"generators", gs},        {"bound", num(b)},
               {"solutions", sols}, {"values", vals},   {"axiom_text", ax.text}, {"bound_relative", ax.bound_relative},
               {"caveat", ax.caveat}};
        if (!g.no_timing) j["elapsed_ms"] = clock.ms();
        emit(out, j);
        return 0;
    }
    out << inst.solutions.size() << " solution" << (inst.solutions.size() == 1 ? "" : "s") << " with exponents in [-"
        << b << ", " << b << "]\n";
    for (const auto& s : inst.solutions) {
        out << "  (";
        for (std::size_t i = 0; i < s.values.size(); ++i) out << (i ? ", " : "") << s.values[i];
        out << ")  exponents";
        for (const auto& e : s.exponents) {
            out << " (";
            for (std::size_t i = 0; i < e.size(); ++i) out << (i ? "," : "") << e[i];
            out << ")";
        }
        out << "\n";
    }
    out << "axiom: " << ax.text << "\n";
    out << "caveat: " << ax.caveat << "\n";
    return 0;
}

inline int cmd_interp(const Globals& g, const std::string& op, const std::string& arg, std::ostream& out) {
    const DiscreteConfig c = DiscreteConfig::make(g.p, parse_int(g.alpha, "--alpha"), parse_int(g.beta, "--beta"));
    json j{{"command", "interp"},
           {"op", op},
           {"input", arg},
           {"config",
            {{"p", c.p},
             {"alpha", c.alpha.get_str()},
             {"beta", c.beta.get_str()},
             {"powers", {c.ea, c.eb}},
             {"gamma", c.gamma.get_str()},
             {"v_alpha", c.v_alpha}}}};
    std::ostringstream text;
    if (op == "tau" || op == "sigma") {
        const long n = to_long_checked(parse_int(arg, op + " argument"), op + " argument");
        const mpq_class v = op == "tau" ? tau(c, n) : sigma(c, n);
        j["result"] = v.get_str();
        text << op << "(" << n << ") = " << v << "\n";
    } else if (op == "vpmap") {
        const VpMap r = vp_selfmap(c, parse_int(arg, "vpmap argument"));
        j["result"] = {{"value", r.value}, {"m", r.m}, {"k", r.k}};
        text << "v_p(" << arg << ") = " << r.value << " = " << r.m << " * v_p(alpha) + " << r.k << "\n";
    } else if (op == "ppow") {
        const mpz_class n = parse_int(arg, "ppow argument");
        if (n < 0 || !n.fits_ulong_p()) throw DomainError("ppow needs a natural exponent");
        const mpz_class v = p_pow(c.p, n.get_ui());
        j["result"] = v.get_str();
        text << "p^" << n << " = " << v << "\n";
    } else if (op == "compile") {
        const AF f = parse_arith(arg);
        const std::string compiled = compile_atomic(f);
        j["result"] = compiled;
        text << compiled << "\n";
        try {
            const DualResult r = dual_eval(f, c);
            j["direct"] = r.direct;
            j["compiled"] = r.compiled;
            text << "direct: " << (r.direct ? "true" : "false") << ", compiled: " << (r.compiled ? "true" : "false")
                 << "\n";
            if (!r.agree()) throw Error("compiled evaluation disagrees with direct evaluation");
        } catch (const UnsupportedFragment&) {
            text << "not evaluated: unbounded quantifier\n";
        }
    } else {
        throw ConfigError("unknown interp operation '" + op + "'; expected tau, sigma, vpmap, ppow or compile");
    }
    if (g.json) emit(out, j);
    else out << text.str();
    return 0;
}

inline int cmd_density(const Globals& g, const std::string& target, unsigned long n, unsigned long radius,
                       std::ostream& out) {
    const Config cfg = dense_config(g);
    const GroupElement x = parse_element(target, "--target");
    const mpz_class bound = bound_or(g, 10000);
    const auto y = density_witness(cfg, x, n, radius, bound);
    if (!y)
        throw Exhausted("no witness y = " + std::to_string(n) + "z with |z| <= " + bound.get_str() + " at radius " +
                        std::to_string(radius) + "; raise --bound");
    if (g.json) {
        emit(out, json{{"command", "density"},
                       {"config", config_json(cfg)},
                       {"target", pair(x)},
                       {"n", n},
                       {"radius", radius},
                       {"bound", num(bound)},
                       {"witness", pair(*y)}});
    } else {
        out << "y = " << y->str() << " in " << n << "G with V(x - y) >= " << radius << "\n";
    }
    return 0;
}

} // namespace cli

/// Runs one invocation; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace cli;
    Globals g;
    CLI::App app{"Decision procedure, axiom auditor and tools for pairs of p-valued groups", "pvg"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--p", g.p, "prime p")->envname("PGL_P");
    app.add_option("--alpha", g.alpha, "generator alpha")->envname("PGL_ALPHA");
    app.add_option("--beta", g.beta, "generator beta")->envname("PGL_BETA");
    app.add_option("--precision", g.precision, "p-adic precision ceiling")->envname("PGL_PRECISION");
    app.add_option("--bound", g.bound, "search bound")->envname("PGL_BOUND");
    app.add_option("--seed", g.seed, "sampling seed")->envname("PGL_SEED");
    app.add_flag("--json", g.json, "emit JSON");
    app.add_flag("--no-timing", g.no_timing, "omit wall-time fields");

    std::string formula;
    auto* dec = app.add_subcommand("decide", "decide a sentence");
    dec->add_option("formula", formula)->required();
    auto* sat = app.add_subcommand("check-sat", "satisfiability of a formula, free variables existential");
    sat->add_option("formula", formula)->required();
    std::vector<std::string> assigns;
    auto* ev = app.add_subcommand("eval", "evaluate a formula at an assignment");
    ev->add_option("formula", formula)->required();
    ev->add_option("--env", assigns, "name=m,n");
    unsigned long depth = 6, samples = 64;
    auto* aud = app.add_subcommand("audit", "finite-scale axiom audit");
    aud->add_option("--depth", depth);
    aud->add_option("--samples", samples);
    std::vector<std::string> coeffs, gens;
    auto* mann = app.add_subcommand("mann", "bounded Mann equation solutions");
    mann->add_option("--coeffs", coeffs)->required()->delimiter(',')->allow_extra_args(false);
    mann->add_option("--generators", gens)->required()->delimiter(',')->allow_extra_args(false);
    std::string op, arg;
    auto* interp = app.add_subcommand("interp", "discrete-case definable maps");
    interp->add_option("op", op)->required();
    interp->add_option("arg", arg)->required();
    std::string target;
    unsigned long dn = 1, radius = 0;
    auto* dens = app.add_subcommand("density", "witness y in nG near a target");
    dens->add_option("--target", target, "m,n")->required();
    dens->add_option("--n", dn);
    dens->add_option("--radius", radius)->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "error: " << e.what() << "\nrun with --help for usage\n";
        return 1;
    }

    try {
        if (dec->parsed()) return cmd_decide(g, formula, out);
        if (sat->parsed()) return cmd_check_sat(g, formula, out);
        if (ev->parsed()) return cmd_eval(g, formula, assigns, out);
        if (aud->parsed()) return cmd_audit(g, depth, samples, out, err);
        if (mann->parsed()) return cmd_mann(g, coeffs, gens, out);
        if (interp->parsed()) return cmd_interp(g, op, arg, out);
        if (dens->parsed()) return cmd_density(g, target, dn, radius, out);
    } catch (const IndeterminateError& e) {
        err << "indeterminate: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        err << "indeterminate: " << e.what() << "\n";
        return 2;
    } catch (const Exhausted& e) {
        err << "indeterminate: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace pvg
