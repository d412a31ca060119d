#pragma once

/**
 * @file suites.hpp
 * @brief Verification suites over every module, each producing a
 *        VerificationReport. Grid ranges default to the documented values
 *        and can be overridden by name.
 */

#include "primepoly/bigint.hpp"
#include "primepoly/expr_dag.hpp"
#include "primepoly/kpoly.hpp"
#include "primepoly/pell.hpp"
#include "primepoly/polynomial.hpp"
#include "primepoly/primecompile/poly10.hpp"
#include "primepoly/primecompile/poly26.hpp"
#include "primepoly/primecompile/relation.hpp"
#include "primepoly/primecompile/total.hpp"
#include "primepoly/primecompile/wilson.hpp"
#include "primepoly/signprod.hpp"
#include "primepoly/verify/report.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace primepoly::verify {

using kpoly::IntRange;

inline constexpr std::uint64_t default_seed = 20231129;

struct SuiteOptions {
    std::uint64_t seed = default_seed;
    unsigned jobs = 1;
    std::map<std::string, IntRange> ranges;
    std::string z_choice = std::string(compile::default_z_choice);

    IntRange range(const std::string& name, IntRange fallback) const {
        auto it = ranges.find(name);
        return it == ranges.end() ? fallback : it->second;
    }
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"pell", "j", "k1", "k", "poly26", "poly10", "wilson", "all"};
    return names;
}

/// Range names each suite understands.
inline std::set<std::string> known_ranges(const std::string& suite) {
    static const std::map<std::string, std::set<std::string>> table{
        {"pell", {"a", "n"}},
        {"j", {"n", "A"}},
        {"k1", {"x1", "x2", "x3"}},
        {"k", {"x1", "x2", "x3", "p", "r", "v"}},
        {"poly26", {"k", "box"}},
        {"poly10", {}},
        {"wilson", {"k"}},
    };
    if (suite == "all") {
        std::set<std::string> all;
        for (const auto& [_, names] : table) all.insert(names.begin(), names.end());
        return all;
    }
    auto it = table.find(suite);
    if (it == table.end()) throw std::invalid_argument("unknown suite '" + suite + "'");
    return it->second;
}

/// Parses "name=lo..hi".
inline std::pair<std::string, IntRange> parse_range(const std::string& text) {
    const auto eq = text.find('=');
    const auto dots = text.find("..", eq == std::string::npos ? 0 : eq);
    if (eq == std::string::npos || eq == 0 || dots == std::string::npos)
        throw std::invalid_argument("range must look like name=lo..hi, got '" + text + "'");
    const Integer lo = parse_integer(text.substr(eq + 1, dots - eq - 1));
    const Integer hi = parse_integer(text.substr(dots + 2));
    if (!lo.fits_slong_p() || !hi.fits_slong_p() || lo > hi)
        throw std::invalid_argument("range bounds out of order or too large in '" + text + "'");
    return {text.substr(0, eq), IntRange{lo.get_si(), hi.get_si()}};
}

namespace detail {

inline ordered_json range_json(IntRange r) { return ordered_json::array({r.lo, r.hi}); }

inline ordered_json grid_params(std::initializer_list<std::pair<const char*, IntRange>> rs) {
    ordered_json p = ordered_json::object();
    for (const auto& [name, r] : rs) p[name] = range_json(r);
    return p;
}

inline bool trial_division_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline void add_grid(VerificationReport& rep, const std::string& name, ordered_json params,
                     const kpoly::GridOutcome& g) {
    params["cells"] = g.cells;
    params["rhs_true"] = g.rhs_true;
    rep.add(name, std::move(params), g.mismatches == 0 && g.cells > 0,
            std::to_string(g.cells) + " cells, " + std::to_string(g.mismatches) + " mismatches", g.counterexample);
}

}  // namespace detail

// ----------------------------------------------------------------- pell ---

inline VerificationReport suite_pell(const SuiteOptions& opt) {
    VerificationReport rep;
    rep.suite = "pell";

    {
        const IntRange ar = opt.range("a", {2, 6}), nr = opt.range("n", {0, 30});
        std::uint64_t fails = 0;
        std::optional<ordered_json> cex;
        for (long a = std::max(2L, ar.lo); a <= ar.hi; ++a) {
            pell::LucasTable t{Integer(a)};
            for (long n = std::max(0L, nr.lo); n <= nr.hi; ++n) {
                const Integer& x = t.chi(n);
                const Integer& y = t.psi(n);
                if (x * x - (Integer(a) * a - 1) * y * y != 1) {
                    ++fails;
                    if (!cex) cex = ordered_json{{"a", a}, {"n", n}};
                }
            }
        }
        rep.add("pell_identity", detail::grid_params({{"a", ar}, {"n", nr}}), fails == 0,
                std::to_string(fails) + " failures", cex);
    }

    {
        std::uint64_t fails = 0, literal_fails = 0;
        std::optional<ordered_json> cex;
        for (long a = 2; a <= 5; ++a)
            for (unsigned n = 0; n <= 25; ++n) {
                if (pell::alpha_seq(Integer(2 * a), n) != pell::psi(Integer(a), n)) {
                    ++fails;
                    if (!cex) cex = ordered_json{{"a", a}, {"n", n}};
                }
                if (pell::alpha_seq(Integer(2 * a), n) != pell::psi(Integer(2 * a), n)) ++literal_fails;
            }
        rep.add("alpha_psi_correspondence", {{"a", {2, 5}}, {"n", {0, 25}}}, fails == 0,
                "alpha_{2a}(n) = psi_a(n); " + std::to_string(fails) + " failures", cex);
        if (literal_fails > 0)
            rep.notes.push_back("alternative reading alpha_b(n) = psi_{2a}(n) with b = 2a fails at " +
                                std::to_string(literal_fails) + " of 104 points; alpha_{2a}(n) = psi_a(n) holds");
    }

    {
        std::uint64_t fails = 0, cells = 0;
        std::optional<ordered_json> cex;
        for (long a = 2; a <= 4; ++a) {
            pell::LucasTable t{Integer(a)};
            for (std::uint64_t k = 1; k <= 20; ++k)
                for (std::uint64_t m = 1; m <= 20; ++m) {
                    ++cells;
                    const auto d = pell::psi_divides_equiv(t, k, m);
                    if (d.lhs != d.rhs) {
                        ++fails;
                        if (!cex) cex = ordered_json{{"a", a}, {"k", k}, {"m", m}};
                    }
                }
        }
        rep.add("psi_divisibility_equivalence", {{"a", {2, 4}}, {"k", {1, 20}}, {"m", {1, 20}}, {"cells", cells}},
                fails == 0 && cells == 1200, std::to_string(cells) + " cells, " + std::to_string(fails) + " mismatches",
                cex);
    }

    {
        const auto w = pell::pell_witness_scan(2, 1, 0, 64, 64);
        bool ok = w && w->first == 6 && w->second == 0;
        std::string detail = w ? "(i, j) = (" + std::to_string(w->first) + ", " + std::to_string(w->second) + ")"
                               : "no witness within caps";
        if (ok) {
            const Integer C = pell::psi(2, 1);
            const auto x = pell::pell_aux(2, 1, C, 0, 6, 0);
            const auto parts = pell::pell_condition_parts(x);
            ok = parts.all() && pell::pell_conditions(2, 1, C, 0, 6, 0) && x.D * x.F * x.I == (194 * x.G) * (194 * x.G);
            const auto sos = pell::pell_sos_witness(x);
            ok = ok && sos && sgn(pell::pell_sos_eval(x, *sos)) == 0;
        }
        rep.add("pell_witness_instance", {{"A", 2}, {"B", 1}, {"e", 0}, {"caps", {64, 64}}}, ok, detail);
    }

    {
        std::uint64_t cells = 0, true_sets = 0, fails = 0;
        std::optional<ordered_json> cex;
        for (long A = 2; A <= 3; ++A) {
            pell::LucasTable t{Integer(A)};
            const Integer cmax = t.psi(5);
            for (long B = 1; B <= 4; ++B)
                for (long e = 0; e <= 1; ++e)
                    for (Integer C = 0; C <= cmax; ++C)
                        for (long i = 0; i <= 8; ++i)
                            for (long j = 0; j <= 8; ++j) {
                                ++cells;
                                if (!pell::pell_conditions(A, B, C, e, i, j)) continue;
                                ++true_sets;
                                if (C != t.psi(B)) {
                                    ++fails;
                                    if (!cex)
                                        cex = ordered_json{{"A", A}, {"B", B}, {"C", C.get_str()}, {"e", e}, {"i", i}, {"j", j}};
                                }
                            }
        }
        rep.add("pell_soundness_grid",
                {{"A", {2, 3}}, {"B", {1, 4}}, {"e", {0, 1}}, {"C", "0..psi_A(5)"}, {"i", {0, 8}}, {"j", {0, 8}},
                 {"cells", cells}, {"true_sets", true_sets}},
                fails == 0, std::to_string(true_sets) + " satisfied sets, " + std::to_string(fails) + " counterexamples",
                cex);
    }
    return rep;
}

// -------------------------------------------------------------------- j ---

inline VerificationReport suite_j(const SuiteOptions& opt) {
    VerificationReport rep;
    rep.suite = "j";
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<long> dist(-20, 20);

    const IntRange nr = opt.range("n", {2, 6});
    for (long n = std::max(2L, nr.lo); n <= std::min<long>(nr.hi, signprod::default_j_cap); ++n) {
        const auto& j = signprod::cached_J(static_cast<unsigned>(n));
        const auto props = signprod::check_j_properties(j.poly, static_cast<unsigned>(n));
        std::uint64_t fails = 0;
        std::optional<ordered_json> cex;
        for (int s = 0; s < 100; ++s) {
            std::vector<Integer> pt;
            for (long k = 0; k < n; ++k) pt.push_back(Integer(dist(rng)));
            if (j.poly.evaluate(pt) != signprod::sign_product_eval(pt)) {
                ++fails;
                if (!cex) {
                    cex = ordered_json::array();
                    for (const auto& v : pt) cex->push_back(v.get_str());
                }
            }
        }
        rep.add("J" + std::to_string(n) + "_invariants_and_sign_product",
                {{"n", n}, {"samples", 100}, {"monomials", j.poly.size()}}, props.all() && fails == 0,
                std::string(props.all() ? "invariants hold" : "invariant violated") + ", " + std::to_string(fails) +
                    " evaluation mismatches",
                cex);
    }

    {
        const IntRange ar = opt.range("A", {0, 40});
        std::uint64_t cells = 0, fails = 0;
        std::optional<ordered_json> cex;
        for (long a1 = std::max(0L, ar.lo); a1 <= ar.hi; ++a1)
            for (long a2 = std::max(0L, ar.lo); a2 <= ar.hi; ++a2) {
                ++cells;
                const std::array<Integer, 2> A{Integer(a1), Integer(a2)};
                const auto r = signprod::mr_check(A, signprod::WMode::polynomial());
                if (r.exists_X != r.all_squares) {
                    ++fails;
                    if (!cex) cex = ordered_json{{"A1", a1}, {"A2", a2}, {"root_found", r.exists_X}};
                }
            }
        rep.add("square_root_elimination_q2", {{"A1", detail::range_json(ar)}, {"A2", detail::range_json(ar)}, {"W", "1+A1^2+A2^2"}},
                fails == 0 && cells > 0, std::to_string(cells) + " cells, " + std::to_string(fails) + " mismatches", cex);
    }

    for (unsigned q = 2; q <= 3; ++q) {
        const auto actual = signprod::cached_J(q + 1).poly.size();
        const Integer claimed = signprod::claimed_monomial_count(q);
        if (claimed != actual)
            rep.notes.push_back("monomial count of J_" + std::to_string(q + 1) + " is " + std::to_string(actual) +
                                "; the formula binom(2^(q-1)+q-1, q-1) gives " + claimed.get_str() +
                                " at q = " + std::to_string(q));
    }
    return rep;
}

// ------------------------------------------------------------------- k1 ---

inline VerificationReport suite_k1(const SuiteOptions& opt) {
    VerificationReport rep;
    rep.suite = "k1";
    const IntRange x1 = opt.range("x1", {1, 199}), x2 = opt.range("x2", {1, 199}), x3 = opt.range("x3", {0, 200});
    const auto g = kpoly::k1_grid(x1, x2, x3, opt.jobs);
    detail::add_grid(rep, "k1_equivalence_grid", detail::grid_params({{"x1", x1}, {"x2", x2}, {"x3", x3}}), g);
    return rep;
}

// -------------------------------------------------------------------- k ---

inline VerificationReport suite_k(const SuiteOptions& opt) {
    VerificationReport rep;
    rep.suite = "k";
    std::mt19937_64 rng(opt.seed);
    {
        std::uniform_int_distribution<long> num(-30, 30), den(1, 9);
        auto rnd = [&] {
            Rational q(Integer(num(rng)), Integer(den(rng)));
            q.canonicalize();
            return q;
        };
        std::uint64_t fails = 0;
        std::optional<ordered_json> cex;
        for (int s = 0; s < 500; ++s) {
            const Rational y = rnd(), x1 = rnd(), x2 = rnd(), x3 = rnd(), r = rnd();
            Rational p = rnd();
            while (sgn(p) == 0) p = rnd();
            const std::array<Rational, 6> k2pt{y, x1, x2, x3, p, r};
            const std::array<Rational, 4> k1pt{Rational(y - r / p), x1, x2, x3};
            const Rational lhs = kpoly::K2().evaluate(std::span<const Rational>(k2pt));
            const Rational rhs = ipow(p, 8) * kpoly::K1().evaluate(std::span<const Rational>(k1pt));
            if (lhs != rhs) {
                ++fails;
                if (!cex) cex = ordered_json{{"y", y.get_str()}, {"x1", x1.get_str()}, {"x2", x2.get_str()},
                                            {"x3", x3.get_str()}, {"p", p.get_str()}, {"r", r.get_str()}};
            }
        }
        rep.add("k2_clearing_identity", {{"samples", 500}, {"seed", opt.seed}}, fails == 0,
                "K2 = p^8 K1(y - r/p): " + std::to_string(fails) + " failures", cex);
    }
    {
        std::map<std::size_t, Polynomial> at_zero{{kpoly::V, Polynomial::constant(8, 0)}};
        const Polynomial kv0 = substitute(kpoly::K(), at_zero, 8);
        const std::array<std::size_t, 6> idx{0, 1, 2, 3, 4, 5};
        const bool ok = kv0 == remap(kpoly::K2(), 8, idx);
        rep.add("k_at_v0_equals_k2", ordered_json::object(), ok, ok ? "identical polynomials" : "polynomials differ");
    }
    {
        kpoly::KGridRanges rg;
        rg.x1 = opt.range("x1", rg.x1);
        rg.x2 = opt.range("x2", rg.x2);
        rg.x3 = opt.range("x3", rg.x3);
        rg.p = opt.range("p", rg.p);
        rg.r = opt.range("r", rg.r);
        rg.v = opt.range("v", rg.v);
        const auto g = kpoly::k_grid(rg, opt.jobs);
        detail::add_grid(rep, "k_equivalence_grid",
                         detail::grid_params({{"x1", rg.x1}, {"x2", rg.x2}, {"x3", rg.x3}, {"p", rg.p}, {"r", rg.r}, {"v", rg.v}}),
                         g);
    }
    return rep;
}

// --------------------------------------------------------------- poly26 ---

inline VerificationReport suite_poly26(const SuiteOptions& opt) {
    VerificationReport rep;
    rep.suite = "poly26";
    const Polynomial p = compile::build_poly26();
    rep.add("arity", {{"expected", 26}}, p.arity() == 26, "arity " + std::to_string(p.arity()));
    {
        const std::vector<Integer> zero(26, 0);
        const Integer v = p.evaluate(zero);
        rep.add("value_at_zero", {{"expected", 6}}, v == 6, "value " + v.get_str());
    }
    {
        std::mt19937_64 rng(opt.seed);
        std::uniform_int_distribution<long> dist(-10, 10);
        std::uint64_t mismatches = 0, negative = 0;
        std::optional<ordered_json> cex;
        for (int s = 0; s < 1000; ++s) {
            std::vector<Integer> w;
            for (int k = 0; k < 26; ++k) w.push_back(Integer(dist(rng)));
            Integer sum = 0;
            for (const auto& c : compile::poly26_components(w)) sum += c * c;
            const Integer v = p.evaluate(w);
            if (v < 0) ++negative;
            if (v != sum) {
                ++mismatches;
                if (!cex) {
                    cex = ordered_json::array();
                    for (const auto& x : w) cex->push_back(x.get_str());
                }
            }
        }
        rep.add("sum_of_component_squares", {{"samples", 1000}, {"box", 10}, {"seed", opt.seed}},
                mismatches == 0 && negative == 0,
                std::to_string(mismatches) + " mismatches, " + std::to_string(negative) + " negative values", cex);
    }
    {
        const IntRange kr = opt.range("k", {1, 5});
        const IntRange br = opt.range("box", {1, 1});
        const unsigned box = static_cast<unsigned>(std::max(0L, br.hi));
        std::uint64_t zeros = 0;
        bool failure = false;
        std::optional<ordered_json> cex;
        for (long k = std::max(1L, kr.lo); k <= kr.hi; ++k) {
            const auto r = compile::poly26_soundness_probe(static_cast<std::uint64_t>(k), box);
            zeros += r.zeros_found;
            if (r.hard_failure) {
                failure = true;
                if (!cex) cex = ordered_json{{"k", k}, {"zero", r.zeros.front()}};
            }
        }
        rep.add("soundness_probe", {{"k", detail::range_json(kr)}, {"box", box}}, !failure,
                std::to_string(zeros) + " zeros found, none with k+1 composite", cex);
    }
    return rep;
}

// --------------------------------------------------------------- poly10 ---

inline VerificationReport suite_poly10(const SuiteOptions& opt) {
    VerificationReport rep;
    rep.suite = "poly10";
    const compile::Poly10 p = compile::build_poly10(opt.z_choice);
    rep.notes.push_back("Z choice: " + opt.z_choice);
    rep.add("variable_count", {{"expected", 10}}, p.dag.arity() == 10, "variables " + std::to_string(p.dag.arity()));

    const auto bound = dag_degree_upper_bound(p.dag);
    rep.add("degree_upper_bound", {{"threshold", 6000}}, bound > 6000, "bound " + std::to_string(bound));

    std::mt19937_64 rng(opt.seed);
    {
        std::uniform_int_distribution<long> dist(1, 30);
        std::vector<Integer> ray;
        for (int k = 0; k < 10; ++k) ray.push_back(Integer(dist(rng)));
        const Integer t1 = Integer(1) << 20;
        const Integer t2 = Integer(1) << 21;
        std::uint64_t est = 0;
        std::string detail;
        try {
            est = dag_growth_degree_estimate(p.dag, ray, t1, t2);
            detail = "estimate " + std::to_string(est);
        } catch (const std::domain_error& e) {
            detail = e.what();
        }
        ordered_json r = ordered_json::array();
        for (const auto& x : ray) r.push_back(x.get_str());
        rep.add("degree_growth_estimate", {{"threshold", 6000}, {"ray", r}, {"t", {"2^20", "2^21"}}}, est > 6000,
                detail);
    }
    {
        std::uniform_int_distribution<long> small(0, 4);
        std::uint64_t fails = 0;
        std::optional<ordered_json> cex;
        for (int s = 0; s < 50; ++s) {
            std::vector<Integer> pt;
            for (int k = 0; k < 10; ++k) pt.push_back(Integer(small(rng) + (k >= 1 && k <= 5 ? 1 : 0)));
            if (p.dag.evaluate(pt) != compile::poly10_staged_eval(pt, opt.z_choice)) {
                ++fails;
                if (!cex) {
                    cex = ordered_json::array();
                    for (const auto& x : pt) cex->push_back(x.get_str());
                }
            }
        }
        rep.add("staged_composition_consistency", {{"samples", 50}, {"seed", opt.seed}}, fails == 0,
                std::to_string(fails) + " mismatches", cex);
    }
    {
        std::uniform_int_distribution<long> small(0, 6);
        std::uint64_t fails = 0;
        for (int s = 0; s < 200; ++s) {
            compile::TotalBase b{small(rng), small(rng) + 1, small(rng) + 1, small(rng) + 1, small(rng) + 1,
                                 small(rng) + 1, small(rng), small(rng), small(rng)};
            const auto c = compile::total_conditions(b, opt.z_choice);
            if (c.inequality != (compile::v_substitution(b, opt.z_choice) >= 0)) ++fails;
        }
        rep.add("inequality_matches_v_substitution", {{"samples", 200}}, fails == 0,
                std::to_string(fails) + " mismatches");
    }
    return rep;
}

// --------------------------------------------------------------- wilson ---

inline VerificationReport suite_wilson(const SuiteOptions& opt) {
    VerificationReport rep;
    rep.suite = "wilson";
    const IntRange kr = opt.range("k", {1, 2000});
    const long lo = std::max(1L, kr.lo);
    const auto table = compile::wilson_table(static_cast<std::uint64_t>(std::max(lo, kr.hi)));
    std::uint64_t fails = 0;
    std::optional<ordered_json> cex;
    for (long k = lo; k <= kr.hi; ++k)
        if (table[k] != detail::trial_division_prime(static_cast<std::uint64_t>(k + 1))) {
            ++fails;
            if (!cex) cex = ordered_json{{"k", k}};
        }
    rep.add("wilson_vs_trial_division", {{"k", detail::range_json(kr)}}, fails == 0,
            std::to_string(fails) + " disagreements", cex);
    return rep;
}

inline VerificationReport run_suite(const std::string& name, const SuiteOptions& opt) {
    if (name == "pell") return suite_pell(opt);
    if (name == "j") return suite_j(opt);
    if (name == "k1") return suite_k1(opt);
    if (name == "k") return suite_k(opt);
    if (name == "poly26") return suite_poly26(opt);
    if (name == "poly10") return suite_poly10(opt);
    if (name == "wilson") return suite_wilson(opt);
    if (name == "all") {
        VerificationReport all;
        all.suite = "all";
        for (const auto& s : suite_names())
            if (s != "all") {
                VerificationReport part = run_suite(s, opt);
                for (auto& c : part.checks) c.name = s + "/" + c.name;
                all.merge(part);
            }
        return all;
    }
    throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace primepoly::verify
