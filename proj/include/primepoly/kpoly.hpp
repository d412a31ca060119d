#pragma once

/**
 * @file kpoly.hpp
 * @brief The K1 -> K2 -> K chain folding three squareness conditions, a
 *        divisibility and a sign condition into one polynomial.
 *
 *  K1(y, x1, x2, x3)              = J4(-y, sqrt x1, sqrt(4 x2), sqrt(16 x3))
 *  K2(y, x1, x2, x3, p, r)        = p^8 K1(y - r/p, x1, x2, x3)
 *  K (y, x1, x2, x3, p, r, n, v)  = K2(y - n v, x1, x2, x3, p, r)
 *
 * K2 is obtained by collecting K1(y - z) by powers of z and replacing
 * z^a by r^a p^(8-a).
 *
 * For x1, x2 odd, p > 0 and n > sqrt x1 + 2 sqrt x2 + 4 sqrt x3 + r,
 * K has a natural root in y iff x1, x2, x3 are squares, p | r and v >= 0.
 */

#include "primepoly/bigint.hpp"
#include "primepoly/parallel.hpp"
#include "primepoly/polynomial.hpp"
#include "primepoly/root_scan.hpp"
#include "primepoly/signprod.hpp"
#include "primepoly/staged_eval.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace primepoly::kpoly {

// Slot indices.
inline constexpr std::size_t Y = 0, X1 = 1, X2 = 2, X3 = 3, P = 4, R = 5, N = 6, V = 7;

inline const std::vector<std::string>& k1_names() {
    static const std::vector<std::string> n{"y", "x1", "x2", "x3"};
    return n;
}
inline const std::vector<std::string>& k2_names() {
    static const std::vector<std::string> n{"y", "x1", "x2", "x3", "p", "r"};
    return n;
}
inline const std::vector<std::string>& k_names() {
    static const std::vector<std::string> n{"y", "x1", "x2", "x3", "p", "r", "n", "v"};
    return n;
}

inline constexpr std::uint32_t k1_y_degree = 8;

inline Polynomial build_K1() {
    const auto& j4 = signprod::cached_J(4);
    const auto v = variables(4);
    const std::array<Polynomial, 4> squares{v[Y] * v[Y], v[X1], 4L * v[X2], 16L * v[X3]};
    return signprod::compose_on_squares(j4, squares);
}

inline Polynomial build_K2(const Polynomial& k1) {
    // K1 with an extra slot z (index 4), then y -> y - z.
    const std::array<std::size_t, 4> embed{Y, X1, X2, X3};
    const Polynomial k1z = remap(k1, 5, embed);
    const auto v5 = variables(5);
    const Polynomial shifted = substitute(k1z, {{Y, v5[Y] - v5[4]}});
    const auto by_z = collect_in(shifted, 4);
    if (by_z.size() > k1_y_degree + 1) throw std::logic_error("K1(y - z) has z-degree above 8");

    const std::array<std::size_t, 5> lift{Y, X1, X2, X3, P};
    const auto v6 = variables(6);
    Polynomial k2(6);
    for (std::uint32_t a = 0; a < by_z.size(); ++a) {
        if (by_z[a].is_zero()) continue;
        const Polynomial coeff = remap(by_z[a], 6, lift);
        k2 += coeff * pow(v6[R], a) * pow(v6[P], k1_y_degree - a);
    }
    return k2;
}

inline Polynomial build_K(const Polynomial& k2) {
    const auto v8 = variables(8);
    return substitute(k2, {{Y, v8[Y] - v8[N] * v8[V]}}, 8);
}

inline const Polynomial& K1() {
    static const Polynomial k = build_K1();
    return k;
}
inline const Polynomial& K2() {
    static const Polynomial k = build_K2(K1());
    return k;
}
inline const Polynomial& K() {
    static const Polynomial k = build_K(K2());
    return k;
}

/// isqrt(x1) + 2 isqrt(x2) + 4 isqrt(x3)
inline Integer root_sum_bound(const Integer& x1, const Integer& x2, const Integer& x3) {
    return isqrt(x1) + 2 * isqrt(x2) + 4 * isqrt(x3);
}

inline Integer ceil_sqrt(const Integer& x) { return is_square(x) ? isqrt(x) : Integer(isqrt(x) + 1); }

/// Smallest integer upper bound of sqrt x1 + 2 sqrt x2 + 4 sqrt x3 + r built
/// from ceiling square roots; n must exceed it.
inline Integer n_lower_bound(const Integer& x1, const Integer& x2, const Integer& x3, const Integer& r) {
    return ceil_sqrt(x1) + 2 * ceil_sqrt(x2) + 4 * ceil_sqrt(x3) + r;
}

/// Univariate coefficients in y after fixing every other slot of `poly`.
inline std::vector<Integer> y_coefficients(const Polynomial& poly, std::span<const Integer> others) {
    std::vector<std::size_t> stage;
    for (std::size_t k = 1; k < poly.arity(); ++k) stage.push_back(k);
    StagedEvaluator<Integer> ev(poly, {stage});
    const auto out = ev.eval_stage(0, ev.initial(), others);
    std::vector<Integer> coeffs(poly.degree_in(Y) + 1);
    const auto degs = ev.univariate_degrees();
    for (std::size_t k = 0; k < out.size(); ++k) coeffs[degs[k]] += out[k];
    return coeffs;
}

/// Some integer y with |y| <= root_sum_bound + 1 and K1(y, x) = 0, scanning
/// from the top so that the all-plus root is the one reported.
inline std::optional<Integer> k1_exists_y(const Integer& x1, const Integer& x2, const Integer& x3) {
    if (x1 < 0 || x2 < 0 || x3 < 0) throw std::invalid_argument("K1 arguments must be natural");
    const std::array<Integer, 3> xs{x1, x2, x3};
    const auto coeffs = y_coefficients(K1(), xs);
    const Integer bound = root_sum_bound(x1, x2, x3) + 1;
    const long b = bound.get_si();
    const auto y = find_integer_root(coeffs, -b, b, ScanDirection::descending);
    if (!y) return std::nullopt;
    return Integer(static_cast<long>(*y));
}

struct KCheck {
    bool precondition_ok = true;
    std::string precondition_error;
    bool exists_y = false;
    bool rhs = false;
    std::optional<Integer> y;
    Integer scan_upper;
};

/// Checks the K equivalence at one point. The y scan covers
/// [0, n(|v|+1) + r + root_sum_bound + 1] and reports the largest root.
inline KCheck k_equivalence_check(const Integer& x1, const Integer& x2, const Integer& x3, const Integer& p,
                                  const Integer& r, const Integer& n, const Integer& v) {
    KCheck out;
    auto reject = [&](std::string why) {
        out.precondition_ok = false;
        out.precondition_error = std::move(why);
        return out;
    };
    if (x1 < 0 || x2 < 0 || x3 < 0 || r < 0 || n < 0) return reject("x1, x2, x3, r, n must be natural");
    if (x1 % 2 == 0 || x2 % 2 == 0) return reject("x1 and x2 must be odd");
    if (p <= 0) return reject("p must be positive");
    const Integer s = root_sum_bound(x1, x2, x3);
    if (n <= n_lower_bound(x1, x2, x3, r)) return reject("n must exceed ceil(sqrt x1) + 2 ceil(sqrt x2) + 4 ceil(sqrt x3) + r");

    out.rhs = is_square(x1) && is_square(x2) && is_square(x3) && divides(p, r) && v >= 0;
    out.scan_upper = n * (abs(v) + 1) + r + s + 1;
    if (!out.scan_upper.fits_slong_p()) return reject("scan range too large");

    const std::array<Integer, 7> others{x1, x2, x3, p, r, n, v};
    const auto coeffs = y_coefficients(K(), others);
    const auto y = find_integer_root(coeffs, 0, out.scan_upper.get_si(), ScanDirection::descending);
    if (y) {
        out.exists_y = true;
        out.y = Integer(static_cast<long>(*y));
    }
    return out;
}

// ------------------------------------------------------------- grids ---

struct IntRange {
    long lo = 0;
    long hi = 0;
};

struct GridOutcome {
    std::uint64_t cells = 0;
    std::uint64_t rhs_true = 0;
    std::uint64_t mismatches = 0;
    std::optional<nlohmann::ordered_json> counterexample;

    void merge(const GridOutcome& o) {
        cells += o.cells;
        rhs_true += o.rhs_true;
        mismatches += o.mismatches;
        if (!counterexample && o.counterexample) counterexample = o.counterexample;
    }
};

namespace detail {
inline std::vector<long> values_in(IntRange r, bool odd_only) {
    std::vector<long> out;
    for (long x = r.lo; x <= r.hi; ++x)
        if (!odd_only || (x % 2 != 0)) out.push_back(x);
    return out;
}
inline Wrap64 w(long x) { return Wrap64{static_cast<std::uint64_t>(x)}; }
inline long lisqrt(long x) { return isqrt(Integer(x)).get_si(); }
inline long lceil_sqrt(long x) { return ceil_sqrt(Integer(x)).get_si(); }
inline bool lsquare(long x) { return is_square(Integer(x)); }
}  // namespace detail

/// Exhaustive K1 equivalence over odd x1, x2 and all x3 in the given ranges:
/// an integer root with |y| <= bound exists iff all three are squares.
inline GridOutcome k1_grid(IntRange x1r, IntRange x2r, IntRange x3r, unsigned jobs = 1) {
    const Polynomial& k1 = K1();
    StagedEvaluator<Wrap64> ev(k1, {{X1, X2, X3}});
    const auto degs = ev.univariate_degrees();
    const auto xs1 = detail::values_in(x1r, true);
    const auto xs2 = detail::values_in(x2r, true);
    const auto xs3 = detail::values_in(x3r, false);

    std::vector<GridOutcome> partial(std::max(1u, jobs));
    parallel_for(xs1.size(), jobs, [&](unsigned worker, std::size_t i1) {
        GridOutcome& acc = partial[worker];
        std::vector<Wrap64> out, coeffs(k1_y_degree + 1);
        for (long x2 : xs2) {
            for (long x3 : xs3) {
                const long x1 = xs1[i1];
                const std::array<Wrap64, 3> vals{detail::w(x1), detail::w(x2), detail::w(x3)};
                ev.eval_stage(0, ev.initial(), vals, out);
                std::fill(coeffs.begin(), coeffs.end(), Wrap64{0});
                for (std::size_t k = 0; k < out.size(); ++k) coeffs[degs[k]] += out[k];
                const long b = detail::lisqrt(x1) + 2 * detail::lisqrt(x2) + 4 * detail::lisqrt(x3) + 1;
                const auto y = scan_integer_root(coeffs, -b, b, ScanDirection::descending, [&](std::int64_t yy) {
                    const std::array<Integer, 4> pt{Integer(static_cast<long>(yy)), Integer(x1), Integer(x2), Integer(x3)};
                    return sgn(k1.evaluate(std::span<const Integer>(pt))) == 0;
                });
                const bool rhs = detail::lsquare(x1) && detail::lsquare(x2) && detail::lsquare(x3);
                ++acc.cells;
                if (rhs) ++acc.rhs_true;
                if (y.has_value() != rhs) {
                    ++acc.mismatches;
                    if (!acc.counterexample)
                        acc.counterexample = nlohmann::ordered_json{{"x1", x1}, {"x2", x2}, {"x3", x3},
                                                                    {"root_found", y.has_value()}, {"all_squares", rhs}};
                }
            }
        }
    });
    GridOutcome total;
    for (const auto& p : partial) total.merge(p);
    return total;
}

struct KGridRanges {
    IntRange x1{1, 59}, x2{1, 59}, x3{0, 60}, p{1, 6}, r{0, 12}, v{-3, 6};
};

/// Exhaustive K equivalence grid with n = n_lower_bound + 1. Each cell scans the
/// natural y range of k_equivalence_check; residues are computed by staged
/// evaluation of K in Z/2^64 and candidate roots confirmed by exact
/// evaluation of K.
inline GridOutcome k_grid(const KGridRanges& rg, unsigned jobs = 1) {
    const Polynomial& k = K();
    StagedEvaluator<Wrap64> ev(k, {{X1, X2, X3}, {P, R, N}, {V}});
    const auto degs = ev.univariate_degrees();
    const auto xs1 = detail::values_in(rg.x1, true);
    const auto xs2 = detail::values_in(rg.x2, true);
    const auto xs3 = detail::values_in(rg.x3, false);
    const auto ps = detail::values_in(rg.p, false);
    const auto rs = detail::values_in(rg.r, false);
    const auto vs = detail::values_in(rg.v, false);
    for (long p : ps)
        if (p <= 0) throw std::invalid_argument("K grid needs p > 0");

    const std::size_t triples = xs1.size() * xs2.size() * xs3.size();
    std::vector<GridOutcome> partial(std::max(1u, jobs));
    parallel_for(triples, jobs, [&](unsigned worker, std::size_t idx) {
        GridOutcome& acc = partial[worker];
        const long x1 = xs1[idx / (xs2.size() * xs3.size())];
        const long x2 = xs2[(idx / xs3.size()) % xs2.size()];
        const long x3 = xs3[idx % xs3.size()];
        const long s = detail::lisqrt(x1) + 2 * detail::lisqrt(x2) + 4 * detail::lisqrt(x3);
        const long c = detail::lceil_sqrt(x1) + 2 * detail::lceil_sqrt(x2) + 4 * detail::lceil_sqrt(x3);
        const bool squares = detail::lsquare(x1) && detail::lsquare(x2) && detail::lsquare(x3);

        std::vector<Wrap64> lvl0, lvl1, lvl2, coeffs(k.degree_in(Y) + 1);
        const std::array<Wrap64, 3> xv{detail::w(x1), detail::w(x2), detail::w(x3)};
        ev.eval_stage(0, ev.initial(), xv, lvl0);
        for (long p : ps) {
            for (long r : rs) {
                const long n = c + r + 1;
                const std::array<Wrap64, 3> prn{detail::w(p), detail::w(r), detail::w(n)};
                ev.eval_stage(1, lvl0, prn, lvl1);
                for (long v : vs) {
                    const std::array<Wrap64, 1> vv{detail::w(v)};
                    ev.eval_stage(2, lvl1, vv, lvl2);
                    std::fill(coeffs.begin(), coeffs.end(), Wrap64{0});
                    for (std::size_t q = 0; q < lvl2.size(); ++q) coeffs[degs[q]] += lvl2[q];
                    const long upper = n * (std::labs(v) + 1) + r + s + 1;
                    const auto y = scan_integer_root(coeffs, 0, upper, ScanDirection::descending, [&](std::int64_t yy) {
                        const std::array<Integer, 8> pt{Integer(static_cast<long>(yy)), Integer(x1), Integer(x2),
                                                        Integer(x3), Integer(p), Integer(r), Integer(n), Integer(v)};
                        return sgn(k.evaluate(std::span<const Integer>(pt))) == 0;
                    });
                    const bool rhs = squares && (r % p == 0) && v >= 0;
                    ++acc.cells;
                    if (rhs) ++acc.rhs_true;
                    if (y.has_value() != rhs) {
                        ++acc.mismatches;
                        if (!acc.counterexample)
                            acc.counterexample = nlohmann::ordered_json{
                                {"x1", x1}, {"x2", x2}, {"x3", x3}, {"p", p},  {"r", r},
                                {"n", n},   {"v", v},   {"root_found", y.has_value()}, {"rhs", rhs}};
                    }
                }
            }
        }
    });
    GridOutcome total;
    for (const auto& p : partial) total.merge(p);
    return total;
}

}  // namespace primepoly::kpoly
