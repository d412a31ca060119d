#pragma once

/**
 * @file signprod.hpp
 * @brief The sign-product polynomial J_n and the square-root elimination
 *        check built on it.
 *
 * J_n(r1, ..., rn) is the product of (r1 +- r2 +- ... +- rn) over all
 * 2^(n-1) sign vectors with r1 positive. Expanded, every exponent is even,
 * every monomial has degree 2^(n-1), and r1^(2^(n-1)) has coefficient 1.
 * Because exponents are even, J_n can be evaluated when only the squares
 * of its arguments are known.
 */

#include "primepoly/bigint.hpp"
#include "primepoly/polynomial.hpp"
#include "primepoly/root_scan.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace primepoly::signprod {

inline constexpr unsigned default_j_cap = 6;
inline constexpr unsigned default_q_cap = 3;

struct JPolynomial {
    unsigned n = 0;
    Polynomial poly;
};

struct JProperties {
    bool even_exponents = false;
    bool homogeneous = false;
    bool integer_coefficients = false;
    bool unit_leading = false;
    bool all() const noexcept { return even_exponents && homogeneous && integer_coefficients && unit_leading; }
};

inline JProperties check_j_properties(const Polynomial& p, unsigned n) {
    JProperties props;
    const std::uint64_t degree = std::uint64_t{1} << (n - 1);
    props.even_exponents = true;
    props.homogeneous = true;
    for (const auto& t : p.terms()) {
        for (auto e : t.exponents)
            if (e % 2 != 0) props.even_exponents = false;
        if (exponent_sum(t.exponents) != degree) props.homogeneous = false;
    }
    // Coefficients are Integer by type; what remains to check is the
    // canonical-form invariant that each stored one is a nonzero multiple of 1.
    props.integer_coefficients = p.arity() == n;
    for (const auto& t : p.terms())
        if (sgn(t.coefficient) == 0) props.integer_coefficients = false;
    Exponents lead(n, 0);
    lead[0] = static_cast<std::uint32_t>(degree);
    props.unit_leading = p.coefficient(lead) == 1;
    return props;
}

namespace detail {
inline Polynomial product_tree(std::vector<Polynomial>& factors, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return factors[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return product_tree(factors, lo, mid) * product_tree(factors, mid, hi);
}
}  // namespace detail

/// Expands the product over all sign vectors and verifies the J properties.
inline JPolynomial build_J(unsigned n, unsigned cap = default_j_cap) {
    if (n < 2 || n > cap)
        throw std::out_of_range("J_n needs 2 <= n <= " + std::to_string(cap) + ", got " + std::to_string(n));
    const auto vars = variables(n);
    std::vector<Polynomial> factors;
    const std::uint64_t combos = std::uint64_t{1} << (n - 1);
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
        Polynomial f = vars[0];
        for (unsigned k = 1; k < n; ++k) f = (mask >> (k - 1)) & 1u ? f - vars[k] : f + vars[k];
        factors.push_back(std::move(f));
    }
    JPolynomial j{n, detail::product_tree(factors, 0, factors.size())};
    if (!check_j_properties(j.poly, n).all())
        throw std::logic_error("constructed J_" + std::to_string(n) + " violates its structural properties");
    return j;
}

/// Process-wide cache of J_n for repeated use by the verification suites.
inline const JPolynomial& cached_J(unsigned n) {
    static std::mutex mu;
    static std::map<unsigned, JPolynomial> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_J(n, std::max(n, default_j_cap))).first;
    return it->second;
}

/// The literal product of (v1 +- v2 +- ... +- vn), no polynomial machinery.
inline Integer sign_product_eval(std::span<const Integer> values) {
    if (values.size() < 2) throw std::invalid_argument("sign product needs at least two values");
    const std::size_t n = values.size();
    if (n > 24) throw std::out_of_range("sign product over too many values");
    Integer prod = 1;
    const std::uint64_t combos = std::uint64_t{1} << (n - 1);
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
        Integer s = values[0];
        for (std::size_t k = 1; k < n; ++k) {
            if ((mask >> (k - 1)) & 1u)
                s -= values[k];
            else
                s += values[k];
        }
        prod *= s;
    }
    return prod;
}

/// J evaluated where argument k is known only through its square squares[k].
template <class R>
R eval_J_on_squares(const JPolynomial& j, std::span<const R> squares) {
    if (squares.size() != j.n) throw ArityError("square count does not match J arity");
    R sum = RingTraits<R>::from_integer(0);
    for (const auto& t : j.poly.terms()) {
        R prod = RingTraits<R>::from_integer(t.coefficient);
        for (unsigned k = 0; k < j.n; ++k)
            if (t.exponents[k] != 0) prod *= ipow(squares[k], t.exponents[k] / 2);
        sum += prod;
    }
    return sum;
}

/// Polynomial-valued version: slot k carries the polynomial standing for r_k^2.
inline Polynomial compose_on_squares(const JPolynomial& j, std::span<const Polynomial> squares) {
    if (squares.size() != j.n) throw ArityError("square count does not match J arity");
    const std::size_t arity = squares.front().arity();
    std::vector<std::vector<Polynomial>> powers(j.n);
    for (unsigned k = 0; k < j.n; ++k) {
        const auto top = j.poly.degree_in(k) / 2;
        powers[k].push_back(Polynomial::constant(arity, 1));
        for (std::uint32_t e = 1; e <= top; ++e) powers[k].push_back(powers[k].back() * squares[k]);
    }
    TermAccumulator acc(arity);
    for (const auto& t : j.poly.terms()) {
        Polynomial prod = Polynomial::constant(arity, t.coefficient);
        for (unsigned k = 0; k < j.n; ++k)
            if (t.exponents[k] != 0) prod = prod * powers[k][t.exponents[k] / 2];
        for (const auto& m : prod.terms()) acc.add(m.exponents, m.coefficient);
    }
    return std::move(acc).finish();
}

/// W mode for the square-root elimination product: polynomial
/// W = 1 + A1^2 + ... + Aq^2 (no constant) or a fixed constant w >= 2.
struct WMode {
    std::optional<Integer> constant;
    static WMode polynomial() { return {}; }
    static WMode fixed(Integer w) { return {std::move(w)}; }
};

struct MrResult {
    bool exists_X = false;
    bool all_squares = false;
    std::optional<Integer> X;
    Integer W;
    Integer bound;
};

/// Scans |X| <= sum isqrt(A_i) W^(i-1) + 1 for a zero of
/// J_{q+1}(X, sqrt(A1), sqrt(A2) W, ..., sqrt(Aq) W^(q-1)). The largest root found is returned.
inline MrResult mr_check(std::span<const Integer> A, const WMode& mode, unsigned q_cap = default_q_cap) {
    const std::size_t q = A.size();
    if (q < 1 || q > q_cap) throw std::out_of_range("mr_check needs 1 <= q <= " + std::to_string(q_cap));
    for (const auto& a : A)
        if (a < 0) throw std::invalid_argument("mr_check arguments must be natural");
    MrResult res;
    if (mode.constant) {
        if (*mode.constant < 2) throw std::invalid_argument("constant W must be >= 2");
        res.W = *mode.constant;
    } else {
        res.W = 1;
        for (const auto& a : A) res.W += a * a;
    }
    res.all_squares = true;
    Integer bound = 1, wpow = 1;
    std::vector<Integer> squares{Integer(0)};
    for (std::size_t k = 0; k < q; ++k) {
        if (!is_square(A[k])) res.all_squares = false;
        bound += isqrt(A[k]) * wpow;
        squares.push_back(A[k] * wpow * wpow);
        wpow *= res.W;
    }
    res.bound = bound;

    const JPolynomial& j = cached_J(static_cast<unsigned>(q + 1));
    std::vector<Integer> coeffs(j.poly.degree_in(0) + 1);
    for (const auto& t : j.poly.terms()) {
        Integer c = t.coefficient;
        for (std::size_t k = 1; k <= q; ++k)
            if (t.exponents[k] != 0) c *= ipow(squares[k], t.exponents[k] / 2);
        coeffs[t.exponents[0]] += c;
    }
    if (!bound.fits_slong_p()) throw std::out_of_range("X bound too large to scan");
    const long b = bound.get_si();
    const auto root = find_integer_root(coeffs, -b, b, ScanDirection::descending);
    if (root) {
        res.exists_X = true;
        res.X = Integer(static_cast<long>(*root));
    }
    return res;
}

/// binom(n, k) for small arguments.
inline Integer binomial(std::uint64_t n, std::uint64_t k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// The monomial-count formula binom(2^(q-1)+q-1, q-1) commonly stated for the q-fold
/// square-root elimination product.
inline Integer claimed_monomial_count(unsigned q) {
    return binomial((std::uint64_t{1} << (q - 1)) + q - 1, q - 1);
}

/// Count of exponent patterns of a homogeneous degree-2^(n-2) polynomial in
/// n squared variables; an upper bound on the number of monomials of J_n.
inline Integer homogeneous_pattern_bound(unsigned n) {
    return binomial((std::uint64_t{1} << (n - 2)) + n - 1, n - 1);
}

}  // namespace primepoly::signprod
