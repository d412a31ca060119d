#pragma once

/**
 * @file polynomial.hpp
 * @brief Sparse multivariate polynomials over arbitrary-precision integers.
 *
 * A Polynomial has a fixed arity (number of variables) and a list of terms
 * kept in canonical form: no zero coefficients, no repeated exponent
 * vectors, sorted in graded-lexicographic descending order. Two polynomials
 * are equal iff their representations are equal.
 *
 * Products accumulate into a hash map keyed by exponent vectors and are
 * sorted once at the end.
 */

#include "primepoly/bigint.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace primepoly {

using Exponents = std::vector<std::uint32_t>;

struct Monomial {
    Exponents exponents;
    Integer coefficient;

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.exponents == b.exponents && a.coefficient == b.coefficient;
    }
};

class ArityError : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

class BudgetExceeded : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

inline std::uint64_t exponent_sum(const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

/// Graded-lexicographic "a comes before b" in descending order.
inline bool grlex_before(const Exponents& a, const Exponents& b) {
    const auto da = exponent_sum(a), db = exponent_sum(b);
    if (da != db) return da > db;
    return a > b;
}

struct ExponentsHash {
    std::size_t operator()(const Exponents& e) const noexcept {
        std::size_t h = 0xcbf29ce484222325ull;
        for (auto x : e) {
            h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

class Polynomial;

/// Collects (exponents, coefficient) contributions, merging duplicates.
class TermAccumulator {
 public:
    explicit TermAccumulator(std::size_t arity, std::size_t budget = 0) : arity_(arity), budget_(budget) {}

    void add(const Exponents& e, const Integer& c) {
        auto it = map_.find(e);
        if (it == map_.end()) {
            map_.emplace(e, c);
            check_budget();
        } else {
            it->second += c;
        }
    }

    /// Adds a*b without a temporary.
    void add_product(const Exponents& e, const Integer& a, const Integer& b) {
        auto it = map_.find(e);
        if (it == map_.end()) {
            map_.emplace(e, Integer(a * b));
            check_budget();
        } else {
            mpz_addmul(it->second.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        }
    }

    std::size_t size() const noexcept { return map_.size(); }

    Polynomial finish() &&;

 private:
    void check_budget() const {
        if (budget_ != 0 && map_.size() > budget_)
            throw BudgetExceeded("term budget of " + std::to_string(budget_) + " exceeded");
    }

    std::size_t arity_;
    std::size_t budget_;
    std::unordered_map<Exponents, Integer, ExponentsHash> map_;
};

struct PolyStats {
    std::uint64_t total_degree = 0;
    std::size_t monomial_count = 0;
    std::size_t arity = 0;
    bool is_zero = true;
};

class Polynomial {
 public:
    Polynomial() = default;
    explicit Polynomial(std::size_t arity) : arity_(arity) {}

    static Polynomial constant(std::size_t arity, const Integer& c) {
        Polynomial p(arity);
        if (sgn(c) != 0) p.terms_.push_back({Exponents(arity, 0), c});
        return p;
    }

    static Polynomial variable(std::size_t arity, std::size_t index, std::uint32_t power = 1) {
        if (index >= arity) throw ArityError("variable index out of range");
        Exponents e(arity, 0);
        e[index] = power;
        Polynomial p(arity);
        p.terms_.push_back({std::move(e), Integer(1)});
        return p;
    }

    static Polynomial monomial(Exponents e, const Integer& c) {
        Polynomial p(e.size());
        if (sgn(c) != 0) p.terms_.push_back({std::move(e), c});
        return p;
    }

    /// Builds canonical form from arbitrary terms (duplicates merged, zeros dropped).
    static Polynomial from_terms(std::size_t arity, std::vector<Monomial> terms) {
        TermAccumulator acc(arity);
        for (auto& t : terms) {
            if (t.exponents.size() != arity) throw ArityError("monomial length does not match arity");
            acc.add(t.exponents, t.coefficient);
        }
        return std::move(acc).finish();
    }

    std::size_t arity() const noexcept { return arity_; }
    const std::vector<Monomial>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Total degree; 0 for the zero polynomial (see is_zero()).
    std::uint64_t total_degree() const {
        return terms_.empty() ? 0 : exponent_sum(terms_.front().exponents);
    }

    std::uint32_t degree_in(std::size_t var) const {
        std::uint32_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.exponents.at(var));
        return d;
    }

    Integer coefficient(const Exponents& e) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                   [](const Monomial& m, const Exponents& key) { return grlex_before(m.exponents, key); });
        if (it != terms_.end() && it->exponents == e) return it->coefficient;
        return 0;
    }

    PolyStats stats() const { return {total_degree(), terms_.size(), arity_, is_zero()}; }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& t : r.terms_) t.coefficient = -t.coefficient;
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return multiply(a, b); }

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend Polynomial operator+(const Polynomial& a, const Integer& c) { return a + constant(a.arity_, c); }
    friend Polynomial operator+(const Integer& c, const Polynomial& a) { return a + constant(a.arity_, c); }
    friend Polynomial operator-(const Polynomial& a, const Integer& c) { return a - constant(a.arity_, c); }
    friend Polynomial operator-(const Integer& c, const Polynomial& a) { return constant(a.arity_, c) - a; }
    friend Polynomial operator*(const Polynomial& a, const Integer& c) { return a.scaled(c); }
    friend Polynomial operator*(const Integer& c, const Polynomial& a) { return a.scaled(c); }
    friend Polynomial operator+(const Polynomial& a, long c) { return a + Integer(c); }
    friend Polynomial operator+(long c, const Polynomial& a) { return a + Integer(c); }
    friend Polynomial operator-(const Polynomial& a, long c) { return a - Integer(c); }
    friend Polynomial operator-(long c, const Polynomial& a) { return Integer(c) - a; }
    friend Polynomial operator*(const Polynomial& a, long c) { return a.scaled(Integer(c)); }
    friend Polynomial operator*(long c, const Polynomial& a) { return a.scaled(Integer(c)); }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }

    Polynomial scaled(const Integer& c) const {
        if (sgn(c) == 0) return Polynomial(arity_);
        Polynomial r = *this;
        for (auto& t : r.terms_) t.coefficient *= c;
        return r;
    }

    /// Product with an optional cap on the number of distinct terms.
    static Polynomial multiply(const Polynomial& a, const Polynomial& b, std::size_t budget = 0) {
        require_same_arity(a, b);
        if (a.is_zero() || b.is_zero()) return Polynomial(a.arity_);
        TermAccumulator acc(a.arity_, budget);
        Exponents scratch(a.arity_);
        for (const auto& s : a.terms_) {
            for (const auto& t : b.terms_) {
                for (std::size_t k = 0; k < scratch.size(); ++k) scratch[k] = s.exponents[k] + t.exponents[k];
                acc.add_product(scratch, s.coefficient, t.coefficient);
            }
        }
        return std::move(acc).finish();
    }

    /// Exact evaluation in any ring R with RingTraits<R>.
    template <class R>
    R evaluate(std::span<const R> point) const {
        if (point.size() != arity_) throw ArityError("evaluation point length does not match arity");
        const auto tables = power_tables(point);
        R sum = RingTraits<R>::from_integer(Integer(0));
        for (const auto& t : terms_) {
            R prod = RingTraits<R>::from_integer(t.coefficient);
            for (std::size_t k = 0; k < arity_; ++k)
                if (t.exponents[k] != 0) prod *= tables[k][t.exponents[k]];
            sum += prod;
        }
        return sum;
    }

    template <class R>
    R evaluate(const std::vector<R>& point) const {
        return evaluate(std::span<const R>(point));
    }

    /// Low-level access used by canonicalization helpers.
    static Polynomial from_canonical(std::size_t arity, std::vector<Monomial> sorted_terms) {
        Polynomial p(arity);
        p.terms_ = std::move(sorted_terms);
        return p;
    }

 private:
    template <class R>
    std::vector<std::vector<R>> power_tables(std::span<const R> point) const {
        std::vector<std::vector<R>> tables(arity_);
        for (std::size_t k = 0; k < arity_; ++k) {
            const auto d = degree_in(k);
            auto& tab = tables[k];
            tab.reserve(d + 1);
            tab.push_back(RingTraits<R>::from_integer(Integer(1)));
            for (std::uint32_t e = 1; e <= d; ++e) tab.push_back(tab.back() * point[k]);
        }
        return tables;
    }

    static void require_same_arity(const Polynomial& a, const Polynomial& b) {
        if (a.arity_ != b.arity_)
            throw ArityError("arity mismatch: " + std::to_string(a.arity_) + " vs " + std::to_string(b.arity_));
    }

    static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
        require_same_arity(a, b);
        std::vector<Monomial> out;
        out.reserve(a.terms_.size() + b.terms_.size());
        auto i = a.terms_.begin();
        auto j = b.terms_.begin();
        auto push_b = [&](const Monomial& t) {
            out.push_back(t);
            if (subtract) out.back().coefficient = -out.back().coefficient;
        };
        while (i != a.terms_.end() && j != b.terms_.end()) {
            if (i->exponents == j->exponents) {
                Integer c = subtract ? Integer(i->coefficient - j->coefficient) : Integer(i->coefficient + j->coefficient);
                if (sgn(c) != 0) out.push_back({i->exponents, std::move(c)});
                ++i;
                ++j;
            } else if (grlex_before(i->exponents, j->exponents)) {
                out.push_back(*i++);
            } else {
                push_b(*j++);
            }
        }
        for (; i != a.terms_.end(); ++i) out.push_back(*i);
        for (; j != b.terms_.end(); ++j) push_b(*j);
        return from_canonical(a.arity_, std::move(out));
    }

    std::size_t arity_ = 0;
    std::vector<Monomial> terms_;
};

inline Polynomial TermAccumulator::finish() && {
    std::vector<Monomial> terms;
    terms.reserve(map_.size());
    for (auto& [e, c] : map_)
        if (sgn(c) != 0) terms.push_back({e, std::move(c)});
    std::sort(terms.begin(), terms.end(),
              [](const Monomial& a, const Monomial& b) { return grlex_before(a.exponents, b.exponents); });
    return Polynomial::from_canonical(arity_, std::move(terms));
}

/// a^e by repeated squaring; pow(a, 0) = 1.
inline Polynomial pow(const Polynomial& a, std::uint32_t e, std::size_t budget = 0) {
    Polynomial result = Polynomial::constant(a.arity(), 1);
    Polynomial base = a;
    while (e) {
        if (e & 1u) result = Polynomial::multiply(result, base, budget);
        e >>= 1;
        if (e) base = Polynomial::multiply(base, base, budget);
    }
    return result;
}

/// Composition: variable i of `a` becomes map[i]; unmapped variables map to
/// themselves inside the common target arity.
inline Polynomial substitute(const Polynomial& a, const std::map<std::size_t, Polynomial>& map,
                             std::optional<std::size_t> target_arity = std::nullopt) {
    std::size_t target = target_arity.value_or(map.empty() ? a.arity() : map.begin()->second.arity());
    for (const auto& [var, repl] : map) {
        if (var >= a.arity()) throw ArityError("substitution variable out of range");
        if (repl.arity() != target) throw ArityError("substitution targets have inconsistent arity");
    }
    std::vector<std::size_t> unmapped;
    for (std::size_t k = 0; k < a.arity(); ++k) {
        if (!map.contains(k)) {
            if (k >= target) throw ArityError("unmapped variable does not exist in the target arity");
            unmapped.push_back(k);
        }
    }

    // Cached powers of each replacement.
    std::map<std::size_t, std::vector<Polynomial>> powers;
    for (const auto& [var, repl] : map) {
        auto& tab = powers[var];
        tab.push_back(Polynomial::constant(target, 1));
        for (std::uint32_t e = 1; e <= a.degree_in(var); ++e) tab.push_back(tab.back() * repl);
    }

    TermAccumulator acc(target);
    for (const auto& t : a.terms()) {
        Exponents base(target, 0);
        for (auto k : unmapped) base[k] = t.exponents[k];
        Polynomial prod = Polynomial::monomial(base, t.coefficient);
        for (const auto& [var, tab] : powers)
            if (t.exponents[var] != 0) prod = prod * tab[t.exponents[var]];
        for (const auto& m : prod.terms()) acc.add(m.exponents, m.coefficient);
    }
    return std::move(acc).finish();
}

/// Reindexes variables: variable k of `a` becomes variable index_map[k] of
/// a polynomial with arity new_arity.
inline Polynomial remap(const Polynomial& a, std::size_t new_arity, std::span<const std::size_t> index_map) {
    if (index_map.size() != a.arity()) throw ArityError("remap table length does not match arity");
    std::vector<Monomial> terms;
    terms.reserve(a.size());
    for (const auto& t : a.terms()) {
        Exponents e(new_arity, 0);
        for (std::size_t k = 0; k < a.arity(); ++k) {
            if (index_map[k] >= new_arity) throw ArityError("remap target out of range");
            e[index_map[k]] += t.exponents[k];
        }
        terms.push_back({std::move(e), t.coefficient});
    }
    return Polynomial::from_terms(new_arity, std::move(terms));
}

/// Coefficients of `a` viewed as a polynomial in `var`: result[d] holds the
/// terms with var^d, with that exponent cleared.
inline std::vector<Polynomial> collect_in(const Polynomial& a, std::size_t var) {
    std::vector<std::vector<Monomial>> buckets(a.is_zero() ? 1 : a.degree_in(var) + 1);
    for (const auto& t : a.terms()) {
        Monomial m = t;
        const auto d = m.exponents.at(var);
        m.exponents[var] = 0;
        buckets[d].push_back(std::move(m));
    }
    std::vector<Polynomial> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(Polynomial::from_terms(a.arity(), std::move(b)));
    return out;
}

/// Named variables for an arity, in order.
inline std::vector<Polynomial> variables(std::size_t arity) {
    std::vector<Polynomial> vs;
    vs.reserve(arity);
    for (std::size_t k = 0; k < arity; ++k) vs.push_back(Polynomial::variable(arity, k));
    return vs;
}

}  // namespace primepoly
