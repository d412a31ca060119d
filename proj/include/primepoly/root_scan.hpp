#pragma once

// Integer-root scanning of univariate polynomials over a bounded range.
//
// The scan walks the range with a forward-difference table in Z/2^64, which
// costs one addition per degree per step. A point whose residue is nonzero
// cannot be a root; a zero residue is confirmed exactly by the caller's
// predicate, so the result is the same as exact evaluation at every point.

#include "primepoly/bigint.hpp"
#include "primepoly/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace primepoly {

enum class ScanDirection { ascending, descending };

/// Evaluates sum coeffs[k] * x^k (coefficients low to high).
template <class R>
R horner(std::span<const R> coeffs, const R& x) {
    if (coeffs.empty()) return RingTraits<R>::from_integer(0);
    R acc = coeffs.back();
    for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
        acc *= x;
        acc += coeffs[k];
    }
    return acc;
}

/// First point in [lo, hi] (walked in `dir`) where the residue polynomial
/// vanishes and confirm(point) holds.
template <class Confirm>
std::optional<std::int64_t> scan_integer_root(std::span<const Wrap64> coeffs, std::int64_t lo, std::int64_t hi,
                                              ScanDirection dir, Confirm&& confirm) {
    if (lo > hi) return std::nullopt;
    const std::size_t degree = coeffs.empty() ? 0 : coeffs.size() - 1;
    const std::int64_t step = dir == ScanDirection::ascending ? 1 : -1;
    const std::int64_t start = dir == ScanDirection::ascending ? lo : hi;

    // Difference table at `start`: table[i] = Delta^i f(start).
    std::vector<Wrap64> table(degree + 1);
    for (std::size_t k = 0; k <= degree; ++k) {
        const Wrap64 x{static_cast<std::uint64_t>(start + static_cast<std::int64_t>(k) * step)};
        table[k] = horner(coeffs, x);
    }
    for (std::size_t i = 1; i <= degree; ++i)
        for (std::size_t j = degree; j >= i; --j) table[j] = table[j] - table[j - 1];

    const std::uint64_t count = static_cast<std::uint64_t>(hi - lo);
    std::int64_t y = start;
    for (std::uint64_t n = 0;; ++n) {
        if (table[0].v == 0 && confirm(y)) return y;
        if (n == count) break;
        for (std::size_t i = 0; i < degree; ++i) table[i] += table[i + 1];
        y += step;
    }
    return std::nullopt;
}

/// Exact version over integer coefficients (low to high).
inline std::optional<std::int64_t> find_integer_root(std::span<const Integer> coeffs, std::int64_t lo, std::int64_t hi,
                                                     ScanDirection dir) {
    std::vector<Wrap64> residues;
    residues.reserve(coeffs.size());
    for (const auto& c : coeffs) residues.push_back(Wrap64{low64(c)});
    return scan_integer_root(residues, lo, hi, dir,
                             [&](std::int64_t y) { return sgn(horner(coeffs, Integer(static_cast<long>(y)))) == 0; });
}

/// Coefficients (low to high) of a polynomial whose only variable with a
/// nonzero exponent is `var`.
inline std::vector<Integer> univariate_coefficients(const Polynomial& p, std::size_t var) {
    std::vector<Integer> out(p.is_zero() ? 1 : p.degree_in(var) + 1);
    for (const auto& t : p.terms()) {
        for (std::size_t k = 0; k < p.arity(); ++k)
            if (k != var && t.exponents[k] != 0) throw std::invalid_argument("polynomial is not univariate");
        out[t.exponents[var]] += t.coefficient;
    }
    return out;
}

}  // namespace primepoly
