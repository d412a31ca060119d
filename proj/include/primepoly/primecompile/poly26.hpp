#pragma once

/**
 * @file poly26.hpp
 * @brief The 26-unknown prime-representing polynomial: k+1 is prime iff
 *        the sum of the squares of fourteen polynomials in a..z has a
 *        natural zero.
 */

#include "primepoly/bigint.hpp"
#include "primepoly/polynomial.hpp"
#include "primepoly/primecompile/wilson.hpp"

#include <array>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace primepoly::compile {

inline constexpr std::size_t poly26_arity = 26;
inline constexpr std::size_t poly26_component_count = 14;

inline const std::vector<std::string>& poly26_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (char c = 'a'; c <= 'z'; ++c) v.emplace_back(1, c);
        return v;
    }();
    return names;
}

/// Component idx (0-based, in listed order) over values a..z.
template <class T>
T poly26_component(std::size_t idx, std::span<const T> w) {
    if (w.size() != poly26_arity) throw ArityError("poly26 needs 26 values");
    const T &a = w[0], &b = w[1], &c = w[2], &d = w[3], &e = w[4], &f = w[5], &g = w[6], &h = w[7], &i = w[8],
            &j = w[9], &k = w[10], &l = w[11], &m = w[12], &n = w[13], &o = w[14], &p = w[15], &q = w[16],
            &r = w[17], &s = w[18], &t = w[19], &u = w[20], &v = w[21], &x = w[23], &y = w[24], &z = w[25];
    switch (idx) {
        case 0: return T(w[22] * z + h + j - q);
        case 1: {
            const T gk = g * k + g + k;
            return T(gk * (h + j) + h - z);
        }
        case 2: {
            const T k2 = 2 * k;
            const T n1 = n + 1;
            return T(k2 * k2 * k2 * (k2 + 2) * n1 * n1 + 1 - f * f);
        }
        case 3: return T(p + q + z + 2 * n - e);
        case 4: {
            const T a1 = a + 1;
            return T(e * e * e * (e + 2) * a1 * a1 + 1 - o * o);
        }
        case 5: {
            const T a2 = a * a - 1;
            return T(x * x - a2 * y * y - 1);
        }
        case 6: {
            const T a2 = a * a - 1;
            const T y2 = y * y;
            return T(16 * a2 * r * r * y2 * y2 + 1 - u * u);
        }
        case 7: {
            const T u2 = u * u;
            const T base = a + u2 * (u2 - a);
            const T shift = n + 4 * d * y;
            const T rhs = x + c * u;
            return T((base * base - 1) * shift * shift + 1 - rhs * rhs);
        }
        case 8: {
            const T a2 = a * a - 1;
            return T(m * m - a2 * l * l - 1);
        }
        case 9: return T(k + i * (a - 1) - l);
        case 10: return T(n + l + v - y);
        case 11: {
            const T n1 = n + 1;
            return T(p + l * (a - n - 1) + b * (2 * a * n1 - n1 * n1 - 1) - m);
        }
        case 12: {
            const T p1 = p + 1;
            return T(q + y * (a - p - 1) + s * (2 * a * p1 - p1 * p1 - 1) - x);
        }
        case 13: return T(z + p * l * (a - p) + t * (2 * a * p - p * p - 1) - p * m);
        default: throw std::out_of_range("poly26 has 14 components");
    }
}

template <class T>
std::array<T, poly26_component_count> poly26_components(std::span<const T> w) {
    if (w.size() != poly26_arity) throw ArityError("poly26 needs 26 values");
    std::array<T, poly26_component_count> out;
    for (std::size_t k = 0; k < poly26_component_count; ++k) out[k] = poly26_component<T>(k, w);
    return out;
}

inline std::array<Integer, poly26_component_count> poly26_components(const std::vector<Integer>& w) {
    return poly26_components<Integer>(std::span<const Integer>(w));
}

/// The fourteen components as polynomials over a..z.
inline const std::vector<Polynomial>& poly26_component_polys() {
    static const std::vector<Polynomial> polys = [] {
        const auto vars = variables(poly26_arity);
        std::vector<Polynomial> out;
        for (std::size_t k = 0; k < poly26_component_count; ++k)
            out.push_back(poly26_component<Polynomial>(k, std::span<const Polynomial>(vars)));
        return out;
    }();
    return polys;
}

inline Polynomial build_poly26() {
    Polynomial sum = Polynomial::constant(poly26_arity, 0);
    for (const auto& c : poly26_component_polys()) sum += c * c;
    return sum;
}

struct Poly26ProbeReport {
    std::uint64_t k = 0;
    unsigned box = 0;
    bool k_plus_1_prime = false;
    std::uint64_t nodes = 0;
    std::uint64_t zeros_found = 0;
    std::vector<std::vector<std::int64_t>> zeros;  // first few, in a..z order
    bool hard_failure = false;
};

inline constexpr unsigned poly26_probe_box_cap = 3;

/// Exhaustive scan of the 25 non-k unknowns over [0, box] with pruning:
/// each component is checked as soon as all of its variables are assigned.
inline Poly26ProbeReport poly26_soundness_probe(std::uint64_t k, unsigned box) {
    if (k < 1) throw std::invalid_argument("probe needs k >= 1");
    if (box > poly26_probe_box_cap)
        throw std::out_of_range("probe box must be <= " + std::to_string(poly26_probe_box_cap));
    if (k > 1000) throw std::out_of_range("probe k too large for 64-bit evaluation");
    const bool k_plus_1_prime = wilson_is_prime(k);
    Poly26ProbeReport rep;
    rep.k = k;
    rep.box = box;
    rep.k_plus_1_prime = k_plus_1_prime;

    static const std::string order = "fneaoxyrudcmlivpbqszthjwg";
    std::vector<std::size_t> var_order;
    for (char ch : order) var_order.push_back(static_cast<std::size_t>(ch - 'a'));
    // Components completed at each depth.
    std::vector<std::vector<std::size_t>> checks(var_order.size());
    const auto& comps = poly26_component_polys();
    for (std::size_t c = 0; c < comps.size(); ++c) {
        std::size_t depth = 0;
        for (std::size_t pos = 0; pos < var_order.size(); ++pos)
            if (comps[c].degree_in(var_order[pos]) > 0) depth = pos;
        checks[depth].push_back(c);
    }

    std::vector<std::int64_t> w(poly26_arity, 0);
    w['k' - 'a'] = static_cast<std::int64_t>(k);
    auto dfs = [&](auto&& self, std::size_t depth) -> void {
        if (depth == var_order.size()) {
            ++rep.zeros_found;
            if (rep.zeros.size() < 8) rep.zeros.push_back(w);
            if (!k_plus_1_prime) rep.hard_failure = true;
            return;
        }
        for (std::int64_t val = 0; val <= static_cast<std::int64_t>(box); ++val) {
            w[var_order[depth]] = val;
            ++rep.nodes;
            bool ok = true;
            for (auto c : checks[depth])
                if (poly26_component<std::int64_t>(c, std::span<const std::int64_t>(w)) != 0) {
                    ok = false;
                    break;
                }
            if (ok) self(self, depth + 1);
        }
        w[var_order[depth]] = 0;
    };
    dfs(dfs, 0);
    return rep;
}

}  // namespace primepoly::compile
