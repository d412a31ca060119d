#pragma once

/**
 * @file pell.hpp
 * @brief Lucas solution sequences of x^2 - (a^2-1)y^2 = 1 and the
 *        two-unknown Pell system characterising C = psi_A(B).
 *
 * chi_a and psi_a satisfy
 *   chi(0)=1, chi(1)=a, chi(n+2) = 2a chi(n+1) - chi(n)
 *   psi(0)=0, psi(1)=1, psi(n+2) = 2a psi(n+1) - psi(n)
 * and alpha_b(0)=0, alpha_b(1)=1, alpha_b(n+2) = b alpha_b(n+1) - alpha_b(n).
 *
 * The Pell system: for A > 1, B > 0, C = psi_A(B) iff there are naturals
 * i, j with DFI a square, F | H - C and B <= C, where
 *   D = (A^2-1)C^2+1, E = 2(i+1)D(e+1)C^2, F = (A^2-1)E^2+1,
 *   G = A + F(F-A),   H = B + 2jC,         I = (G^2-1)H^2+1.
 */

#include "primepoly/bigint.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace primepoly::pell {

struct LucasPair {
    Integer a;
    std::uint64_t n = 0;
    Integer chi;
    Integer psi;
};

/// Memoized chi_a / psi_a values for one parameter a; grows on demand.
class LucasTable {
 public:
    explicit LucasTable(Integer a) : a_(std::move(a)) {
        if (a_ < 2) throw std::invalid_argument("Lucas sequence parameter must be >= 2");
        chi_ = {Integer(1), a_};
        psi_ = {Integer(0), Integer(1)};
    }

    const Integer& a() const noexcept { return a_; }

    const Integer& chi(std::uint64_t n) {
        extend(n);
        return chi_[n];
    }

    const Integer& psi(std::uint64_t n) {
        extend(n);
        return psi_[n];
    }

    LucasPair pair(std::uint64_t n) {
        extend(n);
        return {a_, n, chi_[n], psi_[n]};
    }

 private:
    void extend(std::uint64_t n) {
        const Integer two_a = 2 * a_;
        while (chi_.size() <= n) {
            const auto k = chi_.size();
            chi_.push_back(two_a * chi_[k - 1] - chi_[k - 2]);
            psi_.push_back(two_a * psi_[k - 1] - psi_[k - 2]);
        }
    }

    Integer a_;
    std::vector<Integer> chi_;
    std::vector<Integer> psi_;
};

inline LucasPair lucas_pair(const Integer& a, std::uint64_t n) { return LucasTable(a).pair(n); }

inline Integer psi(const Integer& a, std::uint64_t n) { return LucasTable(a).psi(n); }

inline Integer alpha_seq(const Integer& b, std::uint64_t n) {
    if (b < 3) throw std::invalid_argument("alpha sequence parameter must be >= 3");
    Integer prev = 0, cur = 1;
    if (n == 0) return prev;
    for (std::uint64_t k = 1; k < n; ++k) {
        Integer next = b * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

struct DivisibilityPair {
    bool lhs = false;  // psi_a(k) | psi_a(m)
    bool rhs = false;  // k | m
};

inline DivisibilityPair psi_divides_equiv(LucasTable& table, std::uint64_t k, std::uint64_t m) {
    if (k == 0 || m == 0) throw std::invalid_argument("indices must be >= 1");
    return {divides(table.psi(k), table.psi(m)), m % k == 0};
}

inline DivisibilityPair psi_divides_equiv(const Integer& a, std::uint64_t k, std::uint64_t m) {
    LucasTable table(a);
    return psi_divides_equiv(table, k, m);
}

struct PellAux {
    Integer A, B, C, e, i, j;
    Integer D, E, F, G, H, I;
};

namespace detail {
inline void require_pell_domain(const Integer& A, const Integer& B, const Integer& C, const Integer& e,
                                const Integer& i, const Integer& j) {
    if (A <= 1) throw std::invalid_argument("Pell system needs A > 1");
    if (B <= 0) throw std::invalid_argument("Pell system needs B > 0");
    if (C < 0 || e < 0 || i < 0 || j < 0) throw std::invalid_argument("C, e, i, j must be natural");
}
}  // namespace detail

inline PellAux pell_aux(const Integer& A, const Integer& B, const Integer& C, const Integer& e, const Integer& i,
                        const Integer& j) {
    detail::require_pell_domain(A, B, C, e, i, j);
    PellAux x{A, B, C, e, i, j, {}, {}, {}, {}, {}, {}};
    const Integer a2m1 = A * A - 1;
    x.D = a2m1 * C * C + 1;
    x.E = 2 * (i + 1) * x.D * (e + 1) * C * C;
    x.F = a2m1 * x.E * x.E + 1;
    x.G = A + x.F * (x.F - A);
    x.H = B + 2 * j * C;
    x.I = (x.G * x.G - 1) * x.H * x.H + 1;
    return x;
}

struct PellConditions {
    bool dfi_square = false;
    bool f_divides = false;
    bool b_le_c = false;
    bool all() const noexcept { return dfi_square && f_divides && b_le_c; }
};

inline PellConditions pell_condition_parts(const PellAux& x) {
    PellConditions c;
    c.b_le_c = x.B <= x.C;
    c.f_divides = divides(x.F, Integer(x.H - x.C));
    c.dfi_square = is_square(Integer(x.D * x.F * x.I));
    return c;
}

inline bool pell_conditions(const Integer& A, const Integer& B, const Integer& C, const Integer& e, const Integer& i,
                            const Integer& j) {
    detail::require_pell_domain(A, B, C, e, i, j);
    // Cheap conjuncts first.
    if (B > C) return false;
    const PellAux x = pell_aux(A, B, C, e, i, j);
    if (!divides(x.F, Integer(x.H - x.C))) return false;
    return is_square(Integer(x.D * x.F * x.I));
}

/// Smallest (i, j) in lexicographic order with i <= i_cap, j <= j_cap that
/// satisfies the system for C = psi_A(B). nullopt means "not within caps".
inline std::optional<std::pair<std::uint64_t, std::uint64_t>> pell_witness_scan(const Integer& A, const Integer& B,
                                                                                const Integer& e, std::uint64_t i_cap,
                                                                                std::uint64_t j_cap) {
    if (A <= 1 || B <= 0) throw std::invalid_argument("Pell system needs A > 1 and B > 0");
    if (!B.fits_ulong_p()) throw std::invalid_argument("B too large to index the sequence");
    const Integer C = psi(A, B.get_ui());
    if (B > C) return std::nullopt;
    for (std::uint64_t i = 0; i <= i_cap; ++i) {
        const PellAux base = pell_aux(A, B, C, e, Integer(static_cast<unsigned long>(i)), 0);
        const Integer DF = base.D * base.F;
        for (std::uint64_t j = 0; j <= j_cap; ++j) {
            const Integer H = B + 2 * Integer(static_cast<unsigned long>(j)) * C;
            if (!divides(base.F, Integer(H - C))) continue;
            const Integer I = (base.G * base.G - 1) * H * H + 1;
            if (is_square(Integer(DF * I))) return std::make_pair(i, j);
        }
    }
    return std::nullopt;
}

struct SosHiddenUnknowns {
    Integer alpha, beta, gamma;
};

/// (DFI - alpha^2)^2 + (F beta - H + C)^2 (F beta + H - C)^2 + (B + gamma - C)^2
inline Integer pell_sos_eval(const PellAux& x, const SosHiddenUnknowns& h) {
    const Integer t1 = x.D * x.F * x.I - h.alpha * h.alpha;
    const Integer t2 = x.F * h.beta - x.H + x.C;
    const Integer t3 = x.F * h.beta + x.H - x.C;
    const Integer t4 = x.B + h.gamma - x.C;
    return t1 * t1 + t2 * t2 * t3 * t3 + t4 * t4;
}

inline Integer pell_sos_eval(const Integer& A, const Integer& B, const Integer& C, const Integer& e, const Integer& i,
                             const Integer& j, const SosHiddenUnknowns& h) {
    if (h.alpha < 0 || h.beta < 0 || h.gamma < 0) throw std::invalid_argument("hidden unknowns must be natural");
    return pell_sos_eval(pell_aux(A, B, C, e, i, j), h);
}

/// The hidden unknowns that zero the sum of squares when the system holds.
inline std::optional<SosHiddenUnknowns> pell_sos_witness(const PellAux& x) {
    if (!pell_condition_parts(x).all()) return std::nullopt;
    const Integer diff = abs(Integer(x.H - x.C));
    return SosHiddenUnknowns{isqrt(Integer(x.D * x.F * x.I)), Integer(diff / x.F), Integer(x.C - x.B)};
}

}  // namespace primepoly::pell
