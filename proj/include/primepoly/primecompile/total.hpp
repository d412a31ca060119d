#pragma once

/**
 * @file total.hpp
 * @brief Auxiliary definitions and the five-condition characterisation of
 *        primes over the base unknowns k, f, i, j, m, u, r, s, t.
 *
 * The divisibility condition references a symbol Z that the auxiliary list
 * leaves undefined. It is a configuration value: an auxiliary or base name,
 * or an integer literal. The default is L.
 */

#include "primepoly/bigint.hpp"
#include "primepoly/expr_dag.hpp"
#include "primepoly/primecompile/relation.hpp"

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace primepoly::compile {

inline constexpr std::string_view default_z_choice = "L";

inline const std::vector<std::string>& base_names() {
    static const std::vector<std::string> names{"k", "f", "i", "j", "m", "u", "r", "s", "t"};
    return names;
}

template <class Val>
struct Aux {
    Val k, f, i, j, m, u, r, s, t;
    Val W, U, M, S, T, Q, L, A, B, C, D, E, F, G, H, I;

    const Val* find(std::string_view name) const {
        static constexpr std::array<std::string_view, 25> names{"k", "f", "i", "j", "m", "u", "r", "s", "t",
                                                               "W", "U", "M", "S", "T", "Q", "L", "A", "B",
                                                               "C", "D", "E", "F", "G", "H", "I"};
        const std::array<const Val*, 25> vals{&k, &f, &i, &j, &m, &u, &r, &s, &t, &W, &U, &M, &S,
                                              &T, &Q, &L, &A, &B, &C, &D, &E, &F, &G, &H, &I};
        for (std::size_t n = 0; n < names.size(); ++n)
            if (names[n] == name) return vals[n];
        return nullptr;
    }
};

/// Derived values in dependency order W, U, M, S, T, Q, L, A, ..., I.
template <class Val>
Aux<Val> make_aux(const Val& k, const Val& f, const Val& i, const Val& j, const Val& m, const Val& u, const Val& r,
                  const Val& s, const Val& t) {
    Aux<Val> x{k, f, i, j, m, u, r, s, t, k, k, k, k, k, k, k, k, k, k, k, k, k, k, k, k};
    x.W = Val(100 * f * k * (k + 1));
    x.U = Val(100 * u * u * u * x.W * x.W * x.W + 1);
    x.M = Val(100 * m * x.U * x.W + 1);
    x.S = Val((x.M - 1) * s + k + 1);
    x.T = Val((x.M * x.U - 1) * t + x.W - k + 1);
    x.Q = Val(2 * x.M * x.W - x.W * x.W - 1);
    x.L = Val((k + 1) * x.Q);
    x.A = Val(x.M * (x.U + 1));
    x.B = Val(x.W + 1);
    x.C = Val(r + x.W + 1);
    const Val a2 = Val(x.A * x.A - 1);
    x.D = Val(a2 * x.C * x.C + 1);
    x.E = Val(2 * i * x.C * x.C * x.L * x.D);
    x.F = Val(a2 * x.E * x.E + 1);
    x.G = Val(x.A + x.F * (x.F - x.A));
    x.H = Val(x.B + 2 * (j - 1) * x.C);
    x.I = Val((x.G * x.G - 1) * x.H * x.H + 1);
    return x;
}

struct TotalBase {
    Integer k, f, i, j, m, u, r, s, t;

    std::vector<Integer> values() const { return {k, f, i, j, m, u, r, s, t}; }
    static TotalBase from_values(std::span<const Integer> v) {
        if (v.size() != 9) throw ArityError("base needs 9 values");
        return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8]};
    }
};

using AuxAssignment = Aux<Integer>;

inline bool base_ranges_ok(const TotalBase& b) {
    return b.f >= 1 && b.i >= 1 && b.j >= 1 && b.m >= 1 && b.u >= 1 && b.k >= 0 && b.r >= 0 && b.s >= 0 &&
           b.t >= 0;
}

inline AuxAssignment total_aux_unchecked(const TotalBase& b) {
    return make_aux<Integer>(b.k, b.f, b.i, b.j, b.m, b.u, b.r, b.s, b.t);
}

inline AuxAssignment total_aux(const TotalBase& b) {
    if (!base_ranges_ok(b)) throw std::invalid_argument("base needs f,i,j,m,u >= 1 and k,r,s,t >= 0");
    return total_aux_unchecked(b);
}

/// Z as a named base/auxiliary value or an integer literal.
template <class Val>
Val resolve_z(const Aux<Val>& x, const std::string& z, const std::function<Val(const Integer&)>& lit) {
    if (const Val* v = x.find(z)) return *v;
    try {
        return lit(parse_integer(z));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("unknown Z choice '" + z + "'");
    }
}

inline bool valid_z_choice(const std::string& z) {
    Aux<int> probe{};
    if (probe.find(z)) return true;
    try {
        parse_integer(z);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

/// The expressions appearing in the five conditions and the two substitutions.
template <class Val>
struct TotalExprs {
    Val dfi, x1, x2;
    Val ineq_lhs, ineq_rhs;
    Val div_a, div_b;
    Val v_sub, n_sub;
};

template <class Val>
TotalExprs<Val> total_exprs(const Aux<Val>& x, const Val& Z) {
    const Val MU = Val(x.M * x.U);
    const Val g = Val(x.r - x.m * x.S * x.T * x.U);
    const Val W2 = Val(x.W * x.W);
    TotalExprs<Val> e{x.k, x.k, x.k, x.k, x.k, x.k, x.k, x.k, x.k};
    e.dfi = Val(x.D * x.F * x.I);
    e.x1 = Val((x.M * x.M - 1) * x.S * x.S + 1);
    e.x2 = Val((MU * MU - 1) * x.T * x.T + 1);
    e.ineq_lhs = Val((4 * x.f * x.f - 1) * g * g + 4 * x.u * x.u * x.S * x.S * x.T * x.T);
    e.ineq_rhs = Val(8 * x.f * x.u * x.S * x.T * g);
    e.div_a = Val(x.F * x.L);
    e.div_b = Val((x.H - x.C) * Z + x.F * (x.f + 1) * x.Q + x.F * (x.k + 1) * ((W2 - 1) * x.S * x.u - W2 * x.u * x.u + 1));
    e.v_sub = Val(e.ineq_rhs - e.ineq_lhs - 1);
    e.n_sub = Val(x.M * x.S + 2 * x.M * x.U * x.T + 4 * x.A * x.A * x.C * x.E * x.G * x.H +
                  2 * (x.H * x.L + x.F * x.f * x.Q + x.F * x.k * (W2 * x.S * x.u + W2 * x.u * x.u)));
    return e;
}

struct ConditionReport {
    bool ranges_ok = false;
    bool dfi_square = false;
    bool x1_square = false;
    bool x2_square = false;
    bool inequality = false;
    bool divisibility = false;
    bool overall = false;
    std::string z_choice;

    std::vector<std::string> failed() const {
        std::vector<std::string> out;
        if (!ranges_ok) out.push_back("ranges");
        if (!dfi_square) out.push_back("DFI square");
        if (!x1_square) out.push_back("(M^2-1)S^2+1 square");
        if (!x2_square) out.push_back("((MU)^2-1)T^2+1 square");
        if (!inequality) out.push_back("inequality");
        if (!divisibility) out.push_back("divisibility");
        return out;
    }
};

inline ConditionReport total_conditions(const TotalBase& b, const std::string& z = std::string(default_z_choice)) {
    for (const auto& v : b.values())
        if (v < 0) throw std::invalid_argument("base values must be natural");
    const AuxAssignment x = total_aux_unchecked(b);
    const Integer Z = resolve_z<Integer>(x, z, [](const Integer& c) { return c; });
    const auto e = total_exprs(x, Z);
    ConditionReport rep;
    rep.z_choice = z;
    rep.ranges_ok = base_ranges_ok(b);
    rep.dfi_square = is_square(e.dfi);
    rep.x1_square = is_square(e.x1);
    rep.x2_square = is_square(e.x2);
    rep.inequality = e.ineq_lhs < e.ineq_rhs;
    rep.divisibility = divides(e.div_a, e.div_b);
    rep.overall = rep.ranges_ok && rep.dfi_square && rep.x1_square && rep.x2_square && rep.inequality && rep.divisibility;
    return rep;
}

inline Integer v_substitution(const TotalBase& b, const std::string& z = std::string(default_z_choice)) {
    const AuxAssignment x = total_aux_unchecked(b);
    return total_exprs(x, resolve_z<Integer>(x, z, [](const Integer& c) { return c; })).v_sub;
}

/// The five conditions as a relation system over the nine base variables.
inline RelationSystem total_relation_system(const std::string& z = std::string(default_z_choice)) {
    RelationSystem sys(base_names());
    std::vector<Expr> v;
    for (std::size_t n = 0; n < 9; ++n) v.push_back(sys.var(n));
    DagBuilder& b = sys.builder();
    const Aux<Expr> x = make_aux<Expr>(v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8]);
    const auto e = total_exprs(x, resolve_z<Expr>(x, z, [&b](const Integer& c) { return b.lit(c); }));
    sys.add(Relation::is_square(e.dfi));
    sys.add(Relation::is_square(e.x1));
    sys.add(Relation::is_square(e.x2));
    sys.add(Relation::lt(e.ineq_lhs, e.ineq_rhs));
    sys.add(Relation::divides(e.div_a, e.div_b, DivisorSign::any));
    return sys;
}

}  // namespace primepoly::compile
