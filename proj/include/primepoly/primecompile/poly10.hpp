#pragma once

/**
 * @file poly10.hpp
 * @brief The 10-variable prime-representing polynomial: K with its eight
 *        slots filled by the auxiliary expressions over k, f, i, j, m, u,
 *        r, s, t and the free unknown y. Kept as an expression DAG.
 */

#include "primepoly/bigint.hpp"
#include "primepoly/expr_dag.hpp"
#include "primepoly/kpoly.hpp"
#include "primepoly/primecompile/total.hpp"

#include <json.hpp>

#include <array>
#include <span>
#include <string>
#include <vector>

namespace primepoly::compile {

inline const std::vector<std::string>& poly10_names() {
    static const std::vector<std::string> names{"k", "f", "i", "j", "m", "u", "r", "s", "t", "y"};
    return names;
}

struct Poly10 {
    ExprDag dag;
    std::string z_choice;

    nlohmann::ordered_json header() const {
        nlohmann::ordered_json h;
        h["target"] = "poly10";
        h["z_choice"] = z_choice;
        h["slots"] = {"y", "x1", "x2", "x3", "p_slot", "r_slot", "n_slot", "v_slot"};
        return h;
    }
};

/// Slot values of K in order (y, x1, x2, x3, p_slot, r_slot, n_slot, v_slot).
template <class Val>
std::array<Val, 8> poly10_slots(const Aux<Val>& x, const Val& y, const Val& Z) {
    const auto e = total_exprs(x, Z);
    return {y, e.x1, e.x2, e.dfi, e.div_a, e.div_b, e.n_sub, e.v_sub};
}

inline Poly10 build_poly10(const std::string& z = std::string(default_z_choice)) {
    DagBuilder b(poly10_names());
    std::vector<Expr> v;
    for (std::size_t n = 0; n < 10; ++n) v.push_back(b.var(n));
    const Aux<Expr> x = make_aux<Expr>(v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8]);
    const Expr Z = resolve_z<Expr>(x, z, [&b](const Integer& c) { return b.lit(c); });
    const auto slots = poly10_slots(x, v[9], Z);
    std::vector<NodeId> ids;
    for (const auto& s : slots) ids.push_back(s.id());
    return {b.snapshot(b.polynomial(kpoly::K(), ids)), z};
}

/// Staged oracle: slot values from integer auxiliaries, then K evaluated on them.
inline Integer poly10_staged_eval(std::span<const Integer> point, const std::string& z = std::string(default_z_choice)) {
    if (point.size() != 10) throw ArityError("poly10 needs 10 values");
    const AuxAssignment x = total_aux_unchecked(TotalBase::from_values(point.first(9)));
    const Integer Z = resolve_z<Integer>(x, z, [](const Integer& c) { return c; });
    const auto slots = poly10_slots(x, point[9], Z);
    return kpoly::K().evaluate(std::span<const Integer>(slots.data(), slots.size()));
}

}  // namespace primepoly::compile
