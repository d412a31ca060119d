#pragma once

/**
 * @file relation.hpp
 * @brief Diophantine relations over a shared variable list and their
 *        compilation into one sum-of-squares polynomial.
 *
 * Each relation is encoded with at most one natural unknown x:
 *   PolyEq(P)            P
 *   Divides(a, b)        a x - b                  (natural form)
 *                        (a x - b)(a x + b)       (signed form)
 *   Congruent(a, b, c)   (a - b - c x)(b - a - c x)
 *   Leq(a, b)            b - a - x
 *   Lt(a, b)             b - a - 1 - x
 *   IsSquare(e)          x^2 - e
 * and the conjunction is the sum of the squared encodings.
 */

#include "primepoly/bigint.hpp"
#include "primepoly/expr_dag.hpp"
#include "primepoly/polynomial.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace primepoly::compile {

enum class RelationKind { poly_eq, divides, congruent, leq, lt, is_square };

inline const char* relation_name(RelationKind k) {
    switch (k) {
        case RelationKind::poly_eq: return "PolyEq";
        case RelationKind::divides: return "Divides";
        case RelationKind::congruent: return "Congruent";
        case RelationKind::leq: return "Leq";
        case RelationKind::lt: return "Lt";
        case RelationKind::is_square: return "IsSquare";
    }
    return "?";
}

/// Natural: a | b with a nonnegative quotient. Any: a | b over the integers.
enum class DivisorSign { natural, any };

struct Relation {
    RelationKind kind = RelationKind::poly_eq;
    std::vector<NodeId> args;
    DivisorSign sign = DivisorSign::natural;

    static Relation poly_eq(Expr p) { return {RelationKind::poly_eq, {p.id()}}; }
    static Relation divides(Expr a, Expr b, DivisorSign s = DivisorSign::natural) {
        return {RelationKind::divides, {a.id(), b.id()}, s};
    }
    static Relation congruent(Expr a, Expr b, Expr m) { return {RelationKind::congruent, {a.id(), b.id(), m.id()}}; }
    static Relation leq(Expr a, Expr b) { return {RelationKind::leq, {a.id(), b.id()}}; }
    static Relation lt(Expr a, Expr b) { return {RelationKind::lt, {a.id(), b.id()}}; }
    static Relation is_square(Expr e) { return {RelationKind::is_square, {e.id()}}; }

    bool introduces_unknown() const noexcept { return kind != RelationKind::poly_eq; }
};

/// Truth of a relation given the values of its arguments.
inline bool relation_holds(const Relation& rel, std::span<const Integer> v) {
    switch (rel.kind) {
        case RelationKind::poly_eq: return sgn(v[0]) == 0;
        case RelationKind::divides:
            if (!divides(v[0], v[1])) return false;
            if (rel.sign == DivisorSign::any || sgn(v[0]) == 0) return true;
            return sgn(v[0]) * sgn(v[1]) >= 0;
        case RelationKind::congruent: return divides(v[2], Integer(v[0] - v[1]));
        case RelationKind::leq: return v[0] <= v[1];
        case RelationKind::lt: return v[0] < v[1];
        case RelationKind::is_square: return is_square(v[0]);
    }
    return false;
}

/// The natural unknown that zeroes the encoding when the relation holds.
inline std::optional<Integer> canonical_witness(const Relation& rel, std::span<const Integer> v) {
    if (!relation_holds(rel, v)) return std::nullopt;
    switch (rel.kind) {
        case RelationKind::poly_eq: return std::nullopt;
        case RelationKind::divides:
            if (sgn(v[0]) == 0) return Integer(0);
            return Integer(abs(v[1]) / abs(v[0]));
        case RelationKind::congruent:
            if (sgn(v[2]) == 0) return Integer(0);
            return Integer(abs(Integer(v[0] - v[1])) / abs(v[2]));
        case RelationKind::leq: return Integer(v[1] - v[0]);
        case RelationKind::lt: return Integer(v[1] - v[0] - 1);
        case RelationKind::is_square: return isqrt(v[0]);
    }
    return std::nullopt;
}

/// Relations whose expressions live in one DAG over one variable list.
class RelationSystem {
 public:
    explicit RelationSystem(std::vector<std::string> vars) : builder_(std::move(vars)) {}

    DagBuilder& builder() noexcept { return builder_; }
    const DagBuilder& builder() const noexcept { return builder_; }
    const std::vector<std::string>& variables() const noexcept { return builder_.variables(); }

    Expr var(const std::string& name) { return builder_.var(name); }
    Expr var(std::size_t index) { return builder_.var(index); }

    /// Inserts a polynomial over the system variables.
    Expr poly(const Polynomial& p) {
        if (p.arity() != builder_.arity()) throw ArityError("polynomial arity does not match the relation system");
        std::vector<NodeId> slots;
        for (std::size_t k = 0; k < p.arity(); ++k) slots.push_back(builder_.variable(k));
        return builder_.expr(builder_.polynomial(p, slots));
    }

    void add(Relation r) {
        for (auto a : r.args)
            if (a >= builder_.node_count()) throw std::invalid_argument("relation argument is not in this system");
        relations_.push_back(std::move(r));
    }

    const std::vector<Relation>& relations() const noexcept { return relations_; }

    /// Argument values of every relation at a point of the source variables.
    std::vector<std::vector<Integer>> argument_values(std::span<const Integer> point) const {
        const auto all = builder_.freeze().evaluate_all(point);
        std::vector<std::vector<Integer>> out;
        for (const auto& r : relations_) {
            std::vector<Integer> v;
            for (auto a : r.args) v.push_back(all[a]);
            out.push_back(std::move(v));
        }
        return out;
    }

    std::vector<bool> holds(std::span<const Integer> point) const {
        std::vector<bool> out;
        for (std::size_t k = 0; const auto& v : argument_values(point)) out.push_back(relation_holds(relations_[k++], v));
        return out;
    }

    /// Source point extended by canonical witnesses; nullopt if a relation fails.
    std::optional<std::vector<Integer>> witness_point(std::span<const Integer> point) const {
        std::vector<Integer> ext(point.begin(), point.end());
        for (std::size_t k = 0; const auto& v : argument_values(point)) {
            const auto& r = relations_[k++];
            if (!relation_holds(r, v)) return std::nullopt;
            if (r.introduces_unknown()) ext.push_back(*canonical_witness(r, v));
        }
        return ext;
    }

 private:
    DagBuilder builder_;
    std::vector<Relation> relations_;
};

struct CompileOptions {
    bool expand = true;
    std::size_t term_budget = 200000;
};

struct CompiledSystem {
    ExprDag dag;
    std::optional<Polynomial> poly;
    std::vector<std::string> variables;
    std::vector<std::string> introduced_unknowns;
    std::size_t source_variables = 0;
    std::size_t total_variables = 0;
};

namespace detail {
inline std::string fresh_unknown(std::size_t k, const std::vector<std::string>& taken) {
    std::string prefix;
    for (;;) {
        std::string name = prefix + "x" + std::to_string(k);
        if (std::find(taken.begin(), taken.end(), name) == taken.end()) return name;
        prefix += "_";
    }
}
}  // namespace detail

inline CompiledSystem compile(const RelationSystem& sys, const CompileOptions& opt = {}) {
    if (sys.relations().empty()) throw std::invalid_argument("cannot compile an empty relation list");
    const std::size_t n = sys.variables().size();
    std::vector<std::string> vars = sys.variables();
    std::vector<std::string> introduced;
    for (const auto& r : sys.relations()) {
        if (!r.introduces_unknown()) continue;
        introduced.push_back(detail::fresh_unknown(introduced.size(), vars));
        vars.push_back(introduced.back());
    }

    // Copy the source nodes into a builder that also knows the new unknowns.
    DagBuilder b(vars);
    std::vector<NodeId> map;
    const DagBuilder& src = sys.builder();
    for (NodeId id = 0; id < src.node_count(); ++id) {
        const DagNode& node = src.node(id);
        std::vector<NodeId> args;
        for (auto c : node.args) args.push_back(map[c]);
        switch (node.op) {
            case Op::constant: map.push_back(b.constant(node.value)); break;
            case Op::variable: map.push_back(b.variable(node.index)); break;
            case Op::add: map.push_back(b.add(std::move(args))); break;
            case Op::mul: map.push_back(b.mul(std::move(args))); break;
            case Op::neg: map.push_back(b.neg(args[0])); break;
            case Op::pow: map.push_back(b.pow(args[0], node.exponent)); break;
        }
    }

    std::vector<NodeId> squares;
    std::size_t next = n;
    for (const auto& r : sys.relations()) {
        auto arg = [&](std::size_t k) { return b.expr(map[r.args[k]]); };
        Expr enc = b.lit(0);
        if (r.kind == RelationKind::poly_eq) {
            enc = arg(0);
        } else {
            const Expr x = b.var(next++);
            switch (r.kind) {
                case RelationKind::divides:
                    enc = r.sign == DivisorSign::natural ? arg(0) * x - arg(1)
                                                         : (arg(0) * x - arg(1)) * (arg(0) * x + arg(1));
                    break;
                case RelationKind::congruent:
                    enc = (arg(0) - arg(1) - arg(2) * x) * (arg(1) - arg(0) - arg(2) * x);
                    break;
                case RelationKind::leq: enc = arg(1) - arg(0) - x; break;
                case RelationKind::lt: enc = arg(1) - arg(0) - 1 - x; break;
                case RelationKind::is_square: enc = x * x - arg(0); break;
                case RelationKind::poly_eq: break;
            }
        }
        squares.push_back(pow(enc, 2).id());
    }

    CompiledSystem out{b.snapshot(b.add(std::move(squares))), std::nullopt, vars, introduced, n, vars.size()};
    if (opt.expand) {
        try {
            out.poly = dag_expand(out.dag, opt.term_budget);
        } catch (const BudgetExceeded&) {
            out.poly = std::nullopt;
        }
    }
    return out;
}

}  // namespace primepoly::compile
