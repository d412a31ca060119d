#pragma once

/**
 * @file expr_dag.hpp
 * @brief Arithmetic expression DAGs with shared subexpressions.
 *
 * Used for compositions whose expansion into a Polynomial is infeasible.
 * DagBuilder hash-conses nodes, so a structurally identical subterm is
 * stored once. ExprDag is an immutable compacted snapshot: nodes are in
 * topological order, every node is reachable, and the root is last.
 * Evaluation visits each node once.
 */

#include "primepoly/bigint.hpp"
#include "primepoly/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace primepoly {

using NodeId = std::uint32_t;

enum class Op : std::uint8_t { constant, variable, add, mul, neg, pow };

inline const char* op_name(Op op) {
    switch (op) {
        case Op::constant: return "const";
        case Op::variable: return "var";
        case Op::add: return "add";
        case Op::mul: return "mul";
        case Op::neg: return "neg";
        case Op::pow: return "pow";
    }
    return "?";
}

struct DagNode {
    Op op = Op::constant;
    std::vector<NodeId> args;
    Integer value;               // constant
    std::uint32_t index = 0;     // variable
    std::uint32_t exponent = 0;  // pow

    friend bool operator==(const DagNode& a, const DagNode& b) {
        return a.op == b.op && a.index == b.index && a.exponent == b.exponent && a.args == b.args &&
               a.value == b.value;
    }
};

class ExprDag {
 public:
    ExprDag() = default;
    ExprDag(std::vector<std::string> variables, std::vector<DagNode> nodes)
        : vars_(std::make_shared<const std::vector<std::string>>(std::move(variables))),
          nodes_(std::make_shared<const std::vector<DagNode>>(std::move(nodes))) {
        validate();
    }

    std::size_t arity() const noexcept { return vars_ ? vars_->size() : 0; }
    const std::vector<std::string>& variables() const { return *vars_; }
    const std::vector<DagNode>& nodes() const { return *nodes_; }
    std::size_t size() const noexcept { return nodes_ ? nodes_->size() : 0; }
    NodeId root() const { return static_cast<NodeId>(nodes_->size() - 1); }

    /// Exact evaluation; each shared node is computed once.
    template <class R>
    R evaluate(std::span<const R> point) const {
        return evaluate_all(point).back();
    }

    template <class R>
    R evaluate(const std::vector<R>& point) const {
        return evaluate(std::span<const R>(point));
    }

    /// Values of every node, indexed by NodeId.
    template <class R>
    std::vector<R> evaluate_all(std::span<const R> point) const {
        if (point.size() != arity()) throw ArityError("evaluation point length does not match DAG arity");
        const auto& ns = *nodes_;
        std::vector<R> val;
        val.reserve(ns.size());
        for (const auto& n : ns) {
            switch (n.op) {
                case Op::constant: val.push_back(RingTraits<R>::from_integer(n.value)); break;
                case Op::variable: val.push_back(point[n.index]); break;
                case Op::add: {
                    R s = val[n.args[0]];
                    for (std::size_t k = 1; k < n.args.size(); ++k) s += val[n.args[k]];
                    val.push_back(std::move(s));
                    break;
                }
                case Op::mul: {
                    R s = val[n.args[0]];
                    for (std::size_t k = 1; k < n.args.size(); ++k) s *= val[n.args[k]];
                    val.push_back(std::move(s));
                    break;
                }
                case Op::neg: val.push_back(R(-val[n.args[0]])); break;
                case Op::pow: val.push_back(ipow(val[n.args[0]], n.exponent)); break;
            }
        }
        return val;
    }

 private:
    void validate() const {
        const auto& ns = *nodes_;
        if (ns.empty()) throw std::invalid_argument("expression DAG has no nodes");
        for (std::size_t id = 0; id < ns.size(); ++id) {
            const auto& n = ns[id];
            for (auto c : n.args)
                if (c >= id) throw std::invalid_argument("DAG child index must precede its parent");
            switch (n.op) {
                case Op::constant:
                    if (!n.args.empty()) throw std::invalid_argument("constant node with children");
                    break;
                case Op::variable:
                    if (n.index >= arity()) throw std::invalid_argument("DAG variable index out of range");
                    break;
                case Op::add:
                case Op::mul:
                    if (n.args.empty()) throw std::invalid_argument("add/mul node without children");
                    break;
                case Op::neg:
                case Op::pow:
                    if (n.args.size() != 1) throw std::invalid_argument("neg/pow node needs one child");
                    break;
            }
        }
    }

    std::shared_ptr<const std::vector<std::string>> vars_;
    std::shared_ptr<const std::vector<DagNode>> nodes_;
};

class DagBuilder;

/// Lightweight handle to a node in a DagBuilder, with arithmetic operators.
class Expr {
 public:
    Expr() = default;
    Expr(DagBuilder* b, NodeId id) : b_(b), id_(id) {}
    NodeId id() const noexcept { return id_; }
    DagBuilder* builder() const noexcept { return b_; }

    friend Expr operator+(Expr a, Expr b);
    friend Expr operator-(Expr a, Expr b);
    friend Expr operator*(Expr a, Expr b);
    Expr operator-() const;

    friend Expr operator+(Expr a, const Integer& c);
    friend Expr operator+(const Integer& c, Expr a);
    friend Expr operator-(Expr a, const Integer& c);
    friend Expr operator-(const Integer& c, Expr a);
    friend Expr operator*(Expr a, const Integer& c);
    friend Expr operator*(const Integer& c, Expr a);

    template <std::integral I>
    friend Expr operator+(Expr a, I c) { return a + Integer(static_cast<long>(c)); }
    template <std::integral I>
    friend Expr operator+(I c, Expr a) { return a + Integer(static_cast<long>(c)); }
    template <std::integral I>
    friend Expr operator-(Expr a, I c) { return a - Integer(static_cast<long>(c)); }
    template <std::integral I>
    friend Expr operator-(I c, Expr a) { return Integer(static_cast<long>(c)) - a; }
    template <std::integral I>
    friend Expr operator*(Expr a, I c) { return a * Integer(static_cast<long>(c)); }
    template <std::integral I>
    friend Expr operator*(I c, Expr a) { return a * Integer(static_cast<long>(c)); }

    Expr& operator+=(Expr o) { return *this = *this + o; }
    Expr& operator*=(Expr o) { return *this = *this * o; }

 private:
    DagBuilder* b_ = nullptr;
    NodeId id_ = 0;
};

class DagBuilder {
 public:
    explicit DagBuilder(std::vector<std::string> variables = {}) : vars_(std::move(variables)) {}

    DagBuilder(const DagBuilder&) = default;
    DagBuilder& operator=(const DagBuilder&) = default;

    std::size_t arity() const noexcept { return vars_.size(); }
    const std::vector<std::string>& variables() const noexcept { return vars_; }
    std::size_t node_count() const noexcept { return nodes_.size(); }
    const DagNode& node(NodeId id) const { return nodes_.at(id); }

    std::size_t add_variable(std::string name) {
        if (std::find(vars_.begin(), vars_.end(), name) != vars_.end())
            throw std::invalid_argument("duplicate variable name '" + name + "'");
        vars_.push_back(std::move(name));
        return vars_.size() - 1;
    }

    std::size_t variable_index(const std::string& name) const {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end()) throw std::invalid_argument("unknown variable '" + name + "'");
        return static_cast<std::size_t>(it - vars_.begin());
    }

    NodeId constant(const Integer& c) {
        DagNode n;
        n.op = Op::constant;
        n.value = c;
        return intern(std::move(n));
    }

    NodeId variable(std::size_t index) {
        if (index >= vars_.size()) throw ArityError("DAG variable index out of range");
        DagNode n;
        n.op = Op::variable;
        n.index = static_cast<std::uint32_t>(index);
        return intern(std::move(n));
    }

    NodeId add(std::vector<NodeId> args) { return nary(Op::add, std::move(args)); }
    NodeId mul(std::vector<NodeId> args) { return nary(Op::mul, std::move(args)); }

    NodeId neg(NodeId a) {
        DagNode n;
        n.op = Op::neg;
        n.args = {a};
        return intern(std::move(n));
    }

    NodeId pow(NodeId a, std::uint32_t e) {
        if (e == 0) return constant(1);
        if (e == 1) return a;
        DagNode n;
        n.op = Op::pow;
        n.args = {a};
        n.exponent = e;
        return intern(std::move(n));
    }

    NodeId sub(NodeId a, NodeId b) { return add({a, neg(b)}); }

    /// Inserts a polynomial with its variables bound to the given slot nodes.
    NodeId polynomial(const Polynomial& p, std::span<const NodeId> slots) {
        if (slots.size() != p.arity()) throw ArityError("slot count does not match polynomial arity");
        if (p.is_zero()) return constant(0);
        std::vector<NodeId> summands;
        summands.reserve(p.size());
        for (const auto& t : p.terms()) {
            std::vector<NodeId> factors;
            if (t.coefficient != 1) factors.push_back(constant(t.coefficient));
            for (std::size_t k = 0; k < p.arity(); ++k)
                if (t.exponents[k] != 0) factors.push_back(pow(slots[k], t.exponents[k]));
            if (factors.empty()) factors.push_back(constant(1));
            summands.push_back(mul(std::move(factors)));
        }
        return add(std::move(summands));
    }

    Expr expr(NodeId id) { return Expr(this, id); }
    Expr var(const std::string& name) { return expr(variable(variable_index(name))); }
    Expr var(std::size_t index) { return expr(variable(index)); }
    Expr lit(const Integer& c) { return expr(constant(c)); }

    /// Compacted immutable copy of the subgraph reachable from root.
    ExprDag snapshot(NodeId root) const {
        std::vector<char> live(nodes_.size(), 0);
        live.at(root) = 1;
        for (std::size_t k = root + 1; k-- > 0;) {
            if (!live[k]) continue;
            for (auto c : nodes_[k].args) live[c] = 1;
        }
        std::vector<NodeId> remap(nodes_.size(), 0);
        std::vector<DagNode> out;
        for (std::size_t k = 0; k <= root; ++k) {
            if (!live[k]) continue;
            DagNode n = nodes_[k];
            for (auto& c : n.args) c = remap[c];
            remap[k] = static_cast<NodeId>(out.size());
            out.push_back(std::move(n));
        }
        return ExprDag(vars_, std::move(out));
    }

    ExprDag snapshot(Expr root) const { return snapshot(root.id()); }

    /// Immutable copy of every node with ids preserved (root = last node).
    ExprDag freeze() const {
        if (nodes_.empty()) throw std::logic_error("cannot freeze an empty DAG");
        return ExprDag(vars_, nodes_);
    }

 private:
    NodeId nary(Op op, std::vector<NodeId> args) {
        if (args.empty()) return constant(op == Op::add ? 0 : 1);
        if (args.size() == 1) return args.front();
        DagNode n;
        n.op = op;
        n.args = std::move(args);
        return intern(std::move(n));
    }

    static std::size_t hash_node(const DagNode& n) {
        std::size_t h = static_cast<std::size_t>(n.op) * 0x100000001b3ull;
        auto mix = [&h](std::size_t x) { h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
        mix(n.index);
        mix(n.exponent);
        for (auto c : n.args) mix(c);
        if (n.op == Op::constant) mix(static_cast<std::size_t>(low64(n.value)) ^ static_cast<std::size_t>(sgn(n.value) + 1));
        return h;
    }

    NodeId intern(DagNode n) {
        for (auto c : n.args)
            if (c >= nodes_.size()) throw std::invalid_argument("DAG child does not exist");
        const auto h = hash_node(n);
        auto& bucket = index_[h];
        for (auto id : bucket)
            if (nodes_[id] == n) return id;
        const auto id = static_cast<NodeId>(nodes_.size());
        nodes_.push_back(std::move(n));
        bucket.push_back(id);
        return id;
    }

    std::vector<std::string> vars_;
    std::vector<DagNode> nodes_;
    std::unordered_map<std::size_t, std::vector<NodeId>> index_;
};

inline Expr operator+(Expr a, Expr b) { return a.b_->expr(a.b_->add({a.id_, b.id_})); }
inline Expr operator-(Expr a, Expr b) { return a.b_->expr(a.b_->sub(a.id_, b.id_)); }
inline Expr operator*(Expr a, Expr b) { return a.b_->expr(a.b_->mul({a.id_, b.id_})); }
inline Expr Expr::operator-() const { return b_->expr(b_->neg(id_)); }
inline Expr operator+(Expr a, const Integer& c) { return a + a.b_->lit(c); }
inline Expr operator+(const Integer& c, Expr a) { return a.b_->lit(c) + a; }
inline Expr operator-(Expr a, const Integer& c) { return a - a.b_->lit(c); }
inline Expr operator-(const Integer& c, Expr a) { return a.b_->lit(c) - a; }
inline Expr operator*(Expr a, const Integer& c) { return a * a.b_->lit(c); }
inline Expr operator*(const Integer& c, Expr a) { return a.b_->lit(c) * a; }

inline Expr pow(Expr a, std::uint32_t e) { return a.builder()->expr(a.builder()->pow(a.id(), e)); }

/// Wraps a polynomial as a DAG over its own variable names.
inline ExprDag to_dag(const Polynomial& p, std::vector<std::string> names) {
    if (names.size() != p.arity()) throw ArityError("name count does not match polynomial arity");
    DagBuilder b(std::move(names));
    std::vector<NodeId> slots;
    for (std::size_t k = 0; k < p.arity(); ++k) slots.push_back(b.variable(k));
    return b.snapshot(b.polynomial(p, slots));
}

/// Sound total-degree upper bound: max over sums, sum over products.
inline std::uint64_t dag_degree_upper_bound(const ExprDag& d) {
    std::vector<std::uint64_t> deg;
    deg.reserve(d.size());
    for (const auto& n : d.nodes()) {
        switch (n.op) {
            case Op::constant: deg.push_back(0); break;
            case Op::variable: deg.push_back(1); break;
            case Op::add: {
                std::uint64_t m = 0;
                for (auto c : n.args) m = std::max(m, deg[c]);
                deg.push_back(m);
                break;
            }
            case Op::mul: {
                std::uint64_t s = 0;
                for (auto c : n.args) s += deg[c];
                deg.push_back(s);
                break;
            }
            case Op::neg: deg.push_back(deg[n.args[0]]); break;
            case Op::pow: deg.push_back(deg[n.args[0]] * n.exponent); break;
        }
    }
    return deg.back();
}

/// Full expansion; throws BudgetExceeded once any intermediate result would
/// exceed term_budget distinct terms.
inline Polynomial dag_expand(const ExprDag& d, std::size_t term_budget) {
    const std::size_t arity = d.arity();
    std::vector<Polynomial> val;
    val.reserve(d.size());
    auto check = [term_budget](const Polynomial& p) {
        if (term_budget != 0 && p.size() > term_budget)
            throw BudgetExceeded("term budget of " + std::to_string(term_budget) + " exceeded");
    };
    for (const auto& n : d.nodes()) {
        switch (n.op) {
            case Op::constant: val.push_back(Polynomial::constant(arity, n.value)); break;
            case Op::variable: val.push_back(Polynomial::variable(arity, n.index)); break;
            case Op::add: {
                Polynomial s = val[n.args[0]];
                for (std::size_t k = 1; k < n.args.size(); ++k) {
                    s += val[n.args[k]];
                    check(s);
                }
                val.push_back(std::move(s));
                break;
            }
            case Op::mul: {
                Polynomial s = val[n.args[0]];
                for (std::size_t k = 1; k < n.args.size(); ++k) s = Polynomial::multiply(s, val[n.args[k]], term_budget);
                val.push_back(std::move(s));
                break;
            }
            case Op::neg: val.push_back(-val[n.args[0]]); break;
            case Op::pow: val.push_back(pow(val[n.args[0]], n.exponent, term_budget)); break;
        }
        check(val.back());
    }
    return std::move(val.back());
}

/// log2|v| for v != 0, accurate to double precision.
inline double log2_abs(const Integer& v) {
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
    return static_cast<double>(exp) + std::log2(std::fabs(mant));
}

/// Degree of the univariate restriction t -> d(t*ray), estimated from the
/// growth of |d| between t1 and t2. Throws std::domain_error when d
/// vanishes at either ray point.
inline std::uint64_t dag_growth_degree_estimate(const ExprDag& d, std::span<const Integer> ray, const Integer& t1,
                                                const Integer& t2) {
    if (!(t1 >= 2 && t2 > t1)) throw std::invalid_argument("growth estimate needs t2 > t1 >= 2");
    if (ray.size() != d.arity()) throw ArityError("ray length does not match DAG arity");
    auto at = [&](const Integer& t) {
        std::vector<Integer> point;
        point.reserve(ray.size());
        for (const auto& r : ray) point.push_back(r * t);
        return d.evaluate(std::span<const Integer>(point));
    };
    const Integer v1 = at(t1);
    const Integer v2 = at(t2);
    if (sgn(v1) == 0 || sgn(v2) == 0) throw std::domain_error("DAG vanishes on the ray; choose another ray");
    const double slope = (log2_abs(v2) - log2_abs(v1)) / (log2_abs(t2) - log2_abs(t1));
    return slope <= 0 ? 0 : static_cast<std::uint64_t>(std::llround(slope));
}

}  // namespace primepoly
