#pragma once

/**
 * @file poly_io.hpp
 * @brief JSON and text formats for polynomials, expression DAGs and
 *        variable assignments.
 *
 * Polynomial JSON:
 *   {"vars":["x","y"],"terms":[{"c":"1","e":[2,0]},{"c":"-1","e":[0,2]}]}
 * Coefficients are decimal strings. Output is always in canonical term
 * order; input order is free (duplicates are merged).
 *
 * Polynomial text: a signed list of monomials such as "3*x^2*y - y^2 + 7".
 *
 * DAG JSON:
 *   {"format":"primepoly-dag","vars":[...],"header":{...},
 *    "nodes":[{"op":"const","value":"5"},{"op":"var","index":0},
 *             {"op":"add","args":[0,1]},{"op":"pow","args":[2],"exp":3},...],
 *    "root":3}
 *
 * Assignment files: one "name=decimal" per line; blank lines and lines
 * starting with '#' are ignored.
 */

#include "primepoly/bigint.hpp"
#include "primepoly/expr_dag.hpp"
#include "primepoly/polynomial.hpp"

#include <json.hpp>

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace primepoly {

using ordered_json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
 public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

 private:
    std::size_t line_;
    std::size_t column_;
};

struct NamedPolynomial {
    std::vector<std::string> vars;
    Polynomial poly;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

inline ordered_json parse_json_document(std::string_view text) {
    try {
        return ordered_json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError(std::string("malformed JSON: ") + e.what(), line, col);
    }
}

inline bool valid_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char ch : s)
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) return false;
    return true;
}

inline std::vector<std::string> read_var_list(const ordered_json& doc) {
    if (!doc.is_object() || !doc.contains("vars") || !doc["vars"].is_array())
        throw ParseError("document needs a \"vars\" array", 1, 1);
    std::vector<std::string> vars;
    std::unordered_set<std::string> seen;
    for (const auto& v : doc["vars"]) {
        if (!v.is_string()) throw ParseError("variable names must be strings", 1, 1);
        auto name = v.get<std::string>();
        if (!seen.insert(name).second) throw ParseError("duplicate variable '" + name + "'", 1, 1);
        vars.push_back(std::move(name));
    }
    return vars;
}

inline Integer read_decimal(const ordered_json& v, const std::string& where) {
    if (!v.is_string()) throw ParseError(where + ": coefficient must be a decimal string", 1, 1);
    try {
        return parse_integer(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what(), 1, 1);
    }
}

}  // namespace detail

// ---------------------------------------------------------------- JSON ---

inline ordered_json polynomial_to_json(const Polynomial& p, const std::vector<std::string>& vars) {
    if (vars.size() != p.arity()) throw ArityError("name count does not match polynomial arity");
    ordered_json doc;
    doc["vars"] = vars;
    ordered_json terms = ordered_json::array();
    for (const auto& t : p.terms()) {
        ordered_json term;
        term["c"] = to_string(t.coefficient);
        term["e"] = t.exponents;
        terms.push_back(std::move(term));
    }
    doc["terms"] = std::move(terms);
    return doc;
}

inline std::string serialize_json(const Polynomial& p, const std::vector<std::string>& vars) {
    return polynomial_to_json(p, vars).dump();
}

inline NamedPolynomial polynomial_from_json(const ordered_json& doc) {
    auto vars = detail::read_var_list(doc);
    if (!doc.contains("terms") || !doc["terms"].is_array()) throw ParseError("document needs a \"terms\" array", 1, 1);
    std::vector<Monomial> terms;
    std::size_t k = 0;
    for (const auto& t : doc["terms"]) {
        const std::string where = "term " + std::to_string(k++);
        if (!t.is_object() || !t.contains("c") || !t.contains("e"))
            throw ParseError(where + ": expected {\"c\":..., \"e\":[...]}", 1, 1);
        Monomial m;
        m.coefficient = detail::read_decimal(t["c"], where);
        const auto& e = t["e"];
        if (!e.is_array() || e.size() != vars.size())
            throw ParseError(where + ": exponent array must have one entry per variable", 1, 1);
        for (const auto& x : e) {
            if (!x.is_number_unsigned()) throw ParseError(where + ": exponents must be natural numbers", 1, 1);
            m.exponents.push_back(x.get<std::uint32_t>());
        }
        terms.push_back(std::move(m));
    }
    const auto arity = vars.size();
    return {std::move(vars), Polynomial::from_terms(arity, std::move(terms))};
}

inline NamedPolynomial parse_json(std::string_view text) { return polynomial_from_json(detail::parse_json_document(text)); }

// ---------------------------------------------------------------- text ---

inline std::string serialize_text(const Polynomial& p, const std::vector<std::string>& vars) {
    if (vars.size() != p.arity()) throw ArityError("name count does not match polynomial arity");
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : p.terms()) {
        const bool negative = sgn(t.coefficient) < 0;
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        const Integer mag = abs(t.coefficient);
        bool wrote = false;
        if (mag != 1 || exponent_sum(t.exponents) == 0) {
            out += to_string(mag);
            wrote = true;
        }
        for (std::size_t k = 0; k < vars.size(); ++k) {
            if (t.exponents[k] == 0) continue;
            if (wrote) out += "*";
            out += vars[k];
            if (t.exponents[k] != 1) out += "^" + std::to_string(t.exponents[k]);
            wrote = true;
        }
    }
    return out;
}

/// Parses the text format. When `vars` is empty the variable list is taken
/// in order of first appearance.
inline NamedPolynomial parse_text(std::string_view text, std::vector<std::string> vars = {}) {
    const bool infer = vars.empty();
    std::size_t pos = 0;
    auto fail = [&](const std::string& msg) -> ParseError {
        const auto [line, col] = detail::line_col(text, pos);
        return ParseError(msg, line, col);
    };
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto read_number = [&]() -> std::string {
        const std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw fail("expected a number");
        return std::string(text.substr(start, pos - start));
    };
    auto var_index = [&](const std::string& name) -> std::size_t {
        for (std::size_t k = 0; k < vars.size(); ++k)
            if (vars[k] == name) return k;
        if (!infer) throw fail("unknown variable '" + name + "'");
        vars.push_back(name);
        return vars.size() - 1;
    };

    struct RawTerm {
        Integer coef;
        std::vector<std::pair<std::size_t, std::uint32_t>> powers;
    };
    std::vector<RawTerm> raw;

    skip_ws();
    if (pos == text.size()) throw fail("empty polynomial text");
    bool first = true;
    while (true) {
        skip_ws();
        if (pos == text.size()) break;
        int sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
            skip_ws();
        } else if (!first) {
            throw fail("expected '+' or '-'");
        }
        first = false;
        RawTerm term{Integer(sign), {}};
        bool need_factor = true;
        while (need_factor) {
            skip_ws();
            if (pos == text.size()) throw fail("expected a factor");
            const char ch = text[pos];
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                term.coef *= Integer(read_number(), 10);
            } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
                const std::size_t start = pos;
                while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
                const std::string name(text.substr(start, pos - start));
                std::uint32_t e = 1;
                skip_ws();
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    skip_ws();
                    const auto digits = read_number();
                    if (digits.size() > 9) throw fail("exponent too large");
                    e = static_cast<std::uint32_t>(std::stoul(digits));
                }
                term.powers.emplace_back(var_index(name), e);
            } else {
                throw fail(std::string("unexpected character '") + ch + "'");
            }
            skip_ws();
            need_factor = pos < text.size() && text[pos] == '*';
            if (need_factor) ++pos;
        }
        raw.push_back(std::move(term));
    }

    const std::size_t arity = vars.size();
    std::vector<Monomial> terms;
    for (auto& r : raw) {
        Exponents e(arity, 0);
        for (auto [v, x] : r.powers) e[v] += x;
        terms.push_back({std::move(e), std::move(r.coef)});
    }
    return {std::move(vars), Polynomial::from_terms(arity, std::move(terms))};
}

// ----------------------------------------------------------------- DAG ---

inline ordered_json dag_to_json(const ExprDag& d, const ordered_json& header = ordered_json::object()) {
    ordered_json doc;
    doc["format"] = "primepoly-dag";
    doc["vars"] = d.variables();
    doc["header"] = header;
    ordered_json nodes = ordered_json::array();
    for (const auto& n : d.nodes()) {
        ordered_json j;
        j["op"] = op_name(n.op);
        switch (n.op) {
            case Op::constant: j["value"] = to_string(n.value); break;
            case Op::variable: j["index"] = n.index; break;
            case Op::pow:
                j["args"] = n.args;
                j["exp"] = n.exponent;
                break;
            default: j["args"] = n.args; break;
        }
        nodes.push_back(std::move(j));
    }
    doc["nodes"] = std::move(nodes);
    doc["root"] = d.root();
    return doc;
}

inline ExprDag dag_from_json(const ordered_json& doc) {
    auto vars = detail::read_var_list(doc);
    if (!doc.contains("nodes") || !doc["nodes"].is_array()) throw ParseError("DAG document needs a \"nodes\" array", 1, 1);
    std::vector<DagNode> nodes;
    std::size_t k = 0;
    for (const auto& j : doc["nodes"]) {
        const std::string where = "node " + std::to_string(k++);
        if (!j.is_object() || !j.contains("op") || !j["op"].is_string()) throw ParseError(where + ": missing op", 1, 1);
        const auto op = j["op"].get<std::string>();
        DagNode n;
        auto read_args = [&] {
            if (!j.contains("args") || !j["args"].is_array()) throw ParseError(where + ": missing args", 1, 1);
            for (const auto& a : j["args"]) {
                if (!a.is_number_unsigned()) throw ParseError(where + ": child indices must be naturals", 1, 1);
                n.args.push_back(a.get<NodeId>());
            }
        };
        if (op == "const") {
            n.op = Op::constant;
            if (!j.contains("value")) throw ParseError(where + ": missing value", 1, 1);
            n.value = detail::read_decimal(j["value"], where);
        } else if (op == "var") {
            n.op = Op::variable;
            if (!j.contains("index") || !j["index"].is_number_unsigned()) throw ParseError(where + ": missing index", 1, 1);
            n.index = j["index"].get<std::uint32_t>();
        } else if (op == "add" || op == "mul" || op == "neg") {
            n.op = op == "add" ? Op::add : op == "mul" ? Op::mul : Op::neg;
            read_args();
        } else if (op == "pow") {
            n.op = Op::pow;
            read_args();
            if (!j.contains("exp") || !j["exp"].is_number_unsigned()) throw ParseError(where + ": missing exp", 1, 1);
            n.exponent = j["exp"].get<std::uint32_t>();
        } else {
            throw ParseError(where + ": unknown op '" + op + "'", 1, 1);
        }
        nodes.push_back(std::move(n));
    }
    if (!doc.contains("root") || !doc["root"].is_number_unsigned() || doc["root"].get<std::size_t>() + 1 != nodes.size())
        throw ParseError("root must index the last node", 1, 1);
    try {
        return ExprDag(std::move(vars), std::move(nodes));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 1, 1);
    }
}

inline ExprDag parse_dag_json(std::string_view text) { return dag_from_json(detail::parse_json_document(text)); }

// ---------------------------------------------------------- assignments ---

inline std::map<std::string, Integer> parse_assignment(std::string_view text) {
    std::map<std::string, Integer> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected name=decimal", lineno, first + 1);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string name = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!detail::valid_identifier(name)) throw ParseError("invalid variable name '" + name + "'", lineno, first + 1);
        try {
            if (!out.emplace(name, parse_integer(value)).second)
                throw ParseError("variable '" + name + "' assigned twice", lineno, first + 1);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), lineno, eq + 2);
        }
    }
    return out;
}

/// Orders an assignment by a variable list; every variable must be present.
inline std::vector<Integer> assignment_point(const std::map<std::string, Integer>& a,
                                             const std::vector<std::string>& vars) {
    std::vector<Integer> point;
    point.reserve(vars.size());
    for (const auto& v : vars) {
        auto it = a.find(v);
        if (it == a.end()) throw std::invalid_argument("assignment is missing variable '" + v + "'");
        point.push_back(it->second);
    }
    return point;
}

}  // namespace primepoly
