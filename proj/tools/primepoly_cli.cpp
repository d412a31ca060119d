#include "primepoly/bigint.hpp"
#include "primepoly/expr_dag.hpp"
#include "primepoly/kpoly.hpp"
#include "primepoly/poly_io.hpp"
#include "primepoly/polynomial.hpp"
#include "primepoly/primecompile/poly10.hpp"
#include "primepoly/primecompile/poly26.hpp"
#include "primepoly/signprod.hpp"
#include "primepoly/verify/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace primepoly;
using nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Target {
    std::string name;
    std::optional<Polynomial> poly;
    std::vector<std::string> vars;
    std::optional<compile::Poly10> dag;
};

Target resolve_target(const std::string& name, const std::string& z) {
    Target t{name, std::nullopt, {}, std::nullopt};
    if (name.rfind("J:", 0) == 0) {
        unsigned n = 0;
        try {
            std::size_t used = 0;
            n = static_cast<unsigned>(std::stoul(name.substr(2), &used));
            if (used != name.size() - 2) throw std::invalid_argument(name);
        } catch (const std::exception&) {
            throw UsageError("malformed target '" + name + "', expected J:n");
        }
        if (n < 2 || n > signprod::default_j_cap)
            throw UsageError("J:n needs 2 <= n <= " + std::to_string(signprod::default_j_cap));
        t.poly = signprod::cached_J(n).poly;
        for (unsigned k = 1; k <= n; ++k) t.vars.push_back("r" + std::to_string(k));
    } else if (name == "K1") {
        t.poly = kpoly::K1();
        t.vars = kpoly::k1_names();
    } else if (name == "K2") {
        t.poly = kpoly::K2();
        t.vars = kpoly::k2_names();
    } else if (name == "K") {
        t.poly = kpoly::K();
        t.vars = kpoly::k_names();
    } else if (name == "poly26") {
        t.poly = compile::build_poly26();
        t.vars = compile::poly26_names();
    } else if (name == "poly10") {
        try {
            t.dag = compile::build_poly10(z);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        t.vars = compile::poly10_names();
    } else {
        throw UsageError("unknown target '" + name + "' (expected J:n, K1, K2, K, poly26 or poly10)");
    }
    return t;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void require_format(const std::string& f) {
    if (f != "json" && f != "text") throw UsageError("format must be json or text");
}

int cmd_emit(const std::string& target, const std::string& format, std::size_t budget, const std::string& z) {
    require_format(format);
    Target t = resolve_target(target, z);
    if (t.dag) {
        if (budget == 0) {
            if (format != "json") throw UsageError("poly10 is emitted as DAG JSON unless --budget is given");
            std::cout << dag_to_json(t.dag->dag, t.dag->header()).dump() << "\n";
            return exit_ok;
        }
        try {
            t.poly = dag_expand(t.dag->dag, budget);
        } catch (const BudgetExceeded& e) {
            std::cerr << "error: " << e.what() << "\n";
            return exit_failure;
        }
    }
    if (format == "json")
        std::cout << serialize_json(*t.poly, t.vars) << "\n";
    else
        std::cout << serialize_text(*t.poly, t.vars) << "\n";
    return exit_ok;
}

int cmd_eval(const std::string& target, const std::string& file, const std::string& z) {
    const Target t = resolve_target(target, z);
    std::vector<Integer> point;
    try {
        point = assignment_point(parse_assignment(read_file(file)), t.vars);
    } catch (const ParseError& e) {
        throw UsageError(std::string("assignment file: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const Integer v = t.dag ? t.dag->dag.evaluate(point) : t.poly->evaluate(point);
    std::cout << v.get_str() << "\n";
    return exit_ok;
}

int cmd_stats(const std::string& target, const std::string& format, std::uint64_t seed, const std::string& z) {
    require_format(format);
    const Target t = resolve_target(target, z);
    ordered_json s;
    s["target"] = target;
    s["arity"] = t.vars.size();
    if (t.dag) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<long> dist(1, 30);
        std::vector<Integer> ray;
        for (std::size_t k = 0; k < t.vars.size(); ++k) ray.push_back(Integer(dist(rng)));
        s["degree_bound"] = dag_degree_upper_bound(t.dag->dag);
        s["degree_estimate"] =
            dag_growth_degree_estimate(t.dag->dag, ray, Integer(1) << 20, Integer(1) << 21);
        s["monomials"] = "unexpanded";
        s["dag_nodes"] = t.dag->dag.size();
        s["z_choice"] = t.dag->z_choice;
    } else {
        s["degree"] = t.poly->total_degree();
        s["monomials"] = t.poly->size();
    }
    if (format == "json") {
        std::cout << s.dump() << "\n";
    } else {
        for (const auto& [key, value] : s.items())
            std::cout << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
    return exit_ok;
}

int cmd_verify(const std::string& suite, const std::string& format, const verify::SuiteOptions& opt) {
    require_format(format);
    const auto& names = verify::suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) throw UsageError("unknown suite '" + suite + "'");
    const auto known = verify::known_ranges(suite);
    for (const auto& [name, _] : opt.ranges)
        if (!known.contains(name)) throw UsageError("suite '" + suite + "' has no range named '" + name + "'");
    const auto rep = verify::run_suite(suite, opt);
    if (format == "json")
        std::cout << rep.to_json().dump(2) << "\n";
    else
        std::cout << rep.to_text();
    return rep.ok() ? exit_ok : exit_failure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Prime-representing polynomial toolkit: construct, evaluate, export and verify"};
    app.require_subcommand(1);

    std::string format = "text";
    std::size_t budget = 0;
    std::uint64_t seed = verify::default_seed;
    unsigned jobs = 1;
    std::vector<std::string> ranges;
    std::string z = std::string(compile::default_z_choice);
    std::string target, file, suite;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format: json or text");
        sub->add_option("--z-override", z, "Name or integer used for Z in the divisibility condition");
    };

    auto* emit = app.add_subcommand("emit", "Print a polynomial (J:n, K1, K2, K, poly26, poly10)");
    emit->add_option("target", target)->required();
    emit->add_option("--budget", budget, "Expansion term budget (poly10 only)");
    common(emit);

    auto* eval = app.add_subcommand("eval", "Evaluate a target at an assignment file of name=decimal lines");
    eval->add_option("target", target)->required();
    eval->add_option("assignment", file)->required();
    eval->add_option("--z-override", z, "Name or integer used for Z in the divisibility condition");

    auto* ver = app.add_subcommand("verify", "Run a verification suite (pell, j, k1, k, poly26, poly10, wilson, all)");
    ver->add_option("suite", suite)->required();
    ver->add_option("--seed", seed, "Seed for sampled checks");
    ver->add_option("--jobs", jobs, "Worker threads for grids")->check(CLI::Range(1u, 1024u));
    ver->add_option("--range", ranges, "Grid override name=lo..hi (repeatable)");
    common(ver);

    auto* stats = app.add_subcommand("stats", "Arity, degree and size of a target");
    stats->add_option("target", target)->required();
    stats->add_option("--seed", seed, "Seed for the growth-estimate ray");
    common(stats);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (!compile::valid_z_choice(z)) throw UsageError("unknown Z choice '" + z + "'");
        if (*emit) return cmd_emit(target, format, budget, z);
        if (*eval) return cmd_eval(target, file, z);
        if (*stats) return cmd_stats(target, format, seed, z);
        if (*ver) {
            verify::SuiteOptions opt;
            opt.seed = seed;
            opt.jobs = jobs;
            opt.z_choice = z;
            for (const auto& r : ranges) {
                try {
                    auto [name, range] = verify::parse_range(r);
                    opt.ranges[name] = range;
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                }
            }
            return cmd_verify(suite, format, opt);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_failure;
    }
    return exit_usage;
}
