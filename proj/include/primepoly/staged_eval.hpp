#pragma once

// Staged partial evaluation of a multivariate polynomial.
//
// Variables are fixed in groups ("stages"). After all stages, the result is
// a vector of coefficients indexed by the exponent patterns of the
// variables left free. Nested loops over a grid then pay for the inner
// stages only, which is what makes the exhaustive suites cheap.

#include "primepoly/bigint.hpp"
#include "primepoly/polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

namespace primepoly {

template <class R>
class StagedEvaluator {
 public:
    StagedEvaluator(const Polynomial& p, std::vector<std::vector<std::size_t>> stages)
        : arity_(p.arity()), stages_(std::move(stages)) {
        std::vector<int> stage_of(arity_, -1);
        for (std::size_t s = 0; s < stages_.size(); ++s)
            for (auto v : stages_[s]) {
                if (v >= arity_ || stage_of[v] != -1) throw std::invalid_argument("bad stage partition");
                stage_of[v] = static_cast<int>(s);
            }
        for (std::size_t v = 0; v < arity_; ++v)
            if (stage_of[v] == -1) free_vars_.push_back(v);

        for (const auto& t : p.terms()) initial_.push_back(RingTraits<R>::from_integer(t.coefficient));

        // current_keys[k] = exponents of term/group k restricted to vars not yet fixed.
        std::vector<Exponents> current;
        for (const auto& t : p.terms()) current.push_back(t.exponents);

        levels_.resize(stages_.size());
        for (std::size_t s = 0; s < stages_.size(); ++s) {
            auto& lvl = levels_[s];
            lvl.width = stages_[s].size();
            lvl.max_exp.assign(lvl.width, 0);
            std::map<Exponents, std::uint32_t> dst_index;
            std::vector<Exponents> next;
            for (std::size_t src = 0; src < current.size(); ++src) {
                Exponents key = current[src];
                for (std::size_t w = 0; w < lvl.width; ++w) {
                    const auto e = key[stages_[s][w]];
                    lvl.exps.push_back(e);
                    lvl.max_exp[w] = std::max(lvl.max_exp[w], e);
                    key[stages_[s][w]] = 0;
                }
                auto [it, inserted] = dst_index.emplace(key, static_cast<std::uint32_t>(next.size()));
                if (inserted) next.push_back(key);
                lvl.src.push_back(static_cast<std::uint32_t>(src));
                lvl.dst.push_back(it->second);
            }
            lvl.out_size = next.size();
            current = std::move(next);
        }
        final_keys_ = std::move(current);
    }

    std::size_t stage_count() const noexcept { return stages_.size(); }
    const std::vector<R>& initial() const noexcept { return initial_; }

    /// Exponent patterns (over the full arity, zero on fixed variables) of the final outputs.
    const std::vector<Exponents>& final_keys() const noexcept { return final_keys_; }
    const std::vector<std::size_t>& free_variables() const noexcept { return free_vars_; }

    /// Applies stage s to its input (initial() for s = 0, else stage s-1's output).
    void eval_stage(std::size_t s, std::span<const R> input, std::span<const R> values, std::vector<R>& out) const {
        const auto& lvl = levels_.at(s);
        if (values.size() != lvl.width) throw ArityError("stage value count mismatch");
        std::vector<std::vector<R>> tables(lvl.width);
        for (std::size_t w = 0; w < lvl.width; ++w) {
            tables[w].push_back(RingTraits<R>::from_integer(1));
            for (std::uint32_t e = 1; e <= lvl.max_exp[w]; ++e) tables[w].push_back(tables[w].back() * values[w]);
        }
        out.assign(lvl.out_size, RingTraits<R>::from_integer(0));
        const std::size_t n = lvl.src.size();
        for (std::size_t k = 0; k < n; ++k) {
            R term = input[lvl.src[k]];
            const std::uint32_t* e = &lvl.exps[k * lvl.width];
            for (std::size_t w = 0; w < lvl.width; ++w)
                if (e[w]) term *= tables[w][e[w]];
            out[lvl.dst[k]] += term;
        }
    }

    std::vector<R> eval_stage(std::size_t s, std::span<const R> input, std::span<const R> values) const {
        std::vector<R> out;
        eval_stage(s, input, values, out);
        return out;
    }

    /// When exactly one variable is left free: maps final outputs into
    /// univariate coefficients (low to high).
    std::vector<std::uint32_t> univariate_degrees() const {
        if (free_vars_.size() != 1) throw std::logic_error("expected exactly one free variable");
        std::vector<std::uint32_t> d;
        for (const auto& k : final_keys_) d.push_back(k[free_vars_[0]]);
        return d;
    }

 private:
    struct Level {
        std::size_t width = 0;
        std::size_t out_size = 0;
        std::vector<std::uint32_t> src, dst, exps, max_exp;
    };

    std::size_t arity_;
    std::vector<std::vector<std::size_t>> stages_;
    std::vector<std::size_t> free_vars_;
    std::vector<R> initial_;
    std::vector<Level> levels_;
    std::vector<Exponents> final_keys_;
};

}  // namespace primepoly
