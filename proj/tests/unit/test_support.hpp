#pragma once

#include "primepoly/bigint.hpp"
#include "primepoly/polynomial.hpp"

#include <random>
#include <vector>

namespace primepoly::testing {

inline Polynomial random_poly(std::mt19937_64& rng, std::size_t arity, int max_terms = 6, int max_exp = 3,
                              long max_coef = 20) {
    std::uniform_int_distribution<int> nterms(0, max_terms), exp(0, max_exp);
    std::uniform_int_distribution<long> coef(-max_coef, max_coef);
    std::vector<Monomial> terms;
    const int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        Exponents e(arity);
        for (auto& x : e) x = static_cast<std::uint32_t>(exp(rng));
        terms.push_back({std::move(e), Integer(coef(rng))});
    }
    return Polynomial::from_terms(arity, std::move(terms));
}

inline std::vector<Integer> random_point(std::mt19937_64& rng, std::size_t arity, long bound = 9) {
    std::uniform_int_distribution<long> d(-bound, bound);
    std::vector<Integer> p;
    for (std::size_t k = 0; k < arity; ++k) p.push_back(Integer(d(rng)));
    return p;
}

}  // namespace primepoly::testing
