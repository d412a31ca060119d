#pragma once

/**
 * @file wilson.hpp
 * @brief Primality of k+1 through (k+1) | k! + 1.
 */

#include "primepoly/bigint.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace primepoly::compile {

inline bool wilson_is_prime(std::uint64_t k) {
    if (k < 1) throw std::invalid_argument("wilson_is_prime needs k >= 1");
    const std::uint64_t mod = k + 1;
    Integer fact = 1;
    for (std::uint64_t t = 2; t <= k; ++t) fact = (fact * static_cast<unsigned long>(t)) % static_cast<unsigned long>(mod);
    return (fact + 1) % static_cast<unsigned long>(mod) == 0;
}

/// wilson_is_prime(k) for every 1 <= k <= k_max from one running factorial.
inline std::vector<bool> wilson_table(std::uint64_t k_max) {
    std::vector<bool> out(k_max + 1, false);
    Integer fact = 1;
    for (std::uint64_t k = 1; k <= k_max; ++k) {
        fact *= static_cast<unsigned long>(k);
        out[k] = divides(Integer(static_cast<unsigned long>(k + 1)), Integer(fact + 1));
    }
    return out;
}

}  // namespace primepoly::compile
