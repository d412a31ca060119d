#include "primepoly/poly_io.hpp"
#include "primepoly/signprod.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace primepoly;
using namespace primepoly::signprod;

namespace {

std::vector<std::string> r_names(unsigned n) {
    std::vector<std::string> v;
    for (unsigned k = 1; k <= n; ++k) v.push_back("r" + std::to_string(k));
    return v;
}

}  // namespace

TEST(SignProduct, SmallCasesInText) {
    EXPECT_EQ(serialize_text(build_J(2).poly, r_names(2)), "r1^2 - r2^2");
    EXPECT_EQ(serialize_text(build_J(3).poly, r_names(3)),
              "r1^4 - 2*r1^2*r2^2 - 2*r1^2*r3^2 + r2^4 - 2*r2^2*r3^2 + r3^4");
}

TEST(SignProduct, InvariantsAndOracle) {
    std::mt19937_64 rng(10);
    std::uniform_int_distribution<long> d(-15, 15);
    for (unsigned n = 2; n <= 6; ++n) {
        const auto& j = cached_J(n);
        const auto props = check_j_properties(j.poly, n);
        EXPECT_TRUE(props.even_exponents && props.homogeneous && props.integer_coefficients && props.unit_leading);
        EXPECT_EQ(j.poly.total_degree(), 1u << (n - 1));
        for (int s = 0; s < 100; ++s) {
            std::vector<Integer> pt;
            for (unsigned k = 0; k < n; ++k) pt.push_back(Integer(d(rng)));
            // Oracle: the literal product over sign vectors.
            Integer prod = 1;
            for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
                Integer sum = pt[0];
                for (unsigned k = 1; k < n; ++k) sum += (mask >> (k - 1) & 1u) ? Integer(-pt[k]) : pt[k];
                prod *= sum;
            }
            ASSERT_EQ(j.poly.evaluate(pt), prod);
            ASSERT_EQ(sign_product_eval(pt), prod);
        }
    }
}

TEST(SignProduct, MonomialCounts) {
    const std::size_t expected[] = {0, 0, 2, 6, 35, 495, 20349};
    for (unsigned n = 2; n <= 6; ++n) {
        EXPECT_EQ(cached_J(n).poly.size(), expected[n]);
        EXPECT_EQ(Integer(static_cast<unsigned long>(expected[n])), homogeneous_pattern_bound(n));
    }
    EXPECT_EQ(claimed_monomial_count(2), 3);
    EXPECT_EQ(binomial(6, 2), 15);
}

TEST(SignProduct, CapIsEnforced) {
    EXPECT_THROW(build_J(1), std::out_of_range);
    EXPECT_THROW(build_J(7), std::out_of_range);
    EXPECT_THROW(build_J(7, 5), std::out_of_range);
}

TEST(SignProduct, PropertyCheckDetectsViolations) {
    const auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
    EXPECT_FALSE(check_j_properties(x * x - y, 2).homogeneous);
    EXPECT_FALSE(check_j_properties(x * y, 2).even_exponents);
    EXPECT_FALSE(check_j_properties(Integer(2) * x * x - y * y, 2).unit_leading);
}

TEST(SignProduct, EvaluationOnSquares) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> d(-12, 12);
    const auto& j = cached_J(4);
    for (int s = 0; s < 100; ++s) {
        std::vector<Integer> r, sq;
        for (int k = 0; k < 4; ++k) {
            r.push_back(Integer(d(rng)));
            sq.push_back(r.back() * r.back());
        }
        ASSERT_EQ(eval_J_on_squares<Integer>(j, sq), j.poly.evaluate(r));
    }
    const auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
    const std::vector<Polynomial> squares{x, y};
    EXPECT_EQ(compose_on_squares(cached_J(2), squares), x - y);
}

TEST(SignProduct, EliminationSingleArgumentBruteForce) {
    for (long a = 0; a <= 200; ++a) {
        const std::array<Integer, 1> A{Integer(a)};
        const auto r = mr_check(A, WMode::polynomial());
        EXPECT_EQ(r.exists_X, is_square(Integer(a))) << a;
        EXPECT_EQ(r.W, 1 + a * a);
    }
}

TEST(SignProduct, EliminationTwoArguments) {
    for (long a1 = 0; a1 <= 40; ++a1)
        for (long a2 = 0; a2 <= 40; ++a2) {
            const std::array<Integer, 2> A{Integer(a1), Integer(a2)};
            const auto r = mr_check(A, WMode::polynomial());
            ASSERT_EQ(r.exists_X, is_square(Integer(a1)) && is_square(Integer(a2))) << a1 << " " << a2;
            if (r.exists_X) {
                // Oracle: the largest root is sqrt(A1) + sqrt(A2) W.
                ASSERT_EQ(*r.X, isqrt(Integer(a1)) + isqrt(Integer(a2)) * r.W);
            }
        }
}

TEST(SignProduct, EliminationFixedW) {
    const std::array<Integer, 2> A{Integer(4), Integer(9)};
    const auto r = mr_check(A, WMode::fixed(10));
    EXPECT_TRUE(r.exists_X);
    EXPECT_EQ(*r.X, 32);
    EXPECT_THROW(mr_check(A, WMode::fixed(1)), std::invalid_argument);
    const std::array<Integer, 1> neg{Integer(-1)};
    EXPECT_THROW(mr_check(neg, WMode::polynomial()), std::invalid_argument);
    const std::array<Integer, 4> many{1, 1, 1, 1};
    EXPECT_THROW(mr_check(many, WMode::polynomial()), std::out_of_range);
}
