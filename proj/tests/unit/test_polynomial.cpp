#include "primepoly/polynomial.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

using namespace primepoly;
using primepoly::testing::random_point;
using primepoly::testing::random_poly;

namespace {

Polynomial X(std::size_t arity, std::size_t k) { return Polynomial::variable(arity, k); }

}  // namespace

TEST(Polynomial, RingLawsOnRandomCases) {
    std::mt19937_64 rng(1);
    for (int c = 0; c < 600; ++c) {
        const auto a = random_poly(rng, 3), b = random_poly(rng, 3), d = random_poly(rng, 3);
        const Polynomial zero(3), one = Polynomial::constant(3, 1);
        ASSERT_EQ(a + b, b + a);
        ASSERT_EQ(a * b, b * a);
        ASSERT_EQ((a + b) + d, a + (b + d));
        ASSERT_EQ((a * b) * d, a * (b * d));
        ASSERT_EQ(a * (b + d), a * b + a * d);
        ASSERT_EQ(a + zero, a);
        ASSERT_EQ(a * one, a);
        ASSERT_TRUE((a - a).is_zero());
        ASSERT_TRUE((a * zero).is_zero());
    }
}

TEST(Polynomial, EvaluationIsAHomomorphism) {
    std::mt19937_64 rng(2);
    for (int c = 0; c < 500; ++c) {
        const auto a = random_poly(rng, 4), b = random_poly(rng, 4);
        const auto pt = random_point(rng, 4);
        ASSERT_EQ((a * b).evaluate(pt), a.evaluate(pt) * b.evaluate(pt));
        ASSERT_EQ((a - b).evaluate(pt), a.evaluate(pt) - b.evaluate(pt));
        std::vector<Wrap64> wp;
        for (const auto& v : pt) wp.push_back(Wrap64{low64(v)});
        ASSERT_EQ((a * b).evaluate(std::span<const Wrap64>(wp)), Wrap64{low64((a * b).evaluate(pt))});
    }
}

TEST(Polynomial, CanonicalGradedLexOrder) {
    const Polynomial p = X(2, 1) + X(2, 0) * X(2, 0) * X(2, 1) + Polynomial::constant(2, 5) + X(2, 0);
    ASSERT_EQ(p.size(), 4u);
    EXPECT_EQ(p.terms()[0].exponents, (Exponents{2, 1}));
    EXPECT_EQ(p.terms()[1].exponents, (Exponents{1, 0}));
    EXPECT_EQ(p.terms()[2].exponents, (Exponents{0, 1}));
    EXPECT_EQ(p.terms()[3].exponents, (Exponents{0, 0}));
    EXPECT_EQ(p.total_degree(), 3u);
    EXPECT_EQ(p.degree_in(0), 2u);
    EXPECT_EQ(p.coefficient({0, 0}), 5);
    EXPECT_EQ(p.coefficient({5, 5}), 0);
}

TEST(Polynomial, FromTermsMergesAndDropsZeros) {
    const auto p = Polynomial::from_terms(2, {{{1, 0}, Integer(3)}, {{1, 0}, Integer(-3)}, {{0, 2}, Integer(2)}, {{0, 2}, Integer(1)}});
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(p.coefficient({0, 2}), 3);
    EXPECT_THROW(Polynomial::from_terms(2, {{{1}, Integer(1)}}), ArityError);
}

TEST(Polynomial, DifferenceOfSquares) {
    const Polynomial x = X(2, 0), y = X(2, 1);
    EXPECT_EQ((x + y) * (x - y), x * x - y * y);
}

TEST(Polynomial, ZeroPolynomial) {
    const Polynomial z(3);
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.total_degree(), 0u);
    EXPECT_EQ(z.evaluate(std::vector<Integer>{1, 2, 3}), 0);
}

TEST(Polynomial, ArityMismatchThrows) {
    EXPECT_THROW(X(2, 0) + X(3, 0), ArityError);
    EXPECT_THROW(X(2, 0).evaluate(std::vector<Integer>{1}), ArityError);
    EXPECT_THROW(Polynomial::variable(2, 2), ArityError);
}

TEST(Polynomial, PowMatchesRepeatedProduct) {
    std::mt19937_64 rng(3);
    for (int c = 0; c < 50; ++c) {
        const auto a = random_poly(rng, 2, 3, 2, 5);
        Polynomial r = Polynomial::constant(2, 1);
        for (int e = 0; e <= 5; ++e) {
            ASSERT_EQ(pow(a, e), r);
            r = r * a;
        }
    }
}

TEST(Polynomial, MultiplyRespectsBudget) {
    const Polynomial s = X(3, 0) + X(3, 1) + X(3, 2) + Polynomial::constant(3, 1);
    EXPECT_THROW(pow(s, 10, 50), BudgetExceeded);
    EXPECT_NO_THROW(pow(s, 3, 50));
}

TEST(Polynomial, SubstituteAgreesWithEvaluation) {
    std::mt19937_64 rng(4);
    for (int c = 0; c < 100; ++c) {
        const auto a = random_poly(rng, 3, 5, 2, 5);
        const auto g0 = random_poly(rng, 2, 3, 2, 5), g2 = random_poly(rng, 2, 3, 2, 5);
        // x0 -> g0(u, v), x1 -> v, x2 -> g2(u, v)
        const std::map<std::size_t, Polynomial> m{{0, g0}, {1, X(2, 1)}, {2, g2}};
        const auto composed = substitute(a, m);
        const auto pt = random_point(rng, 2);
        const std::vector<Integer> inner{g0.evaluate(pt), pt[1], g2.evaluate(pt)};
        ASSERT_EQ(composed.evaluate(pt), a.evaluate(inner));
    }
}

TEST(Polynomial, SubstituteKeepsUnmappedVariables) {
    const Polynomial x = X(2, 0), y = X(2, 1);
    const auto r = substitute(x * y + y, {{0, y + Polynomial::constant(2, 1)}});
    EXPECT_EQ(r, y * y + y + y);
}

TEST(Polynomial, RemapAndCollect) {
    const Polynomial x = X(2, 0), y = X(2, 1);
    const Polynomial p = x * x * y + Integer(3) * y + x;
    const std::array<std::size_t, 2> idx{2, 0};
    const auto q = remap(p, 3, idx);
    EXPECT_EQ(q.evaluate(std::vector<Integer>{5, 0, 2}), p.evaluate(std::vector<Integer>{2, 5}));

    const auto parts = collect_in(p, 0);
    ASSERT_EQ(parts.size(), 3u);
    EXPECT_EQ(parts[0], Integer(3) * y);
    EXPECT_EQ(parts[1], Polynomial::constant(2, 1));
    EXPECT_EQ(parts[2], y);
}

TEST(Polynomial, RationalEvaluation) {
    const Polynomial x = X(1, 0);
    const Polynomial p = Integer(4) * x * x - Polynomial::constant(1, 1);
    const std::vector<Rational> half{Rational(1, 2)};
    EXPECT_EQ(p.evaluate(half), 0);
}
