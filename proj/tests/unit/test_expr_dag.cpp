#include "primepoly/expr_dag.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace primepoly;
using primepoly::testing::random_point;
using primepoly::testing::random_poly;

TEST(ExprDag, HashConsingSharesNodes) {
    DagBuilder b({"x", "y"});
    const Expr x = b.var("x"), y = b.var("y");
    const Expr s1 = x + y;
    const Expr s2 = x + y;
    EXPECT_EQ(s1.id(), s2.id());
    const auto before = b.node_count();
    (void)(x + y);
    EXPECT_EQ(b.node_count(), before);
}

TEST(ExprDag, EvaluateMatchesExpansion) {
    DagBuilder b({"x", "y", "z"});
    const Expr x = b.var("x"), y = b.var("y"), z = b.var("z");
    const Expr s = x * y - z + 3;
    const Expr e = pow(s, 3) * s - pow(x - 2 * y, 2);
    const ExprDag d = b.snapshot(e);
    const Polynomial p = dag_expand(d, 0);
    std::mt19937_64 rng(5);
    for (int c = 0; c < 200; ++c) {
        const auto pt = random_point(rng, 3);
        ASSERT_EQ(d.evaluate(pt), p.evaluate(pt));
    }
    EXPECT_EQ(dag_degree_upper_bound(d), 8u);
    EXPECT_EQ(p.total_degree(), 8u);
}

TEST(ExprDag, PolynomialRoundTrip) {
    std::mt19937_64 rng(6);
    for (int c = 0; c < 50; ++c) {
        const auto p = random_poly(rng, 3);
        const auto d = to_dag(p, {"a", "b", "c"});
        ASSERT_EQ(dag_expand(d, 0), p);
        ASSERT_GE(dag_degree_upper_bound(d), p.total_degree());
    }
}

TEST(ExprDag, DegreeBoundIsAnUpperBound) {
    DagBuilder b({"x"});
    const Expr x = b.var("x");
    const Expr e = (x + 1) * (x + 1) - x * x;  // degree 1 after cancellation
    const ExprDag d = b.snapshot(e);
    EXPECT_EQ(dag_degree_upper_bound(d), 2u);
    EXPECT_EQ(dag_expand(d, 0).total_degree(), 1u);
}

TEST(ExprDag, GrowthEstimateFindsDegree) {
    DagBuilder b({"x", "y"});
    const Expr x = b.var("x"), y = b.var("y");
    const ExprDag d = b.snapshot(pow(x * y + 1, 7) + pow(x, 3));
    const std::vector<Integer> ray{2, 3};
    EXPECT_EQ(dag_growth_degree_estimate(d, ray, Integer(1) << 20, Integer(1) << 21), 14u);
    EXPECT_THROW(dag_growth_degree_estimate(d, ray, Integer(1), Integer(4)), std::invalid_argument);
}

TEST(ExprDag, GrowthEstimateRejectsVanishingRay) {
    DagBuilder b({"x", "y"});
    const ExprDag d = b.snapshot(b.var("x") - b.var("y"));
    const std::vector<Integer> ray{1, 1};
    EXPECT_THROW(dag_growth_degree_estimate(d, ray, Integer(2), Integer(4)), std::domain_error);
}

TEST(ExprDag, ExpansionBudget) {
    DagBuilder b({"a", "b", "c", "d"});
    const Expr s = b.var("a") + b.var("b") + b.var("c") + b.var("d") + 1;
    const ExprDag d = b.snapshot(pow(s, 12));
    EXPECT_THROW(dag_expand(d, 100), BudgetExceeded);
}

TEST(ExprDag, SnapshotKeepsOnlyReachableNodes) {
    DagBuilder b({"x", "y"});
    const Expr x = b.var("x"), y = b.var("y");
    (void)pow(y, 9);
    const ExprDag d = b.snapshot(x * 2);
    EXPECT_EQ(d.size(), 3u);
    EXPECT_EQ(d.arity(), 2u);
    EXPECT_EQ(d.evaluate(std::vector<Integer>{21, 0}), 42);
}

TEST(ExprDag, InvalidNodeListsAreRejected) {
    DagNode bad;
    bad.op = Op::add;
    bad.args = {0};
    EXPECT_THROW(ExprDag({"x"}, {bad}), std::invalid_argument);
    DagNode var;
    var.op = Op::variable;
    var.index = 3;
    EXPECT_THROW(ExprDag({"x"}, {var}), std::invalid_argument);
    DagBuilder b({"x"});
    EXPECT_THROW(b.add_variable("x"), std::invalid_argument);
    EXPECT_THROW(b.variable(1), ArityError);
}

TEST(ExprDag, EvaluatesInEveryRing) {
    DagBuilder b({"x"});
    const Expr x = b.var("x");
    const ExprDag d = b.snapshot(pow(x, 3) - 2 * x + 7);
    EXPECT_EQ(d.evaluate(std::vector<Integer>{5}), 122);
    EXPECT_EQ(d.evaluate(std::vector<Rational>{Rational(1, 2)}), Rational(49, 8));
    EXPECT_EQ(d.evaluate(std::vector<Wrap64>{Wrap64{5}}), Wrap64{122});
}
