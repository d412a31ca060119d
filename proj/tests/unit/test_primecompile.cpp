#include "primepoly/primecompile/poly10.hpp"
#include "primepoly/primecompile/poly26.hpp"
#include "primepoly/primecompile/total.hpp"
#include "primepoly/primecompile/wilson.hpp"

#include <gtest/gtest.h>

#include <array>
#include <random>

using namespace primepoly;
using namespace primepoly::compile;

namespace {

// Classical 26-unknown system in its usual order, with k+1 prime; written out independently.
std::array<std::int64_t, 14> classic_components(const std::array<std::int64_t, 26>& w) {
    const std::int64_t a = w[0], b = w[1], c = w[2], d = w[3], e = w[4], f = w[5], g = w[6], h = w[7], i = w[8],
                       j = w[9], k = w[10], l = w[11], m = w[12], n = w[13], o = w[14], p = w[15], q = w[16],
                       r = w[17], s = w[18], t = w[19], u = w[20], v = w[21], ww = w[22], x = w[23], y = w[24],
                       z = w[25];
    const std::int64_t A = a * a - 1;
    const std::int64_t base = a + u * u * (u * u - a);
    return {
        ww * z + h + j - q,
        (g * k + 2 * g + k + 1) * (h + j) + h - z,
        16 * (k + 1) * (k + 1) * (k + 1) * (k + 2) * (n + 1) * (n + 1) + 1 - f * f,
        2 * n + p + q + z - e,
        e * e * e * (e + 2) * (a + 1) * (a + 1) + 1 - o * o,
        A * y * y + 1 - x * x,
        16 * r * r * y * y * y * y * A + 1 - u * u,
        (base * base - 1) * (n + 4 * d * y) * (n + 4 * d * y) + 1 - (x + c * u) * (x + c * u),
        n + l + v - y,
        A * l * l + 1 - m * m,
        a * i + k + 1 - l - i,
        p + l * (a - n - 1) + b * (2 * a * n + 2 * a - n * n - 2 * n - 2) - m,
        q + y * (a - p - 1) + s * (2 * a * p + 2 * a - p * p - 2 * p - 2) - x,
        z + p * l * (a - p) + t * (2 * a * p - p * p - 1) - p * m,
    };
}

bool trial_division_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TEST(Poly26, ValueAtZero) {
    const std::vector<Integer> zero(26, 0);
    EXPECT_EQ(build_poly26().evaluate(zero), 6);
    const auto comps = poly26_components(zero);
    const std::array<long, 14> expected{0, 0, 1, 0, 1, -1, 1, 1, -1, 0, 0, 0, 0, 0};
    for (std::size_t n = 0; n < 14; ++n) EXPECT_EQ(comps[n], expected[n]) << n;
}

TEST(Poly26, MatchesClassicalSystemWithShiftedK) {
    // Library k is the classical k plus one; two components carry the opposite sign.
    const std::array<std::size_t, 14> lib_of{0, 1, 2, 3, 4, 5, 6, 7, 10, 8, 9, 11, 12, 13};
    const std::array<int, 14> sign{1, 1, 1, 1, 1, -1, 1, 1, 1, -1, 1, 1, 1, 1};
    const auto poly = build_poly26();
    std::mt19937_64 rng(26);
    std::uniform_int_distribution<std::int64_t> d(0, 5);
    for (int s = 0; s < 1000; ++s) {
        std::array<std::int64_t, 26> w{};
        std::vector<Integer> lib(26);
        for (std::size_t n = 0; n < 26; ++n) {
            w[n] = d(rng);
            lib[n] = w[n];
        }
        w[10] = d(rng) + 1;
        lib[10] = w[10];
        auto classic_w = w;
        classic_w[10] -= 1;
        const auto classic = classic_components(classic_w);
        const auto comps = poly26_components(lib);
        Integer sum = 0;
        for (std::size_t n = 0; n < 14; ++n) {
            ASSERT_EQ(comps[lib_of[n]], Integer(sign[n] * classic[n])) << "sample " << s << " component " << n;
            sum += Integer(classic[n]) * Integer(classic[n]);
        }
        ASSERT_EQ(poly.evaluate(lib), sum);
    }
}

TEST(Poly26, Shape) {
    EXPECT_EQ(build_poly26().arity(), 26u);
    EXPECT_EQ(poly26_names().front(), "a");
    EXPECT_EQ(poly26_names().back(), "z");
    EXPECT_THROW(poly26_components(std::vector<Integer>(25, 0)), ArityError);
}

TEST(Poly26, SoundnessProbe) {
    for (std::uint64_t k : {1u, 2u, 3u, 4u}) {
        const auto rep = poly26_soundness_probe(k, 1);
        EXPECT_FALSE(rep.hard_failure) << k;
        EXPECT_EQ(rep.k_plus_1_prime, trial_division_prime(k + 1));
        EXPECT_GT(rep.nodes, 0u);
    }
    EXPECT_THROW(poly26_soundness_probe(0, 1), std::invalid_argument);
    EXPECT_THROW(poly26_soundness_probe(3, 4), std::out_of_range);
}

TEST(Wilson, SmallCases) {
    EXPECT_TRUE(wilson_is_prime(1));
    EXPECT_FALSE(wilson_is_prime(3));
    EXPECT_TRUE(wilson_is_prime(4));
    EXPECT_THROW(wilson_is_prime(0), std::invalid_argument);
}

TEST(Wilson, TableAgreesWithTrialDivision) {
    const auto table = wilson_table(400);
    for (std::uint64_t k = 1; k <= 400; ++k) {
        EXPECT_EQ(table[k], trial_division_prime(k + 1)) << k;
        if (k <= 120) {
            EXPECT_EQ(wilson_is_prime(k), table[k]) << k;
        }
    }
}

TEST(Total, AuxExamples) {
    const auto x = total_aux({1, 1, 1, 1, 1, 1, 1, 0, 0});
    EXPECT_EQ(x.W, 200);
    EXPECT_EQ(x.U, Integer("800000001"));
    EXPECT_EQ(x.M, Integer("16000000020001"));
    EXPECT_EQ(x.S, 2);
    EXPECT_EQ(x.T, 200);
    EXPECT_EQ(x.B, 201);
    EXPECT_EQ(x.C, 202);
    EXPECT_EQ(x.Q, Integer(2) * x.M * 200 - 40001);
    EXPECT_EQ(x.L, 2 * x.Q);
    EXPECT_EQ(x.H, x.B);

    const auto z = total_aux({0, 1, 1, 1, 1, 1, 0, 5, 5});
    EXPECT_EQ(z.W, 0);
    EXPECT_EQ(z.U, 1);
    EXPECT_EQ(z.M, 1);
    EXPECT_EQ(z.S, 1);
    EXPECT_EQ(z.T, 1);
    EXPECT_EQ(z.Q, -1);
}

TEST(Total, RangeErrors) {
    EXPECT_THROW(total_aux({1, 0, 1, 1, 1, 1, 0, 0, 0}), std::invalid_argument);
    EXPECT_THROW(total_aux({-1, 1, 1, 1, 1, 1, 0, 0, 0}), std::invalid_argument);
    EXPECT_THROW(total_conditions({1, 1, 1, 1, 1, 1, -1, 0, 0}), std::invalid_argument);
    EXPECT_NO_THROW(total_conditions({1, 0, 1, 1, 1, 1, 0, 0, 0}));
    EXPECT_FALSE(total_conditions({1, 0, 1, 1, 1, 1, 0, 0, 0}).ranges_ok);
}

TEST(Total, ConditionsOnSamples) {
    EXPECT_FALSE(total_conditions({1, 1, 1, 1, 1, 1, 1, 1, 1}).overall);
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long> d(1, 6);
    for (int s = 0; s < 200; ++s) {
        const TotalBase b{d(rng) - 1, d(rng), d(rng), d(rng), d(rng), d(rng), d(rng) - 1, d(rng) - 1, d(rng) - 1};
        const auto x = total_aux(b);
        EXPECT_TRUE(x.W >= 0 && divides(Integer(2), x.W));
        EXPECT_GE(x.U, 1);
        EXPECT_GE(x.M, 1);
        EXPECT_GE(x.S, 1);
        EXPECT_GE(x.T, 1);
        const auto rep = total_conditions(b);
        EXPECT_EQ(rep.inequality, v_substitution(b) >= 0);
        EXPECT_EQ(rep.overall, rep.failed().empty());
    }
}

TEST(Total, ZChoice) {
    EXPECT_TRUE(valid_z_choice("L"));
    EXPECT_TRUE(valid_z_choice("Q"));
    EXPECT_TRUE(valid_z_choice("0"));
    EXPECT_TRUE(valid_z_choice("-3"));
    EXPECT_FALSE(valid_z_choice("V"));
    EXPECT_FALSE(valid_z_choice(""));
    const TotalBase b{2, 1, 1, 1, 1, 1, 0, 0, 0};
    const auto x = total_aux(b);
    const auto with_l = total_exprs(x, x.L);
    const auto with_zero = total_exprs(x, Integer(0));
    EXPECT_EQ(with_l.div_b - with_zero.div_b, (x.H - x.C) * x.L);
    EXPECT_THROW(total_conditions(b, "V"), std::invalid_argument);
}

TEST(Poly10, Shape) {
    const auto p = build_poly10();
    EXPECT_EQ(p.dag.variables(), poly10_names());
    EXPECT_EQ(p.dag.variables().size(), 10u);
    EXPECT_EQ(p.header()["z_choice"], "L");
    EXPECT_GT(dag_degree_upper_bound(p.dag), 6000u);
    EXPECT_THROW(build_poly10("V"), std::invalid_argument);
}

TEST(Poly10, DagAgreesWithStagedOracle) {
    std::mt19937_64 rng(10);
    std::uniform_int_distribution<long> d(1, 4);
    for (const std::string z : {"L", "Q", "0"}) {
        const auto p = build_poly10(z);
        EXPECT_EQ(p.z_choice, z);
        for (int s = 0; s < 10; ++s) {
            std::vector<Integer> pt;
            for (int n = 0; n < 10; ++n) pt.push_back(Integer(d(rng) - (n == 0 || n >= 6 ? 1 : 0)));
            ASSERT_EQ(p.dag.evaluate(pt), poly10_staged_eval(pt, z)) << z << " sample " << s;
        }
    }
    EXPECT_THROW(poly10_staged_eval(std::vector<Integer>(9, 1)), ArityError);
}
