#include "primepoly/bigint.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <stdexcept>

using namespace primepoly;

TEST(BigInt, IsqrtMatchesBruteForce) {
    long r = 0;
    for (long n = 0; n <= 10000; ++n) {
        while ((r + 1) * (r + 1) <= n) ++r;
        EXPECT_EQ(isqrt(Integer(n)), r) << n;
        EXPECT_EQ(is_square(Integer(n)), r * r == n) << n;
    }
}

TEST(BigInt, IsqrtLargeValues) {
    const Integer big = Integer("123456789012345678901234567890");
    const Integer sq = big * big;
    EXPECT_EQ(isqrt(sq), big);
    EXPECT_EQ(isqrt(Integer(sq - 1)), big - 1);
    EXPECT_TRUE(is_square(sq));
    EXPECT_FALSE(is_square(Integer(sq + 1)));
}

TEST(BigInt, NegativeValuesAreNotSquares) {
    EXPECT_FALSE(is_square(Integer(-4)));
    EXPECT_THROW(isqrt(Integer(-1)), std::domain_error);
}

TEST(BigInt, DividesSemantics) {
    EXPECT_TRUE(divides(Integer(0), Integer(0)));
    EXPECT_FALSE(divides(Integer(0), Integer(5)));
    EXPECT_TRUE(divides(Integer(-3), Integer(9)));
    EXPECT_TRUE(divides(Integer(3), Integer(-9)));
    EXPECT_FALSE(divides(Integer(4), Integer(7)));
    EXPECT_TRUE(divides(Integer(7), Integer(0)));
}

TEST(BigInt, ParseInteger) {
    EXPECT_EQ(parse_integer("-1234567890123456789012"), Integer("-1234567890123456789012"));
    EXPECT_EQ(parse_integer("+7"), 7);
    for (const char* bad : {"", "-", "1.5", "0x10", "12a", " 3"}) EXPECT_THROW(parse_integer(bad), std::invalid_argument) << bad;
}

TEST(BigInt, Wrap64IsARingImage) {
    const Integer a("98765432109876543210987"), b("-1234567890123456789");
    EXPECT_EQ(Wrap64{low64(Integer(a * b))}, Wrap64{low64(a)} * Wrap64{low64(b)});
    EXPECT_EQ(Wrap64{low64(Integer(a + b))}, Wrap64{low64(a)} + Wrap64{low64(b)});
    EXPECT_EQ(Wrap64{low64(Integer(-1))}.v, UINT64_MAX);
}

TEST(BigInt, Ipow) {
    EXPECT_EQ(ipow(Integer(3), 40), Integer("12157665459056928801"));
    EXPECT_EQ(ipow(Integer(-2), 0), 1);
    EXPECT_EQ(ipow(Rational(1, 2), 3), Rational(1, 8));
    EXPECT_EQ(ipow(std::int64_t{-3}, 3), -27);
}
