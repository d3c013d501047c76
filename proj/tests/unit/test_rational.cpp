#include <gtest/gtest.h>

#include <flagcert/interval.hpp>
#include <flagcert/rational.hpp>

using namespace flagcert;

TEST(Rational, ParsesFractionsAndDecimalsExactly)
{
    EXPECT_EQ(parse_rational("3/6"), make_rational(1, 2));
    EXPECT_EQ(parse_rational("-0.0125"), make_rational(-1, 80));
    EXPECT_EQ(parse_rational("1e-6"), make_rational(1, 1000000));
    EXPECT_EQ(parse_rational(" 2.5E1 "), Rational(25));
    EXPECT_THROW(parse_rational(""), std::invalid_argument);
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
}

TEST(Rational, BinomialAndSquareRoots)
{
    EXPECT_EQ(binomial(9, 3), 84);
    EXPECT_EQ(binomial(3, 5), 0);
    Rational r;
    EXPECT_TRUE(exact_sqrt(make_rational(25, 9), r));
    EXPECT_EQ(r, make_rational(5, 3));
    EXPECT_FALSE(exact_sqrt(Rational(2), r));
    EXPECT_FALSE(exact_sqrt(Rational(-4), r));
}

TEST(Interval, EnclosesExactResults)
{
    const Interval third = Interval::enclose(make_rational(1, 3));
    EXPECT_LT(third.lo(), 1.0 / 3.0 + 1e-17);
    EXPECT_GT(third.hi(), 1.0 / 3.0 - 1e-17);
    const Interval two = sqrt(Interval(2.0));
    EXPECT_TRUE(two.contains(1.4142135623730951));
    EXPECT_LE(two.lo() * two.lo(), 2.0);
    EXPECT_THROW(Interval(1.0) / Interval(-1.0, 1.0), std::domain_error);
    const Interval sq = square(Interval(-2.0, 1.0));
    EXPECT_EQ(sq.lo(), 0.0);
    EXPECT_GE(sq.hi(), 4.0);
}
