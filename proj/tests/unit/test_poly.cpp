#include <gtest/gtest.h>

#include <random>

#include <flagcert/poly.hpp>

using namespace flagcert;

namespace
{

RatPoly from_roots(const std::vector<Rational> &roots)
{
    RatPoly p(1);
    for (const auto &r : roots) {
        p *= RatPoly::x() - RatPoly(r);
    }
    return p;
}

} // namespace

TEST(RatPoly, Arithmetic)
{
    const RatPoly x = RatPoly::x();
    const RatPoly p = x * x - RatPoly(make_rational(1, 4));
    EXPECT_EQ(p.degree(), 2);
    EXPECT_EQ(p(make_rational(1, 2)), Rational(0));
    EXPECT_EQ((p - p).degree(), -1);
    EXPECT_TRUE((p - p).is_zero());
    const auto [q, r] = divmod(p, x - RatPoly(make_rational(1, 2)));
    EXPECT_EQ(q, x + RatPoly(make_rational(1, 2)));
    EXPECT_TRUE(r.is_zero());
    EXPECT_EQ(p.derivative(), RatPoly(2) * x);
    EXPECT_EQ(p.compose(x + RatPoly(1))(Rational(0)), make_rational(3, 4));
    EXPECT_THROW(divmod(p, RatPoly()), std::domain_error);
}

TEST(RatPoly, GcdAndSquareFreePart)
{
    const RatPoly a = from_roots({1, 1, 2});
    const RatPoly b = from_roots({1, 3});
    EXPECT_EQ(gcd(a, b), from_roots({1}));
    EXPECT_EQ(square_free_part(a), from_roots({1, 2}));
}

TEST(RatPoly, TextRoundTrip)
{
    const RatPoly p(std::vector<Rational>{make_rational(3, 4), 0, make_rational(-1, 2)});
    EXPECT_EQ(p.to_string(), "3/4 + -1/2*b^2");
    EXPECT_EQ(parse_poly(p.to_string()), p);
    EXPECT_EQ(parse_poly("1 + 8*b"), RatPoly(std::vector<Rational>{1, 8}));
    EXPECT_EQ(parse_poly("0"), RatPoly());
    EXPECT_THROW(parse_poly("b"), std::invalid_argument);
    EXPECT_THROW(parse_poly("2*c"), std::invalid_argument);
}

TEST(Sturm, Examples)
{
    const RatPoly x = RatPoly::x();
    EXPECT_EQ(sturm_root_count(x * x - RatPoly(make_rational(1, 4)), 0, 1), 1);
    EXPECT_EQ(sturm_root_count(RatPoly(8) * x + RatPoly(1), 0, make_rational(1, 2)), 0);
    EXPECT_THROW(sturm_root_count(RatPoly(), 0, 1), std::invalid_argument);
    EXPECT_THROW(sturm_root_count(x, 1, 1), std::invalid_argument);
}

TEST(Sturm, HalfOpenEndpoints)
{
    const RatPoly p = from_roots({1, 2});
    EXPECT_EQ(sturm_root_count(p, 1, 2), 1);
    EXPECT_EQ(sturm_root_count(p, 0, 1), 1);
    EXPECT_EQ(sturm_root_count(p, 0, 2), 2);
    EXPECT_EQ(sturm_root_count(p, 2, 3), 0);
    // Repeated roots count once.
    EXPECT_EQ(sturm_root_count(from_roots({1, 1, 1, 3}), 0, 4), 2);
}

TEST(Sturm, CountsPlantedRoots)
{
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<Rational> roots;
        const int deg = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < deg; ++i) {
            roots.push_back(make_rational(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 7)));
        }
        const Rational lo = make_rational(static_cast<long>(rng() % 21) - 10, 3);
        const Rational hi = lo + make_rational(1 + static_cast<long>(rng() % 30), 4);
        std::vector<Rational> distinct = roots;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        int expected = 0;
        for (const auto &r : distinct) {
            expected += (lo < r && r <= hi) ? 1 : 0;
        }
        const RatPoly p = RatPoly(make_rational(1 + static_cast<long>(rng() % 5), 3)) * from_roots(roots);
        EXPECT_EQ(sturm_root_count(p, lo, hi), expected) << p;
    }
}

TEST(Sturm, MatchesDenseSamplingOnRandomCubics)
{
    std::mt19937_64 rng(6);
    int checked = 0;
    while (checked < 500) {
        std::vector<Rational> c(4);
        for (auto &v : c) {
            v = Rational(static_cast<long>(rng() % 21) - 10);
        }
        if (sgn(c[3]) == 0) {
            continue;
        }
        const RatPoly p(c);
        // Sample on a fine grid and count strict sign changes; skip cubics
        // with a sample exactly on a root or a double root in range.
        const int steps = 4000;
        const double lo = -5.0;
        const double hi = 5.0;
        int changes = 0;
        bool clean = true;
        double prev = 0.0;
        for (int i = 0; i <= steps; ++i) {
            const Rational t = Rational(-5) + Rational(10 * i, steps);
            const double v = p(t).get_d();
            if (v == 0.0) {
                clean = false;
                break;
            }
            if (i > 0 && (v > 0) != (prev > 0)) {
                ++changes;
            }
            prev = v;
        }
        (void)lo;
        (void)hi;
        const RatPoly g = gcd(p, p.derivative());
        if (!clean || g.degree() > 0) {
            continue;
        }
        const int count = sturm_root_count(p, -5, 5);
        // A pair of roots closer than the grid step can hide from sampling.
        EXPECT_GE(count, changes);
        EXPECT_EQ((count - changes) % 2, 0);
        ++checked;
    }
}
