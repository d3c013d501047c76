#include <gtest/gtest.h>

#include <map>

#include <flagcert/flag.hpp>
#include <flagcert/poly.hpp>

using namespace flagcert;

namespace
{

Rational r(long a, long b = 1) { return make_rational(a, b); }

std::vector<Rational> rv(std::initializer_list<Rational> v) { return v; }

SmallGraph g4(std::initializer_list<std::pair<int, int>> e) { return SmallGraph::from_edges(4, e); }

} // namespace

TEST(Basis, Sizes)
{
    EXPECT_EQ(graph_basis(3).size(), 4U);
    EXPECT_EQ(graph_basis(4).size(), 11U);
    EXPECT_EQ(graph_basis(7).size(), 1044U);
    EXPECT_EQ(flag_basis(TypeSigma::vertex(), 3).size(), 6U);
    EXPECT_EQ(flag_basis(TypeSigma::edge(), 3).size(), 4U);
    EXPECT_EQ(flag_basis(TypeSigma::edge(), 4).size(), 20U);
    EXPECT_EQ(flag_basis(TypeSigma::non_edge(), 4).size(), 20U);
    EXPECT_THROW(graph_basis(8), std::out_of_range);
    EXPECT_THROW(flag_basis(TypeSigma::edge(), 7), std::out_of_range);
    EXPECT_THROW(flag_basis(TypeSigma::edge(), 1), std::out_of_range);
    // Level 4 follows the fixed catalog.
    for (std::size_t i = 0; i < 11; ++i) {
        EXPECT_TRUE(isomorphic(graph_basis(4).flags[i].graph(), catalog_F4()[i]));
    }
}

TEST(Flag, LabelPreservingIsomorphism)
{
    // Free vertex hanging off label 0 versus off label 1.
    const Flag a(SmallGraph::from_edges(3, {{0, 1}, {0, 2}}), 2);
    const Flag b(SmallGraph::from_edges(3, {{0, 1}, {1, 2}}), 2);
    EXPECT_NE(a, b);
    EXPECT_EQ(Flag(SmallGraph::from_edges(3, {{0, 1}, {1, 2}}), 0), Flag(SmallGraph::from_edges(3, {{0, 1}, {0, 2}}), 0));
    const std::vector<int> roots{2, 0};
    EXPECT_EQ(Flag::from_roots(SmallGraph::from_edges(3, {{0, 2}, {2, 1}}), roots), a);
    EXPECT_THROW(Flag(SmallGraph(2), 3), std::invalid_argument);
}

TEST(Density, Examples)
{
    EXPECT_EQ(p(named::complete(2), named::path(3)), r(2, 3));
    EXPECT_EQ(p(named::complete(2), catalog_F4()[9]), r(5, 6));
    EXPECT_EQ(p(named::path(3), catalog_F4()[8]), r(1, 2));
    EXPECT_THROW(p(named::path(4), named::path(3)), std::invalid_argument);
    const Flag f(SmallGraph::from_edges(3, {{0, 1}, {1, 2}}), 1);
    EXPECT_EQ(flag_p(f, f), Rational(1));
}

TEST(Expand, Examples)
{
    EXPECT_EQ(expand(named::complete(2), 3).coords, rv({0, r(1, 3), r(2, 3), 1}));
    EXPECT_EQ(expand(named::complete(2), 4).coords,
              rv({0, r(1, 6), r(1, 3), r(1, 3), r(1, 2), r(1, 2), r(1, 2), r(2, 3), r(2, 3), r(5, 6), 1}));
    for (int level = 1; level <= 6; ++level) {
        for (const auto &x : expand(SmallGraph(1), level).coords) {
            EXPECT_EQ(x, Rational(1));
        }
    }
    EXPECT_THROW(expand(named::path(4), 3), std::invalid_argument);
    EXPECT_THROW(expand(SmallGraph(1), 8), std::out_of_range);
}

TEST(Expand, ConsistencyExhaustiveUpToSix)
{
    std::map<std::pair<SmallGraph, int>, std::vector<Rational>> cache;
    auto profile = [&](const SmallGraph &g, int level) -> const std::vector<Rational> & {
        auto key = std::make_pair(g, level);
        auto it = cache.find(key);
        if (it == cache.end()) {
            it = cache.emplace(key, density_profile(Flag(g, 0), level)).first;
        }
        return it->second;
    };
    long checks = 0;
    for (int n = 1; n <= 6; ++n) {
        for (const auto &g : enumerate_graphs(n)) {
            for (int level = 1; level <= n; ++level) {
                const auto &pg = profile(g, level);
                const FlagBasis &basis = graph_basis(level);
                Rational sum_coords = 0;
                for (const auto &x : pg) {
                    sum_coords += x;
                }
                EXPECT_EQ(sum_coords, Rational(1));
                for (int k = 1; k <= level; ++k) {
                    const auto &direct = profile(g, k);
                    std::vector<Rational> via(direct.size(), Rational(0));
                    for (std::size_t h = 0; h < basis.size(); ++h) {
                        const auto &ph = profile(basis.flags[h].graph(), k);
                        for (std::size_t i = 0; i < ph.size(); ++i) {
                            via[i] += ph[i] * pg[h];
                        }
                    }
                    EXPECT_EQ(via, direct) << to_text(g) << " level " << level << " k " << k;
                    checks += static_cast<long>(via.size());
                }
            }
        }
    }
    EXPECT_GT(checks, 1000);
}

TEST(Product, Examples)
{
    const SmallGraph k2 = named::complete(2);
    const SmallGraph e2 = named::empty(2);
    EXPECT_EQ(product(k2, e2).coords, rv({0, r(1, 6), 0, r(1, 3), r(1, 2), r(1, 6), r(1, 2), 0, r(1, 3), r(1, 6), 0}));
    EXPECT_EQ(p2(k2, e2, catalog_F4()[4]), r(1, 2));
    EXPECT_EQ(p2(k2, e2, named::complete(4)), Rational(0));
    EXPECT_EQ(p2(k2, k2, named::cycle(4)), r(2, 3));
    EXPECT_EQ(product(SmallGraph(1), SmallGraph(1)).coords, rv({1, 1}));
    EXPECT_THROW(p2(k2, k2, named::path(3)), std::invalid_argument);
    EXPECT_THROW(product(named::path(4), named::path(4)), std::out_of_range);
}

TEST(Product, LiftingCommutesWithProduct)
{
    for (int a = 1; a <= 3; ++a) {
        for (const auto &h1 : enumerate_graphs(a)) {
            for (const auto &h2 : enumerate_graphs(2)) {
                const int level = a + 2;
                const auto low = product(h1, h2);
                EXPECT_EQ(product(h1, h2, level + 1), lift(low, level + 1)) << to_text(h1) << " x " << to_text(h2);
            }
        }
    }
    const Flag f(SmallGraph::from_edges(3, {{0, 1}, {0, 2}}), 2);
    const Flag g(SmallGraph::from_edges(3, {{0, 1}}), 2);
    EXPECT_EQ(flag_product(f, g, 5), lift(flag_product(f, g), 5));
}

TEST(Product, MismatchedTypesRejected)
{
    const Flag f(SmallGraph::from_edges(3, {{0, 1}}), 2);
    const Flag g(SmallGraph(3), 2);
    EXPECT_THROW(flag_product(f, g), std::invalid_argument);
    EXPECT_THROW(flag_p(f, Flag(SmallGraph(4), 2)), std::invalid_argument);
}

TEST(Unlabel, ExampleCutBracket)
{
    const auto bracket = cut_bracket(TypeSigma::vertex(), [](unsigned m) { return (m & 1U) != 0; });
    const auto u = unlabel(bracket);
    EXPECT_EQ(u.coords, rv({0, r(2, 3), r(-2, 3), 0}));
    // The bracket is P3-bar with the label on the edge minus P3 with the
    // label at an end.
    const Flag pbar(SmallGraph::from_edges(3, {{0, 1}}), 1);
    const Flag pend(SmallGraph::from_edges(3, {{0, 1}, {1, 2}}), 1);
    auto expected = unit_vector<Rational>(pbar) - unit_vector<Rational>(pend);
    EXPECT_EQ(bracket, expected);
}

TEST(Unlabel, NonEdgeCutBrackets)
{
    const auto common = cut_bracket(TypeSigma::non_edge(), [](unsigned m) { return m == 3U; });
    EXPECT_EQ(unlabel(common).coords, rv({0, 0, 0, r(1, 6), 0, r(1, 3), r(-1, 2), 0, r(-1, 3), 0, 0}));
    const auto single = cut_bracket(TypeSigma::non_edge(), [](unsigned m) { return (m & 1U) != 0; });
    EXPECT_EQ(unlabel(single).coords, rv({0, r(1, 3), r(2, 3), 0, 0, 0, r(-1, 2), 0, r(-1, 6), 0, 0}));
    int nonzero = 0;
    for (const auto &x : common.coords) {
        nonzero += sgn(x) != 0;
    }
    EXPECT_EQ(nonzero, 6);
}

TEST(Unlabel, FactorsAndLinearity)
{
    EXPECT_EQ(unlabel_factor(Flag(SmallGraph::from_edges(3, {{0, 1}}), 1)), r(2, 3));
    EXPECT_EQ(unlabel_factor(Flag(named::complete(3), 2)), Rational(1));
    EXPECT_EQ(unlabel_factor(Flag(named::path(3), 0)), Rational(1));
    const auto &basis = flag_basis(TypeSigma::edge(), 4);
    DensityVector<Rational> x(TypeSigma::edge(), 4);
    DensityVector<Rational> y(TypeSigma::edge(), 4);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        x[i] = r(static_cast<long>(i % 5) - 2, 3);
        y[i] = r(static_cast<long>(i % 3), 7);
    }
    EXPECT_EQ(unlabel(x + y), unlabel(x) + unlabel(y));
    EXPECT_EQ(unlabel(r(5, 2) * x), r(5, 2) * unlabel(x));
}

TEST(Unlabel, SymbolicEdgeSquare)
{
    const TypeSigma k2 = TypeSigma::edge();
    const RatPoly xi = RatPoly::x();
    DensityVector<RatPoly> y(k2, 3);
    y.at(Flag(SmallGraph::from_edges(3, {{0, 1}}), 2)) = RatPoly(1);
    y.at(Flag(SmallGraph::from_edges(3, {{0, 1}, {0, 2}}), 2)) = -xi;
    y.at(Flag(SmallGraph::from_edges(3, {{0, 1}, {1, 2}}), 2)) = -xi;
    const auto sq = product(y, y);
    int nonzero = 0;
    for (const auto &c : sq.coords) {
        nonzero += !c.is_zero();
    }
    EXPECT_EQ(nonzero, 12);
    const auto u = unlabel(sq);
    const RatPoly xi2 = xi * xi;
    const std::vector<RatPoly> expected{
        RatPoly(0),
        RatPoly(r(1, 6)),
        RatPoly(r(1, 3)),
        RatPoly(r(-1, 3)) * xi,
        RatPoly(0),
        RatPoly(r(1, 6)) * (xi2 - RatPoly(2) * xi),
        RatPoly(r(1, 2)) * xi2,
        RatPoly(r(2, 3)) * xi2,
        RatPoly(r(1, 6)) * xi2,
        RatPoly(0),
        RatPoly(0),
    };
    EXPECT_EQ(u.coords, expected);
}

TEST(DensityVector, ShapeChecks)
{
    EXPECT_THROW(DensityVector<Rational>(TypeSigma::none(), 4, std::vector<Rational>(3)), std::invalid_argument);
    const auto a = expand(named::complete(2), 3);
    const auto b = expand(named::complete(2), 4);
    EXPECT_THROW(a + b, std::invalid_argument);
    (void)g4;
}
