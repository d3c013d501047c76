#include <gtest/gtest.h>

#include <flagcert/search.hpp>

using namespace flagcert;

namespace
{

Rational r(long a, long b = 1) { return make_rational(a, b); }

} // namespace

TEST(SwitchingClasses, CountsMatchGraphCounts)
{
    // Classes on n vertices are indexed by graphs on n-1 vertices.
    EXPECT_EQ(switching_classes(5).size(), enumerate_graphs(4).size());
    EXPECT_EQ(switching_classes(8).size(), enumerate_graphs(7).size());
    EXPECT_THROW(switching_classes(10), std::out_of_range);
    EXPECT_THROW(switching_classes(2), std::out_of_range);
}

TEST(SwitchingClasses, WitnessesAreSeidelMinimal)
{
    for (int n = 3; n <= 7; ++n) {
        for (const auto &c : switching_classes(n)) {
            EXPECT_TRUE(is_seidel_minimal(c.witness));
            EXPECT_EQ(c.witness.edge_count(), c.min_edges);
            EXPECT_EQ(odd_triple_count(c.witness), c.odd);
        }
    }
}

TEST(Exhaustive, FrozenValues)
{
    EXPECT_EQ(exhaustive_frontier(4, 0).value, 0);
    EXPECT_EQ(exhaustive_frontier(4, 0).witness.edge_count(), 0);
    EXPECT_EQ(exhaustive_frontier(5, r(2, 9)).value, r(1, 2));
    EXPECT_EQ(exhaustive_frontier(6, r(1, 12)).value, r(3, 10));
    EXPECT_THROW(exhaustive_frontier(6, r(3, 4)), std::domain_error);
}

// Brute force over all labeled graphs on up to six vertices.
TEST(Exhaustive, MatchesBruteForce)
{
    for (int n = 3; n <= 6; ++n) {
        const int pairs = n * (n - 1) / 2;
        for (const Rational &alpha : {r(0), r(1, 12), r(1, 6), r(2, 9), r(1, 3)}) {
            std::optional<Rational> best;
            for (unsigned mask = 0; mask < (1U << pairs); ++mask) {
                SmallGraph g(n);
                int bit = 0;
                for (int a = 0; a < n; ++a) {
                    for (int b = a + 1; b < n; ++b, ++bit) {
                        if ((mask >> bit) & 1U) {
                            g.add_edge(a, b);
                        }
                    }
                }
                if (Rational(g.edge_count()) < alpha * pairs || !is_seidel_minimal(g)) {
                    continue;
                }
                const Rational v = odd_triple_density(g);
                if (!best || v < *best) {
                    best = v;
                }
            }
            if (!best) {
                EXPECT_THROW(exhaustive_frontier(n, alpha), std::domain_error);
                continue;
            }
            const FrontierPoint p = exhaustive_frontier(n, alpha);
            EXPECT_EQ(p.value, *best) << n << " " << alpha;
            EXPECT_TRUE(recheck(p));
        }
    }
}

TEST(Heuristic, DeterministicAndSound)
{
    HeuristicOptions opt;
    opt.seed = 7;
    opt.iterations = 3000;
    const FrontierPoint a = heuristic_frontier(20, r(1, 12), opt);
    const FrontierPoint b = heuristic_frontier(20, r(1, 12), opt);
    EXPECT_EQ(a, b);
    EXPECT_TRUE(recheck(a));
    EXPECT_TRUE(a.verified);
    EXPECT_GE(a.value, PhiBound::thm4()(r(1, 12)).lo() - 3.0 / 20);
}

TEST(Heuristic, ZeroIterationsReturnsRepairedStart)
{
    HeuristicOptions opt;
    opt.iterations = 0;
    const FrontierPoint p = heuristic_frontier(12, r(1, 10), opt);
    EXPECT_TRUE(recheck(p));
    EXPECT_TRUE(is_seidel_minimal(p.witness));
}

TEST(Heuristic, NeverBelowExhaustive)
{
    HeuristicOptions opt;
    opt.iterations = 2000;
    for (int n = 5; n <= 9; ++n) {
        for (const Rational &alpha : {r(0), r(1, 12), r(1, 6), r(2, 9)}) {
            opt.seed = static_cast<std::uint64_t>(n * 100) + alpha.get_num().get_ui();
            const FrontierPoint h = heuristic_frontier(n, alpha, opt);
            EXPECT_GE(h.value, exhaustive_frontier(n, alpha).value) << n << " " << alpha;
            EXPECT_TRUE(recheck(h));
        }
    }
}

TEST(Heuristic, LargeOrderIsUnverified)
{
    HeuristicOptions opt;
    opt.iterations = 200;
    const FrontierPoint p = heuristic_frontier(40, r(1, 12), opt);
    EXPECT_FALSE(p.verified);
    EXPECT_TRUE(recheck(p));
    EXPECT_THROW(heuristic_frontier(65, r(0), opt), std::out_of_range);
    EXPECT_THROW(heuristic_frontier(10, r(9, 10), opt), std::runtime_error);
}

TEST(Grid, Parsing)
{
    const auto g = parse_alpha_grid("0:0.25:0.0125");
    ASSERT_EQ(g.size(), 21U);
    EXPECT_EQ(g[1], r(1, 80));
    EXPECT_EQ(g.back(), r(1, 4));
    EXPECT_EQ(parse_alpha_grid("1/12"), std::vector<Rational>{r(1, 12)});
    EXPECT_THROW(parse_alpha_grid("0:1"), std::invalid_argument);
    EXPECT_THROW(parse_alpha_grid("0:1:0"), std::invalid_argument);
    EXPECT_THROW(parse_alpha_grid("1:0:0.1"), std::invalid_argument);
}

TEST(Curve, Columns)
{
    const auto rows = frontier_curve(6, {r(0), r(1, 12), r(2, 9)});
    ASSERT_EQ(rows.size(), 3U);
    EXPECT_EQ(*rows[0].thm4->exact, 0);
    EXPECT_EQ(*rows[0].conjecture->exact, 0);
    EXPECT_NEAR(rows[1].thm4->enclosure.mid(), 0.10681, 1e-5);
    EXPECT_NEAR(rows[1].conjecture->enclosure.mid(), 0.11353, 1e-5);
    EXPECT_EQ(*rows[2].thm4->exact, r(2, 9));
    const std::string csv = frontier_csv(6, rows, FrontierMode::exhaustive);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "alpha,empirical,thm4,trivial,conjecture,n,mode,witness");
    EXPECT_NE(csv.find("1/12,3/10,0.10681284"), std::string::npos);
    EXPECT_NE(csv.find("2/9,"), std::string::npos);
}

TEST(Curve, InfeasibleRowsAreMarked)
{
    const auto rows = frontier_curve(5, {r(3, 4)});
    EXPECT_FALSE(rows[0].point.has_value());
    EXPECT_FALSE(rows[0].error.empty());
    EXPECT_FALSE(rows[0].thm4.has_value());
    EXPECT_NE(frontier_csv(5, rows, FrontierMode::exhaustive).find("3/4,NA"), std::string::npos);
}

TEST(Envelope, HoldsForSmallN)
{
    std::vector<Rational> grid;
    for (int k = 0; k <= 5; ++k) {
        grid.push_back(r(k, 24));
    }
    for (int n = 5; n <= 7; ++n) {
        for (const auto &e : envelope_check(n, grid)) {
            EXPECT_TRUE(e.pass) << n << " " << e.alpha;
        }
    }
}
