#ifndef FLAGCERT_SEARCH_HPP
#define FLAGCERT_SEARCH_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "cochain.hpp"
#include "graph.hpp"
#include "interval.hpp"
#include "parallel.hpp"
#include "rational.hpp"

namespace flagcert
{

enum class FrontierMode { exhaustive, heuristic };

inline std::string to_string(FrontierMode m) { return m == FrontierMode::exhaustive ? "exhaustive" : "heuristic"; }

inline FrontierMode parse_frontier_mode(const std::string &s)
{
    if (s == "exhaustive") {
        return FrontierMode::exhaustive;
    }
    if (s == "heuristic") {
        return FrontierMode::heuristic;
    }
    throw std::invalid_argument("frontier mode must be exhaustive or heuristic");
}

struct FrontierPoint {
    int n = 0;
    Rational alpha;
    // Odd-triple density of the witness.
    Rational value;
    LargeGraph witness;
    FrontierMode mode = FrontierMode::exhaustive;
    std::uint64_t seed = 0;
    // False when the witness is too large for the exact cut check.
    bool verified = true;

    friend bool operator==(const FrontierPoint &, const FrontierPoint &) = default;
};

inline Rational edge_floor(int n, const Rational &alpha) { return alpha * Rational(binomial(n, 2)); }

inline Rational triple_density(long odd, int n)
{
    Rational r(Integer(odd), binomial(static_cast<unsigned long>(n), 3));
    r.canonicalize();
    return r;
}

// ---------------------------------------------------------------------------
// Exhaustive search over switching classes
// ---------------------------------------------------------------------------

inline constexpr int max_exhaustive_order = 9;

// One switching class: every Seidel-minimal member has min_edges edges and
// the class-wide odd-triple count.
struct SwitchingClass {
    long odd = 0;
    int min_edges = 0;
    SmallGraph witness;
};

namespace detail
{

// Each class has a member with vertex 0 isolated, so K1 + H over all H on
// n-1 vertices reaches every class.
inline std::vector<SwitchingClass> compute_switching_classes(int n)
{
    const auto &hs = enumerate_graphs(n - 1);
    std::vector<SwitchingClass> out(hs.size());
    parallel_for(hs.size(), [&](std::size_t i) {
        SmallGraph g(n);
        for (const auto &[a, b] : hs[i].edges()) {
            g.add_edge(a + 1, b + 1);
        }
        const int m = g.edge_count();
        const std::uint32_t all = static_cast<std::uint32_t>(SmallGraph::low_bits(n));
        int best = m;
        std::uint32_t best_mask = 0;
        for (std::uint32_t s = 2; s < (1U << n); s += 2) {
            long crossing = 0;
            for (int v = 1; v < n; ++v) {
                if ((s >> v) & 1U) {
                    crossing += std::popcount(static_cast<std::uint32_t>(g.row(v)) & all & ~s);
                }
            }
            const long size = std::popcount(s);
            const int edges = static_cast<int>(m + size * (n - size) - 2 * crossing);
            if (edges < best) {
                best = edges;
                best_mask = s;
            }
        }
        out[i] = {odd_triple_count(g), best, g.switched(static_cast<SmallGraph::row_type>(best_mask))};
    });
    return out;
}

} // namespace detail

inline const std::vector<SwitchingClass> &switching_classes(int n)
{
    if (n < 3 || n > max_exhaustive_order) {
        throw std::out_of_range("exhaustive search supports 3 <= n <= " + std::to_string(max_exhaustive_order));
    }
    static std::mutex mutex;
    static std::array<std::optional<std::vector<SwitchingClass>>, max_exhaustive_order + 1> cache;
    std::lock_guard lock(mutex);
    if (!cache[n]) {
        cache[n] = detail::compute_switching_classes(n);
    }
    return *cache[n];
}

// Minimum odd-triple density over Seidel-minimal graphs on n vertices with
// at least alpha * C(n,2) edges.
inline FrontierPoint exhaustive_frontier(int n, const Rational &alpha)
{
    const auto &classes = switching_classes(n);
    const Rational floor = edge_floor(n, alpha);
    const SwitchingClass *best = nullptr;
    for (const auto &c : classes) {
        if (Rational(c.min_edges) >= floor && (best == nullptr || c.odd < best->odd)) {
            best = &c;
        }
    }
    if (best == nullptr) {
        throw std::domain_error("no Seidel-minimal graph on " + std::to_string(n) + " vertices has edge density at least " +
                                alpha.get_str());
    }
    FrontierPoint p;
    p.n = n;
    p.alpha = alpha;
    p.value = triple_density(best->odd, n);
    p.witness = best->witness.resized<64>();
    p.mode = FrontierMode::exhaustive;
    return p;
}

// ---------------------------------------------------------------------------
// Heuristic local search
// ---------------------------------------------------------------------------

namespace detail
{

// Switch single vertices while that removes edges.
inline void local_repair(LargeGraph &g)
{
    const int n = g.order();
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < n; ++v) {
            if (2 * g.degree(v) > n - 1) {
                g = g.switched(LargeGraph::bit(v));
                changed = true;
            }
        }
    }
}

// Apply violating cuts until none is left; the result is Seidel-minimal.
inline void exact_repair(LargeGraph &g)
{
    local_repair(g);
    while (const auto cut = violating_cut(g)) {
        g = g.switched(static_cast<LargeGraph::row_type>(cut->side));
        local_repair(g);
    }
}

inline bool exact_check_possible(int n) { return n <= max_exact_cut_order; }

} // namespace detail

struct HeuristicOptions {
    std::uint64_t seed = 42;
    long iterations = 20000;
    int start_attempts = 64;
    std::size_t candidates = 16;
};

inline FrontierPoint heuristic_frontier(int n, const Rational &alpha, const HeuristicOptions &opt = {})
{
    if (n < 3 || n > LargeGraph::max_order) {
        throw std::out_of_range("heuristic search supports 3 <= n <= 64");
    }
    if (opt.iterations < 0) {
        throw std::invalid_argument("iteration count must be nonnegative");
    }
    const bool exact = detail::exact_check_possible(n);
    const Rational floor = edge_floor(n, alpha);
    auto feasible = [&](const LargeGraph &g) { return Rational(g.edge_count()) >= floor; };
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> vertex(0, n - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::optional<LargeGraph> start;
    for (int attempt = 0; attempt < opt.start_attempts && !start; ++attempt) {
        LargeGraph g(n);
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                if (rng() & 1U) {
                    g.add_edge(a, b);
                }
            }
        }
        if (exact) {
            detail::exact_repair(g);
        } else {
            detail::local_repair(g);
        }
        if (feasible(g)) {
            start = g;
        }
    }
    if (!start) {
        throw std::runtime_error("no feasible start found for n = " + std::to_string(n) + ", alpha = " + alpha.get_str());
    }

    LargeGraph current = *start;
    long current_odd = odd_triple_count(current);
    long best_odd = current_odd;
    std::deque<LargeGraph> improvements;
    const double t0 = n / 2.0;
    for (long it = 0; it < opt.iterations; ++it) {
        LargeGraph cand = current;
        if (unit(rng) < 0.3) {
            cand = cand.switched(LargeGraph::bit(vertex(rng)));
        }
        int a = vertex(rng);
        int b = vertex(rng);
        while (b == a) {
            b = vertex(rng);
        }
        cand.toggle_edge(a, b);
        detail::local_repair(cand);
        const double accept_draw = unit(rng);
        if (!feasible(cand)) {
            continue;
        }
        const long odd = odd_triple_count(cand);
        const double temperature = t0 * (1.0 - static_cast<double>(it) / static_cast<double>(opt.iterations));
        const long delta = odd - current_odd;
        if (delta <= 0 || (temperature > 0 && accept_draw < std::exp(-static_cast<double>(delta) / temperature))) {
            current = cand;
            current_odd = odd;
            if (odd < best_odd) {
                best_odd = odd;
                improvements.push_back(cand);
                if (improvements.size() > opt.candidates) {
                    improvements.pop_front();
                }
            }
        }
    }

    // Newest improvement first; each candidate is made Seidel-minimal and
    // must still meet the density floor.
    improvements.push_front(*start);
    std::optional<LargeGraph> chosen;
    std::optional<long> chosen_odd;
    for (auto it = improvements.rbegin(); it != improvements.rend(); ++it) {
        LargeGraph g = *it;
        if (exact) {
            detail::exact_repair(g);
        }
        if (!feasible(g)) {
            continue;
        }
        const long odd = odd_triple_count(g);
        if (!chosen_odd || odd < *chosen_odd) {
            chosen = g;
            chosen_odd = odd;
        }
    }
    if (!chosen) {
        throw std::runtime_error("heuristic search lost feasibility");
    }
    FrontierPoint p;
    p.n = n;
    p.alpha = alpha;
    p.value = triple_density(*chosen_odd, n);
    p.witness = *chosen;
    p.mode = FrontierMode::heuristic;
    p.seed = opt.seed;
    p.verified = exact;
    return p;
}

// Independent re-check of a frontier point.
inline bool recheck(const FrontierPoint &p)
{
    if (p.witness.order() != p.n || Rational(p.witness.edge_count()) < edge_floor(p.n, p.alpha)) {
        return false;
    }
    if (odd_triple_density(p.witness) != p.value) {
        return false;
    }
    return !detail::exact_check_possible(p.n) || is_seidel_minimal(p.witness);
}

// ---------------------------------------------------------------------------
// Frontier curve
// ---------------------------------------------------------------------------

// "start:stop:step", inclusive of stop; values are exact decimals.
inline std::vector<Rational> parse_alpha_grid(const std::string &text)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) {
        parts.push_back(part);
    }
    if (parts.size() == 1) {
        return {parse_rational(parts[0])};
    }
    if (parts.size() != 3) {
        throw std::invalid_argument("alpha grid must be start:stop:step");
    }
    const Rational start = parse_rational(parts[0]);
    const Rational stop = parse_rational(parts[1]);
    const Rational step = parse_rational(parts[2]);
    if (sgn(step) <= 0 || stop < start) {
        throw std::invalid_argument("alpha grid needs step > 0 and stop >= start");
    }
    std::vector<Rational> out;
    for (Rational a = start; a <= stop; a += step) {
        out.push_back(a);
        if (out.size() > 100000) {
            throw std::invalid_argument("alpha grid has too many points");
        }
    }
    return out;
}

// 3a(1 + sqrt(1-4a))/4 on [0, 1/4].
inline std::optional<BoundValue> conjectured_value(const Rational &alpha)
{
    if (sgn(alpha) < 0 || alpha > make_rational(1, 4)) {
        return std::nullopt;
    }
    Rational root;
    if (exact_sqrt(Rational(1 - 4 * alpha), root)) {
        return BoundValue::of(make_rational(3, 4) * alpha * (1 + root));
    }
    const Interval a = Interval::enclose(alpha);
    return BoundValue{Interval(0.75) * a * (Interval(1.0) + sqrt(Interval(1.0) - Interval(4.0) * a)), std::nullopt};
}

inline std::optional<BoundValue> thm4_value(const Rational &alpha)
{
    if (sgn(alpha) < 0 || alpha > make_rational(1, 2)) {
        return std::nullopt;
    }
    const PhiBound f = PhiBound::thm4();
    if (auto e = f.exact(alpha)) {
        return BoundValue::of(*e);
    }
    return BoundValue{f(alpha), std::nullopt};
}

struct FrontierRow {
    Rational alpha;
    std::optional<FrontierPoint> point;
    std::string error;
    std::optional<BoundValue> thm4;
    std::optional<BoundValue> conjecture;
};

struct FrontierOptions {
    FrontierMode mode = FrontierMode::exhaustive;
    HeuristicOptions heuristic;
};

inline std::vector<FrontierRow> frontier_curve(int n, const std::vector<Rational> &grid, const FrontierOptions &opt = {})
{
    if (opt.mode == FrontierMode::exhaustive) {
        (void)switching_classes(n);
    }
    std::vector<FrontierRow> rows(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        FrontierRow &row = rows[i];
        row.alpha = grid[i];
        row.thm4 = thm4_value(grid[i]);
        row.conjecture = conjectured_value(grid[i]);
        try {
            row.point = opt.mode == FrontierMode::exhaustive ? exhaustive_frontier(n, grid[i])
                                                               : heuristic_frontier(n, grid[i], opt.heuristic);
        } catch (const std::domain_error &e) {
            row.error = e.what();
        } catch (const std::runtime_error &e) {
            row.error = e.what();
        }
    });
    return rows;
}

// Lower bounds print rounded down, other irrational values to nearest.
inline std::string csv_value(const std::optional<BoundValue> &v, bool lower)
{
    if (!v) {
        return "";
    }
    if (v->exact) {
        return v->exact->get_str();
    }
    if (lower) {
        return decimal_floor(v->enclosure.lo(), 12);
    }
    std::ostringstream os;
    os << std::fixed << std::setprecision(12) << v->enclosure.mid();
    return os.str();
}

inline std::string frontier_csv(int n, const std::vector<FrontierRow> &rows, FrontierMode mode)
{
    std::ostringstream os;
    os << "alpha,empirical,thm4,trivial,conjecture,n,mode,witness\n";
    for (const auto &r : rows) {
        os << r.alpha.get_str() << ',' << (r.point ? r.point->value.get_str() : "NA") << ',' << csv_value(r.thm4, true)
           << ',' << r.alpha.get_str() << ',' << csv_value(r.conjecture, false) << ',' << n << ',' << to_string(mode)
           << ',' << (r.point ? to_text(r.point->witness) : "") << '\n';
    }
    return os.str();
}

// Empirical minima must stay above the thm4 phi2 bound minus slack/n.
struct EnvelopeEntry {
    int n = 0;
    Rational alpha;
    Rational empirical;
    Interval bound;
    bool pass = false;
};

inline std::vector<EnvelopeEntry> envelope_check(int n, const std::vector<Rational> &grid, const Rational &slack = 3)
{
    std::vector<EnvelopeEntry> out;
    const Interval margin = Interval::enclose(Rational(slack / n));
    for (const auto &row : frontier_curve(n, grid)) {
        EnvelopeEntry e;
        e.n = n;
        e.alpha = row.alpha;
        if (!row.point || !row.thm4) {
            out.push_back(e);
            continue;
        }
        e.empirical = row.point->value;
        e.bound = row.thm4->enclosure - margin;
        e.pass = Interval::enclose(e.empirical).lo() >= e.bound.hi();
        out.push_back(e);
    }
    return out;
}

} // namespace flagcert

#endif
