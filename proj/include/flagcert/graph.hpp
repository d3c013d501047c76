#ifndef FLAGCERT_GRAPH_HPP
#define FLAGCERT_GRAPH_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace flagcert
{

// Simple undirected graph on vertices 0..n-1 stored as one adjacency bit-row
// per vertex. MaxN bounds the order; the row type is the narrowest unsigned
// integer holding MaxN bits.
template <std::size_t MaxN>
class BasicGraph
{
public:
    using row_type = std::conditional_t<(MaxN <= 16), std::uint16_t,
                                        std::conditional_t<(MaxN <= 32), std::uint32_t, std::uint64_t>>;
    static constexpr int max_order = static_cast<int>(MaxN);

    BasicGraph() = default;
    explicit BasicGraph(int n) : n_(n)
    {
        if (n < 0 || n > max_order) {
            throw std::out_of_range("graph order " + std::to_string(n) + " outside 0.." + std::to_string(max_order));
        }
    }

    static BasicGraph from_edges(int n, std::span<const std::pair<int, int>> edges)
    {
        BasicGraph g(n);
        for (const auto &[a, b] : edges) {
            g.add_edge(a, b);
        }
        return g;
    }
    static BasicGraph from_edges(int n, std::initializer_list<std::pair<int, int>> edges)
    {
        return from_edges(n, std::span<const std::pair<int, int>>(edges.begin(), edges.size()));
    }

    int order() const { return n_; }
    row_type row(int v) const { return rows_[v]; }
    row_type vertex_mask() const { return n_ == 0 ? row_type{0} : static_cast<row_type>(low_bits(n_)); }

    bool adjacent(int a, int b) const { return (rows_[a] >> b) & 1U; }

    void add_edge(int a, int b) { set_edge(a, b, true); }
    void set_edge(int a, int b, bool on)
    {
        check_pair(a, b);
        if (on) {
            rows_[a] |= bit(b);
            rows_[b] |= bit(a);
        } else {
            rows_[a] &= static_cast<row_type>(~bit(b));
            rows_[b] &= static_cast<row_type>(~bit(a));
        }
    }
    void toggle_edge(int a, int b)
    {
        check_pair(a, b);
        rows_[a] ^= bit(b);
        rows_[b] ^= bit(a);
    }

    int degree(int v) const { return std::popcount(rows_[v]); }
    int edge_count() const
    {
        int twice = 0;
        for (int v = 0; v < n_; ++v) {
            twice += std::popcount(rows_[v]);
        }
        return twice / 2;
    }

    std::vector<std::pair<int, int>> edges() const
    {
        std::vector<std::pair<int, int>> out;
        for (int a = 0; a < n_; ++a) {
            for (int b = a + 1; b < n_; ++b) {
                if (adjacent(a, b)) {
                    out.emplace_back(a, b);
                }
            }
        }
        return out;
    }

    BasicGraph complement() const
    {
        BasicGraph c(n_);
        const row_type all = vertex_mask();
        for (int v = 0; v < n_; ++v) {
            c.rows_[v] = static_cast<row_type>(all & ~rows_[v] & ~bit(v));
        }
        return c;
    }

    // Switch at the vertex set given by mask: every pair crossing the cut
    // (mask, complement) flips between edge and non-edge.
    BasicGraph switched(row_type mask) const
    {
        BasicGraph s = *this;
        const row_type all = vertex_mask();
        mask &= all;
        for (int v = 0; v < n_; ++v) {
            const row_type other = ((mask >> v) & 1U) ? static_cast<row_type>(all & ~mask) : mask;
            s.rows_[v] ^= other;
        }
        return s;
    }

    // Vertex v of the result is vertex perm_inv[v] of this graph, i.e. the old
    // vertex u moves to position perm[u].
    BasicGraph relabeled(std::span<const int> perm) const
    {
        BasicGraph r(n_);
        for (int a = 0; a < n_; ++a) {
            for (int b = a + 1; b < n_; ++b) {
                if (adjacent(a, b)) {
                    r.add_edge(perm[a], perm[b]);
                }
            }
        }
        return r;
    }

    // Subgraph induced by the listed vertices, renumbered in list order.
    BasicGraph induced(std::span<const int> vertices) const
    {
        BasicGraph s(static_cast<int>(vertices.size()));
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            for (std::size_t j = i + 1; j < vertices.size(); ++j) {
                if (adjacent(vertices[i], vertices[j])) {
                    s.add_edge(static_cast<int>(i), static_cast<int>(j));
                }
            }
        }
        return s;
    }

    BasicGraph induced_mask(row_type mask) const
    {
        std::array<int, MaxN> vs{};
        int k = 0;
        for (int v = 0; v < n_; ++v) {
            if ((mask >> v) & 1U) {
                vs[k++] = v;
            }
        }
        return induced(std::span<const int>(vs.data(), static_cast<std::size_t>(k)));
    }

    friend bool operator==(const BasicGraph &a, const BasicGraph &b)
    {
        if (a.n_ != b.n_) {
            return false;
        }
        return std::equal(a.rows_.begin(), a.rows_.begin() + a.n_, b.rows_.begin());
    }
    friend bool operator<(const BasicGraph &a, const BasicGraph &b)
    {
        if (a.n_ != b.n_) {
            return a.n_ < b.n_;
        }
        return std::lexicographical_compare(a.rows_.begin(), a.rows_.begin() + a.n_, b.rows_.begin(),
                                            b.rows_.begin() + b.n_);
    }

    template <std::size_t OtherN>
    BasicGraph<OtherN> resized() const
    {
        BasicGraph<OtherN> g(n_);
        for (const auto &[a, b] : edges()) {
            g.add_edge(a, b);
        }
        return g;
    }

    static constexpr row_type bit(int v) { return static_cast<row_type>(row_type{1} << v); }
    static constexpr std::uint64_t low_bits(int k) { return k >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1); }

private:
    void check_pair(int a, int b) const
    {
        if (a < 0 || b < 0 || a >= n_ || b >= n_ || a == b) {
            throw std::out_of_range("bad vertex pair (" + std::to_string(a) + "," + std::to_string(b) + ") for order " +
                                    std::to_string(n_));
        }
    }

    int n_ = 0;
    std::array<row_type, MaxN> rows_{};
};

using SmallGraph = BasicGraph<12>;
using LargeGraph = BasicGraph<64>;

namespace named
{
inline SmallGraph empty(int n) { return SmallGraph(n); }
inline SmallGraph complete(int n) { return SmallGraph(n).complement(); }
inline SmallGraph path(int n)
{
    SmallGraph g(n);
    for (int v = 0; v + 1 < n; ++v) {
        g.add_edge(v, v + 1);
    }
    return g;
}
inline SmallGraph cycle(int n)
{
    SmallGraph g = path(n);
    if (n >= 3) {
        g.add_edge(0, n - 1);
    }
    return g;
}
} // namespace named

// ---------------------------------------------------------------------------
// Canonical labeling
// ---------------------------------------------------------------------------

// Canonical relabeling of a graph. Two graphs (with equal initial colourings)
// have equal forms iff they are isomorphic by a colour-preserving map.
class CanonicalForm
{
public:
    CanonicalForm() = default;
    explicit CanonicalForm(SmallGraph g) : graph_(g) {}
    const SmallGraph &graph() const { return graph_; }
    friend bool operator==(const CanonicalForm &, const CanonicalForm &) = default;
    friend bool operator<(const CanonicalForm &a, const CanonicalForm &b) { return a.graph_ < b.graph_; }

private:
    SmallGraph graph_;
};

struct CanonicalLabeling {
    CanonicalForm form;
    // perm[v] is the canonical position of vertex v.
    std::array<int, SmallGraph::max_order> perm{};
};

namespace detail
{

class Canonizer
{
public:
    explicit Canonizer(const SmallGraph &g) : g_(g), n_(g.order()) {}

    CanonicalLabeling run(std::vector<int> colors)
    {
        normalize(colors);
        search(colors);
        return {CanonicalForm(best_), best_perm_};
    }

private:
    static void normalize(std::vector<int> &colors)
    {
        std::vector<int> sorted = colors;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (auto &c : colors) {
            c = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), c) - sorted.begin());
        }
    }

    // Equitable refinement; colour order is preserved so earlier cells stay
    // earlier.
    int refine(std::vector<int> &colors) const
    {
        int count = 1 + *std::max_element(colors.begin(), colors.end());
        for (;;) {
            std::vector<std::vector<int>> sig(static_cast<std::size_t>(n_));
            for (int v = 0; v < n_; ++v) {
                std::vector<int> s(static_cast<std::size_t>(count) + 1, 0);
                s[0] = colors[v];
                for (int u = 0; u < n_; ++u) {
                    if (g_.adjacent(v, u)) {
                        ++s[static_cast<std::size_t>(colors[u]) + 1];
                    }
                }
                sig[v] = std::move(s);
            }
            std::vector<std::vector<int>> keys = sig;
            std::sort(keys.begin(), keys.end());
            keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
            for (int v = 0; v < n_; ++v) {
                colors[v] = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), sig[v]) - keys.begin());
            }
            const int next = static_cast<int>(keys.size());
            if (next == count) {
                return count;
            }
            count = next;
        }
    }

    bool twins(int u, int v) const
    {
        const auto mu = g_.row(u) & static_cast<SmallGraph::row_type>(~SmallGraph::bit(v));
        const auto mv = g_.row(v) & static_cast<SmallGraph::row_type>(~SmallGraph::bit(u));
        return mu == mv;
    }

    void search(std::vector<int> colors)
    {
        const int count = n_ == 0 ? 0 : refine(colors);
        if (count == n_) {
            std::array<int, SmallGraph::max_order> perm{};
            for (int v = 0; v < n_; ++v) {
                perm[v] = colors[v];
            }
            SmallGraph candidate = g_.relabeled(std::span<const int>(perm.data(), static_cast<std::size_t>(n_)));
            if (!have_best_ || candidate < best_) {
                best_ = candidate;
                best_perm_ = perm;
                have_best_ = true;
            }
            return;
        }
        // First non-singleton cell.
        std::vector<int> size(static_cast<std::size_t>(count), 0);
        for (int v = 0; v < n_; ++v) {
            ++size[static_cast<std::size_t>(colors[v])];
        }
        int target = 0;
        while (size[static_cast<std::size_t>(target)] < 2) {
            ++target;
        }
        std::vector<int> explored;
        for (int v = 0; v < n_; ++v) {
            if (colors[v] != target) {
                continue;
            }
            if (std::any_of(explored.begin(), explored.end(), [&](int u) { return twins(u, v); })) {
                continue;
            }
            explored.push_back(v);
            std::vector<int> next(colors.size());
            for (int u = 0; u < n_; ++u) {
                next[u] = 2 * colors[u] + (u == v ? 0 : 1);
            }
            normalize(next);
            search(std::move(next));
        }
    }

    const SmallGraph &g_;
    int n_;
    SmallGraph best_;
    std::array<int, SmallGraph::max_order> best_perm_{};
    bool have_best_ = false;
};

} // namespace detail

// Canonical labeling relative to an initial vertex colouring; vertices with
// smaller colours receive smaller canonical positions.
inline CanonicalLabeling canonical_labeling(const SmallGraph &g, std::span<const int> colors)
{
    if (static_cast<int>(colors.size()) != g.order()) {
        throw std::invalid_argument("colouring size does not match graph order");
    }
    return detail::Canonizer(g).run(std::vector<int>(colors.begin(), colors.end()));
}

inline CanonicalLabeling canonical_labeling(const SmallGraph &g)
{
    std::vector<int> colors(static_cast<std::size_t>(g.order()), 0);
    return canonical_labeling(g, colors);
}

inline CanonicalForm canonicalize(const SmallGraph &g)
{
    return canonical_labeling(g).form;
}

inline bool isomorphic(const SmallGraph &a, const SmallGraph &b)
{
    return a.order() == b.order() && a.edge_count() == b.edge_count() && canonicalize(a) == canonicalize(b);
}

// ---------------------------------------------------------------------------
// Enumeration and catalogs
// ---------------------------------------------------------------------------

inline constexpr int max_enumeration_order = 8;

namespace detail
{

inline std::vector<SmallGraph> enumerate_uncached(int n, const std::vector<SmallGraph> &smaller)
{
    if (n == 1) {
        return {SmallGraph(1)};
    }
    std::map<std::pair<int, CanonicalForm>, SmallGraph> seen;
    for (const SmallGraph &base : smaller) {
        for (unsigned nbrs = 0; nbrs < (1U << (n - 1)); ++nbrs) {
            SmallGraph g(n);
            for (const auto &[a, b] : base.edges()) {
                g.add_edge(a, b);
            }
            for (int v = 0; v < n - 1; ++v) {
                if ((nbrs >> v) & 1U) {
                    g.add_edge(v, n - 1);
                }
            }
            CanonicalForm c = canonicalize(g);
            seen.emplace(std::make_pair(g.edge_count(), c), c.graph());
        }
    }
    std::vector<SmallGraph> out;
    out.reserve(seen.size());
    for (auto &entry : seen) {
        out.push_back(entry.second);
    }
    return out;
}

} // namespace detail

// All non-isomorphic graphs on n vertices as canonical representatives,
// ordered by (edge count, canonical form). Results are cached.
inline const std::vector<SmallGraph> &enumerate_graphs(int n)
{
    if (n < 1 || n > max_enumeration_order) {
        throw std::out_of_range("enumerate_graphs: order " + std::to_string(n) + " outside 1.." +
                                std::to_string(max_enumeration_order));
    }
    static std::array<std::once_flag, max_enumeration_order + 1> once;
    static std::array<std::vector<SmallGraph>, max_enumeration_order + 1> cache;
    std::call_once(once[static_cast<std::size_t>(n)], [n] {
        const std::vector<SmallGraph> empty;
        cache[static_cast<std::size_t>(n)] =
            detail::enumerate_uncached(n, n == 1 ? empty : enumerate_graphs(n - 1));
    });
    return cache[static_cast<std::size_t>(n)];
}

// The eleven 4-vertex graphs in the fixed order F1..F11: edgeless, one edge,
// two disjoint edges, P3 plus isolated vertex, K3 plus isolated vertex, P4,
// star K_{1,3}, C4, paw, K4 minus an edge, K4.
inline const std::vector<SmallGraph> &catalog_F4()
{
    static const std::vector<SmallGraph> catalog = [] {
        using E = std::initializer_list<std::pair<int, int>>;
        const std::array<E, 11> edges = {
            E{},
            E{{0, 3}},
            E{{0, 3}, {1, 2}},
            E{{0, 3}, {3, 2}},
            E{{0, 3}, {0, 1}, {1, 3}},
            E{{0, 3}, {3, 2}, {2, 1}},
            E{{0, 3}, {3, 2}, {1, 3}},
            E{{0, 3}, {3, 2}, {1, 2}, {1, 0}},
            E{{0, 3}, {3, 1}, {1, 0}, {1, 2}},
            E{{0, 3}, {3, 2}, {3, 1}, {1, 2}, {1, 0}},
            E{{0, 3}, {3, 2}, {3, 1}, {1, 2}, {1, 0}, {2, 0}},
        };
        std::vector<SmallGraph> out;
        for (const auto &e : edges) {
            out.push_back(SmallGraph::from_edges(4, e));
        }
        return out;
    }();
    return catalog;
}

// Number of |V(h)|-subsets of V(g) inducing a copy of h.
inline long count_induced(const SmallGraph &h, const SmallGraph &g)
{
    const int k = h.order();
    const int n = g.order();
    if (k > n) {
        throw std::invalid_argument("count_induced: pattern larger than host");
    }
    const int edges = h.edge_count();
    const CanonicalForm target = canonicalize(h);
    long count = 0;
    for (unsigned mask = 0; mask < (1U << n); ++mask) {
        if (std::popcount(mask) != k) {
            continue;
        }
        const SmallGraph sub = g.induced_mask(static_cast<SmallGraph::row_type>(mask));
        if (sub.edge_count() == edges && canonicalize(sub) == target) {
            ++count;
        }
    }
    return count;
}

// ---------------------------------------------------------------------------
// Text formats
// ---------------------------------------------------------------------------

// "n:edge-list", e.g. "4:01,12,23". Orders above 10 use "a-b" pairs.
template <std::size_t MaxN>
std::string to_text(const BasicGraph<MaxN> &g)
{
    std::string out = std::to_string(g.order()) + ":";
    bool first = true;
    for (const auto &[a, b] : g.edges()) {
        if (!first) {
            out += ',';
        }
        first = false;
        if (g.order() <= 10) {
            out += static_cast<char>('0' + a);
            out += static_cast<char>('0' + b);
        } else {
            out += std::to_string(a) + "-" + std::to_string(b);
        }
    }
    return out;
}

template <class Graph = SmallGraph>
Graph parse_graph(std::string_view text)
{
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw std::invalid_argument("graph text must look like n:edge-list");
    }
    int n = 0;
    try {
        n = std::stoi(std::string(text.substr(0, colon)));
    } catch (const std::exception &) {
        throw std::invalid_argument("bad vertex count in graph text");
    }
    Graph g(n);
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        std::string_view tok = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        while (!tok.empty() && tok.front() == ' ') {
            tok.remove_prefix(1);
        }
        while (!tok.empty() && tok.back() == ' ') {
            tok.remove_suffix(1);
        }
        if (tok.empty()) {
            continue;
        }
        int a = 0;
        int b = 0;
        const auto dash = tok.find('-');
        try {
            if (dash != std::string_view::npos) {
                a = std::stoi(std::string(tok.substr(0, dash)));
                b = std::stoi(std::string(tok.substr(dash + 1)));
            } else if (tok.size() == 2 && std::isdigit(static_cast<unsigned char>(tok[0])) &&
                       std::isdigit(static_cast<unsigned char>(tok[1]))) {
                a = tok[0] - '0';
                b = tok[1] - '0';
            } else {
                throw std::invalid_argument("edge");
            }
        } catch (const std::exception &) {
            throw std::invalid_argument("bad edge token '" + std::string(tok) + "'");
        }
        g.add_edge(a, b);
    }
    return g;
}

// graph6 for orders up to 62.
template <std::size_t MaxN>
std::string to_graph6(const BasicGraph<MaxN> &g)
{
    const int n = g.order();
    if (n > 62) {
        throw std::out_of_range("graph6 writer supports orders up to 62");
    }
    std::string out(1, static_cast<char>(63 + n));
    int acc = 0;
    int bits = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++bits == 6) {
                out += static_cast<char>(63 + acc);
                acc = 0;
                bits = 0;
            }
        }
    }
    if (bits > 0) {
        out += static_cast<char>(63 + (acc << (6 - bits)));
    }
    return out;
}

template <class Graph = SmallGraph>
Graph parse_graph6(std::string_view text)
{
    if (text.empty() || text[0] < 63 || text[0] > 63 + 62) {
        throw std::invalid_argument("bad graph6 header");
    }
    const int n = text[0] - 63;
    Graph g(n);
    std::size_t pos = 1;
    int bits = 0;
    int cur = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            if (bits == 0) {
                if (pos >= text.size() || text[pos] < 63 || text[pos] > 126) {
                    throw std::invalid_argument("truncated graph6 string");
                }
                cur = text[pos++] - 63;
                bits = 6;
            }
            --bits;
            if ((cur >> bits) & 1) {
                g.add_edge(i, j);
            }
        }
    }
    if (pos != text.size()) {
        throw std::invalid_argument("trailing bytes in graph6 string");
    }
    return g;
}

} // namespace flagcert

#endif
