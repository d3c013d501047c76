#ifndef FLAGCERT_FLAG_HPP
#define FLAGCERT_FLAG_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "rational.hpp"

namespace flagcert
{

inline constexpr int max_unlabeled_level = 7;
inline constexpr int max_labeled_level = 6;

// A type: a graph whose vertex i carries label i.
struct TypeSigma {
    SmallGraph graph;

    TypeSigma() = default;
    explicit TypeSigma(SmallGraph g) : graph(g) {}

    int size() const { return graph.order(); }
    bool unlabeled() const { return graph.order() == 0; }
    std::string key() const { return to_text(graph); }

    static TypeSigma none() { return TypeSigma(SmallGraph(0)); }
    static TypeSigma vertex() { return TypeSigma(SmallGraph(1)); }
    static TypeSigma edge() { return TypeSigma(named::complete(2)); }
    static TypeSigma non_edge() { return TypeSigma(named::empty(2)); }

    friend bool operator==(const TypeSigma &a, const TypeSigma &b) { return a.graph == b.graph; }
};

namespace detail
{

inline SmallGraph flag_canonical(const SmallGraph &g, int k)
{
    std::vector<int> colors(static_cast<std::size_t>(g.order()));
    for (int v = 0; v < g.order(); ++v) {
        colors[static_cast<std::size_t>(v)] = v < k ? v : k;
    }
    return canonical_labeling(g, colors).form.graph();
}

} // namespace detail

// A sigma-flag up to label-preserving isomorphism. Vertices 0..k-1 are the
// labeled ones; the stored graph is the canonical representative, so two
// flags are equal exactly when they are isomorphic as flags.
class Flag
{
public:
    Flag() = default;
    Flag(const SmallGraph &g, int labels) : labels_(labels)
    {
        if (labels < 0 || labels > g.order()) {
            throw std::invalid_argument("flag with more labels than vertices");
        }
        graph_ = detail::flag_canonical(g, labels);
    }

    // roots[i] is the vertex receiving label i.
    static Flag from_roots(const SmallGraph &g, std::span<const int> roots)
    {
        const int n = g.order();
        std::vector<int> order(roots.begin(), roots.end());
        std::vector<bool> used(static_cast<std::size_t>(n), false);
        for (int r : roots) {
            if (r < 0 || r >= n || used[static_cast<std::size_t>(r)]) {
                throw std::invalid_argument("flag roots must be distinct vertices");
            }
            used[static_cast<std::size_t>(r)] = true;
        }
        for (int v = 0; v < n; ++v) {
            if (!used[static_cast<std::size_t>(v)]) {
                order.push_back(v);
            }
        }
        return Flag(g.induced(order), static_cast<int>(roots.size()));
    }

    const SmallGraph &graph() const { return graph_; }
    int order() const { return graph_.order(); }
    int labels() const { return labels_; }
    TypeSigma type() const
    {
        std::vector<int> vs(static_cast<std::size_t>(labels_));
        std::iota(vs.begin(), vs.end(), 0);
        return TypeSigma(graph_.induced(vs));
    }

    friend bool operator==(const Flag &a, const Flag &b) { return a.labels_ == b.labels_ && a.graph_ == b.graph_; }
    friend bool operator<(const Flag &a, const Flag &b)
    {
        if (a.labels_ != b.labels_) {
            return a.labels_ < b.labels_;
        }
        return a.graph_ < b.graph_;
    }

private:
    SmallGraph graph_;
    int labels_ = 0;
};

// ---------------------------------------------------------------------------
// Bases
// ---------------------------------------------------------------------------

struct FlagBasis {
    TypeSigma sigma;
    int level = 0;
    std::vector<Flag> flags;
    std::map<SmallGraph, int> index;

    std::size_t size() const { return flags.size(); }

    int find(const Flag &f) const
    {
        const auto it = index.find(f.graph());
        if (it == index.end() || f.labels() != sigma.size()) {
            throw std::invalid_argument("flag is not in the basis of level " + std::to_string(level));
        }
        return it->second;
    }
};

namespace detail
{

inline std::shared_ptr<const FlagBasis> build_basis(const TypeSigma &sigma, int level)
{
    auto basis = std::make_shared<FlagBasis>();
    basis->sigma = sigma;
    basis->level = level;
    const int k = sigma.size();
    if (k == 0) {
        const auto &graphs = level == 4 ? catalog_F4() : enumerate_graphs(level);
        for (const auto &g : graphs) {
            basis->flags.emplace_back(g, 0);
        }
    } else {
        std::vector<std::pair<int, int>> free_pairs;
        for (int a = 0; a < level; ++a) {
            for (int b = a + 1; b < level; ++b) {
                if (b >= k) {
                    free_pairs.emplace_back(a, b);
                }
            }
        }
        std::map<std::pair<int, SmallGraph>, Flag> seen;
        const std::uint32_t count = std::uint32_t{1} << free_pairs.size();
        for (std::uint32_t mask = 0; mask < count; ++mask) {
            SmallGraph g(level);
            for (const auto &[a, b] : sigma.graph.edges()) {
                g.add_edge(a, b);
            }
            for (std::size_t i = 0; i < free_pairs.size(); ++i) {
                if ((mask >> i) & 1U) {
                    g.add_edge(free_pairs[i].first, free_pairs[i].second);
                }
            }
            Flag f(g, k);
            seen.emplace(std::make_pair(g.edge_count(), f.graph()), f);
        }
        for (auto &entry : seen) {
            basis->flags.push_back(entry.second);
        }
    }
    for (std::size_t i = 0; i < basis->flags.size(); ++i) {
        basis->index.emplace(basis->flags[i].graph(), static_cast<int>(i));
    }
    return basis;
}

} // namespace detail

// All sigma-flags on `level` vertices. The unlabeled basis at level 4 is the
// fixed F1..F11 catalog; other bases are ordered by (edge count, canonical
// form). Bases are built once and shared.
inline const FlagBasis &flag_basis(const TypeSigma &sigma, int level)
{
    const int k = sigma.size();
    const int cap = k == 0 ? max_unlabeled_level : max_labeled_level;
    if (level < std::max(k, 1) || level > cap) {
        throw std::out_of_range("flag level " + std::to_string(level) + " outside " + std::to_string(std::max(k, 1)) +
                                ".." + std::to_string(cap));
    }
    static std::mutex mutex;
    static std::map<std::pair<std::string, int>, std::shared_ptr<const FlagBasis>> cache;
    const auto key = std::make_pair(sigma.key(), level);
    {
        std::lock_guard lock(mutex);
        const auto it = cache.find(key);
        if (it != cache.end()) {
            return *it->second;
        }
    }
    auto built = detail::build_basis(sigma, level);
    std::lock_guard lock(mutex);
    return *cache.emplace(key, std::move(built)).first->second;
}

inline const FlagBasis &graph_basis(int level) { return flag_basis(TypeSigma::none(), level); }

// ---------------------------------------------------------------------------
// Densities
// ---------------------------------------------------------------------------

namespace detail
{

inline void check_type(const Flag &f, const TypeSigma &sigma, const char *what)
{
    if (f.labels() != sigma.size() || !(f.type() == sigma)) {
        throw std::invalid_argument(std::string(what) + ": flag type mismatch");
    }
}

// Calls visit(subset) for every size-r subset of `pool`, in lexicographic
// order.
template <class Visit>
void for_each_subset(const std::vector<int> &pool, int r, Visit &&visit)
{
    const int n = static_cast<int>(pool.size());
    if (r > n) {
        return;
    }
    std::vector<int> idx(static_cast<std::size_t>(r));
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<int> chosen(static_cast<std::size_t>(r));
    for (;;) {
        for (int i = 0; i < r; ++i) {
            chosen[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        }
        visit(chosen);
        int i = r - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - r + i) {
            --i;
        }
        if (i < 0) {
            return;
        }
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < r; ++j) {
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

inline std::vector<int> with_labels(int k, const std::vector<int> &free)
{
    std::vector<int> vs(static_cast<std::size_t>(k));
    std::iota(vs.begin(), vs.end(), 0);
    vs.insert(vs.end(), free.begin(), free.end());
    return vs;
}

inline std::vector<int> free_vertices(int k, int n)
{
    std::vector<int> pool(static_cast<std::size_t>(n - k));
    std::iota(pool.begin(), pool.end(), k);
    return pool;
}

} // namespace detail

// Coordinates of `host` in the basis of its type at a smaller level: the
// probability that a random level-subset (always containing the labeled
// vertices) induces each basis flag.
inline std::vector<Rational> density_profile(const Flag &host, int level)
{
    const int k = host.labels();
    const int n = host.order();
    if (level > n) {
        throw std::invalid_argument("density_profile: level exceeds host order");
    }
    const FlagBasis &basis = flag_basis(host.type(), level);
    std::vector<long> counts(basis.size(), 0);
    long total = 0;
    detail::for_each_subset(detail::free_vertices(k, n), level - k, [&](const std::vector<int> &chosen) {
        const Flag sub(host.graph().induced(detail::with_labels(k, chosen)), k);
        ++counts[static_cast<std::size_t>(basis.find(sub))];
        ++total;
    });
    std::vector<Rational> out(basis.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        out[i] = Rational(counts[i], total);
        out[i].canonicalize();
    }
    return out;
}

// Joint counts for ordered pairs of disjoint free subsets of sizes
// (level1 - k, level2 - k); entry (i, j) counts pairs inducing basis flags
// i and j. Returns the counts and the total number of pairs.
inline std::pair<std::map<std::pair<int, int>, long>, long> split_profile(const Flag &host, int level1, int level2)
{
    const int k = host.labels();
    const int n = host.order();
    if (level1 + level2 - k > n) {
        throw std::invalid_argument("split_profile: levels exceed host order");
    }
    const TypeSigma sigma = host.type();
    const FlagBasis &b1 = flag_basis(sigma, level1);
    const FlagBasis &b2 = flag_basis(sigma, level2);
    std::map<std::pair<int, int>, long> counts;
    long total = 0;
    const auto pool = detail::free_vertices(k, n);
    detail::for_each_subset(pool, level1 - k, [&](const std::vector<int> &first) {
        const int i = b1.find(Flag(host.graph().induced(detail::with_labels(k, first)), k));
        std::vector<int> rest;
        std::set_difference(pool.begin(), pool.end(), first.begin(), first.end(), std::back_inserter(rest));
        detail::for_each_subset(rest, level2 - k, [&](const std::vector<int> &second) {
            const int j = b2.find(Flag(host.graph().induced(detail::with_labels(k, second)), k));
            ++counts[{i, j}];
            ++total;
        });
    });
    return {counts, total};
}

inline Rational flag_p(const Flag &f, const Flag &host)
{
    detail::check_type(f, host.type(), "flag_p");
    if (f.order() > host.order()) {
        throw std::invalid_argument("flag_p: pattern larger than host");
    }
    const FlagBasis &basis = flag_basis(host.type(), f.order());
    return density_profile(host, f.order())[static_cast<std::size_t>(basis.find(f))];
}

inline Rational flag_p2(const Flag &f1, const Flag &f2, const Flag &host)
{
    const TypeSigma sigma = host.type();
    detail::check_type(f1, sigma, "flag_p2");
    detail::check_type(f2, sigma, "flag_p2");
    const auto [counts, total] = split_profile(host, f1.order(), f2.order());
    const int i = flag_basis(sigma, f1.order()).find(f1);
    const int j = flag_basis(sigma, f2.order()).find(f2);
    const auto it = counts.find({i, j});
    Rational r(it == counts.end() ? 0 : it->second, total);
    r.canonicalize();
    return r;
}

inline Rational p(const SmallGraph &h, const SmallGraph &host)
{
    if (h.order() > host.order()) {
        throw std::invalid_argument("p: pattern larger than host");
    }
    return flag_p(Flag(h, 0), Flag(host, 0));
}

inline Rational p2(const SmallGraph &h1, const SmallGraph &h2, const SmallGraph &host)
{
    if (h1.order() + h2.order() > host.order()) {
        throw std::invalid_argument("p2: patterns larger than host");
    }
    return flag_p2(Flag(h1, 0), Flag(h2, 0), Flag(host, 0));
}

// ---------------------------------------------------------------------------
// Vectors
// ---------------------------------------------------------------------------

// Element of the flag algebra written in the basis flag_basis(sigma, level).
// T is the coefficient ring: Rational, RatPoly (polynomials in a symbolic
// parameter) or SqrtExpr.
template <class T>
struct DensityVector {
    TypeSigma sigma;
    int level = 0;
    std::vector<T> coords;

    DensityVector() = default;
    DensityVector(TypeSigma s, int l) : sigma(std::move(s)), level(l)
    {
        coords.assign(flag_basis(sigma, level).size(), T(0));
    }
    DensityVector(TypeSigma s, int l, std::vector<T> c) : sigma(std::move(s)), level(l), coords(std::move(c))
    {
        if (coords.size() != flag_basis(sigma, level).size()) {
            throw std::invalid_argument("density vector has " + std::to_string(coords.size()) +
                                        " coordinates, basis has " +
                                        std::to_string(flag_basis(sigma, level).size()));
        }
    }

    const FlagBasis &basis() const { return flag_basis(sigma, level); }
    std::size_t size() const { return coords.size(); }
    T &operator[](std::size_t i) { return coords[i]; }
    const T &operator[](std::size_t i) const { return coords[i]; }
    T &at(const Flag &f) { return coords[static_cast<std::size_t>(basis().find(f))]; }

    void check_compatible(const DensityVector &o) const
    {
        if (!(sigma == o.sigma) || level != o.level) {
            throw std::invalid_argument("density vectors live in different bases");
        }
    }

    friend DensityVector operator+(DensityVector a, const DensityVector &b)
    {
        a.check_compatible(b);
        for (std::size_t i = 0; i < a.coords.size(); ++i) {
            a.coords[i] += b.coords[i];
        }
        return a;
    }
    friend DensityVector operator-(DensityVector a, const DensityVector &b)
    {
        a.check_compatible(b);
        for (std::size_t i = 0; i < a.coords.size(); ++i) {
            a.coords[i] -= b.coords[i];
        }
        return a;
    }
    friend DensityVector operator*(const T &c, DensityVector a)
    {
        for (auto &x : a.coords) {
            x = c * x;
        }
        return a;
    }
    friend bool operator==(const DensityVector &a, const DensityVector &b)
    {
        return a.sigma == b.sigma && a.level == b.level && a.coords == b.coords;
    }

    template <class U, class F>
    DensityVector<U> map(F &&f) const
    {
        std::vector<U> out;
        out.reserve(coords.size());
        for (const auto &x : coords) {
            out.push_back(f(x));
        }
        return DensityVector<U>(sigma, level, std::move(out));
    }
};

template <class T>
DensityVector<T> unit_vector(const Flag &f, const T &coeff = T(1))
{
    DensityVector<T> v(f.type(), f.order());
    v.at(f) = coeff;
    return v;
}

// Re-express a vector at a higher level using p(F, H) for every basis flag H.
template <class T>
DensityVector<T> lift(const DensityVector<T> &x, int level)
{
    if (level < x.level) {
        throw std::invalid_argument("lift: target level below source level");
    }
    DensityVector<T> out(x.sigma, level);
    const FlagBasis &target = out.basis();
    for (std::size_t h = 0; h < target.size(); ++h) {
        const auto prof = density_profile(target.flags[h], x.level);
        T acc(0);
        for (std::size_t i = 0; i < prof.size(); ++i) {
            if (sgn(prof[i]) != 0) {
                acc += x.coords[i] * T(prof[i]);
            }
        }
        out.coords[h] = acc;
    }
    return out;
}

inline DensityVector<Rational> flag_expand(const Flag &f, int level)
{
    return lift(unit_vector<Rational>(f), level);
}

inline DensityVector<Rational> expand(const SmallGraph &h, int level)
{
    if (h.order() > level) {
        throw std::invalid_argument("expand: graph larger than the level");
    }
    return flag_expand(Flag(h, 0), level);
}

// Product of two vectors of the same type at the given level (default: the
// smallest level holding both, level1 + level2 - k).
template <class T>
DensityVector<T> product(const DensityVector<T> &x, const DensityVector<T> &y, int level = -1)
{
    if (!(x.sigma == y.sigma)) {
        throw std::invalid_argument("product: flags of different types");
    }
    const int k = x.sigma.size();
    const int minimal = x.level + y.level - k;
    if (level < 0) {
        level = minimal;
    }
    if (level < minimal) {
        throw std::invalid_argument("product: level too small for the factors");
    }
    DensityVector<T> out(x.sigma, level);
    const FlagBasis &target = out.basis();
    for (std::size_t h = 0; h < target.size(); ++h) {
        const auto [counts, total] = split_profile(target.flags[h], x.level, y.level);
        T acc(0);
        for (const auto &[ij, c] : counts) {
            const T &xi = x.coords[static_cast<std::size_t>(ij.first)];
            const T &yj = y.coords[static_cast<std::size_t>(ij.second)];
            Rational w(c, total);
            w.canonicalize();
            acc += xi * yj * T(w);
        }
        out.coords[h] = acc;
    }
    return out;
}

inline DensityVector<Rational> flag_product(const Flag &f1, const Flag &f2, int level = -1)
{
    return product(unit_vector<Rational>(f1), unit_vector<Rational>(f2), level);
}

inline DensityVector<Rational> product(const SmallGraph &h1, const SmallGraph &h2, int level = -1)
{
    return flag_product(Flag(h1, 0), Flag(h2, 0), level);
}

// Fraction of the injective maps from the labels into V(F) that turn the
// underlying graph of F back into the flag F.
inline Rational unlabel_factor(const Flag &f)
{
    const int k = f.labels();
    const int n = f.order();
    std::vector<int> image(static_cast<std::size_t>(k));
    long hits = 0;
    long total = 0;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    std::function<void(int)> rec = [&](int depth) {
        if (depth == k) {
            std::vector<int> order = image;
            for (int v = 0; v < n; ++v) {
                if (!used[static_cast<std::size_t>(v)]) {
                    order.push_back(v);
                }
            }
            ++total;
            if (Flag(f.graph().induced(order), k) == f) {
                ++hits;
            }
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (!used[static_cast<std::size_t>(v)]) {
                used[static_cast<std::size_t>(v)] = true;
                image[static_cast<std::size_t>(depth)] = v;
                rec(depth + 1);
                used[static_cast<std::size_t>(v)] = false;
            }
        }
    };
    rec(0);
    Rational r(hits, total);
    r.canonicalize();
    return r;
}

template <class T>
DensityVector<T> unlabel(const DensityVector<T> &x)
{
    DensityVector<T> out(TypeSigma::none(), x.level);
    const FlagBasis &source = x.basis();
    const FlagBasis &target = out.basis();
    for (std::size_t i = 0; i < source.size(); ++i) {
        if (x.coords[i] == T(0)) {
            continue;
        }
        const Flag &f = source.flags[i];
        const int j = target.find(Flag(f.graph(), 0));
        out.coords[static_cast<std::size_t>(j)] += x.coords[i] * T(unlabel_factor(f));
    }
    return out;
}

// Cut bracket for a vertex partition defined relative to the labeled
// vertices: flags on k+2 vertices whose two free vertices lie on opposite
// sides get +1 for a non-edge between them and -1 for an edge. `in_a`
// receives the neighbourhood of a free vertex among the labels as a bit mask.
inline DensityVector<Rational> cut_bracket(const TypeSigma &sigma, const std::function<bool(unsigned)> &in_a)
{
    const int k = sigma.size();
    DensityVector<Rational> out(sigma, k + 2);
    const FlagBasis &basis = out.basis();
    auto label_mask = [&](const SmallGraph &g, int v) { return static_cast<unsigned>(g.row(v)) & ((1U << k) - 1); };
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const SmallGraph &g = basis.flags[i].graph();
        const bool a = in_a(label_mask(g, k));
        const bool b = in_a(label_mask(g, k + 1));
        if (a != b) {
            out.coords[i] = g.adjacent(k, k + 1) ? -1 : 1;
        }
    }
    return out;
}

} // namespace flagcert

#endif
