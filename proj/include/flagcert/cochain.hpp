#ifndef FLAGCERT_COCHAIN_HPP
#define FLAGCERT_COCHAIN_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "graph.hpp"
#include "rational.hpp"

namespace flagcert
{

// A d-system: a family of d-element subsets of {0..n-1}. Members are kept
// as bit masks in ascending order, so iteration is deterministic.
class DSystem
{
public:
    using Subset = std::uint32_t;
    static constexpr int max_ground = 24;

    DSystem() = default;
    DSystem(int ground, int arity) : n_(ground), d_(arity)
    {
        if (ground < 0 || ground > max_ground) {
            throw std::out_of_range("d-system ground set size outside 0.." + std::to_string(max_ground));
        }
        if (arity < 0 || arity > ground) {
            throw std::invalid_argument("d-system arity must lie in 0..ground");
        }
    }
    DSystem(int ground, int arity, std::vector<Subset> members) : DSystem(ground, arity)
    {
        for (Subset s : members) {
            check_member(s);
        }
        std::sort(members.begin(), members.end());
        if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
            throw std::invalid_argument("d-system has a repeated member");
        }
        members_ = std::move(members);
    }

    static DSystem from_sets(int ground, int arity, const std::vector<std::vector<int>> &sets)
    {
        std::vector<Subset> members;
        for (const auto &s : sets) {
            Subset m = 0;
            for (int v : s) {
                if (v < 0 || v >= ground) {
                    throw std::out_of_range("d-system element outside the ground set");
                }
                if ((m >> v) & 1U) {
                    throw std::invalid_argument("d-system member repeats an element");
                }
                m |= Subset{1} << v;
            }
            members.push_back(m);
        }
        return DSystem(ground, arity, std::move(members));
    }

    // All d-subsets of the ground set in ascending mask order.
    static std::vector<Subset> all_subsets(int ground, int arity)
    {
        std::vector<Subset> out;
        if (arity > ground) {
            return out;
        }
        if (arity == 0) {
            return {0};
        }
        Subset s = (Subset{1} << arity) - 1;
        const Subset limit = Subset{1} << ground;
        while (s < limit) {
            out.push_back(s);
            // Gosper's hack: next mask with the same popcount.
            const Subset c = s & (~s + 1);
            const Subset r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
        return out;
    }

    static DSystem full(int ground, int arity) { return DSystem(ground, arity, all_subsets(ground, arity)); }

    int ground() const { return n_; }
    int arity() const { return d_; }
    const std::vector<Subset> &members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    bool contains(Subset s) const { return std::binary_search(members_.begin(), members_.end(), s); }

    friend bool operator==(const DSystem &, const DSystem &) = default;

private:
    void check_member(Subset s) const
    {
        if (std::popcount(s) != d_ || (n_ < 32 && (s >> n_) != 0)) {
            throw std::invalid_argument("d-system member does not have exactly d elements of the ground set");
        }
    }

    int n_ = 0;
    int d_ = 0;
    std::vector<Subset> members_;
};

inline Rational density(const DSystem &e)
{
    const Integer total = binomial(static_cast<unsigned long>(e.ground()), static_cast<unsigned long>(e.arity()));
    if (total == 0) {
        throw std::domain_error("density of a system with no possible members");
    }
    Rational r(Integer(static_cast<unsigned long>(e.size())), total);
    r.canonicalize();
    return r;
}

inline DSystem symmetric_difference(const DSystem &a, const DSystem &b)
{
    if (a.ground() != b.ground() || a.arity() != b.arity()) {
        throw std::invalid_argument("symmetric difference of incompatible systems");
    }
    std::vector<DSystem::Subset> out;
    std::set_symmetric_difference(a.members().begin(), a.members().end(), b.members().begin(), b.members().end(),
                                  std::back_inserter(out));
    return DSystem(a.ground(), a.arity(), std::move(out));
}

// The (d+1)-sets containing an odd number of members.
inline DSystem coboundary(const DSystem &e)
{
    if (e.arity() + 1 > e.ground()) {
        throw std::invalid_argument("coboundary needs d+1 <= ground set size");
    }
    std::vector<DSystem::Subset> out;
    for (DSystem::Subset t : DSystem::all_subsets(e.ground(), e.arity() + 1)) {
        int parity = 0;
        for (DSystem::Subset rest = t; rest != 0; rest &= rest - 1) {
            const DSystem::Subset low = rest & (~rest + 1);
            parity ^= e.contains(t & ~low) ? 1 : 0;
        }
        if (parity != 0) {
            out.push_back(t);
        }
    }
    return DSystem(e.ground(), e.arity() + 1, std::move(out));
}

inline constexpr int max_minimality_candidates = 22;

// Exhaustive check that no coboundary of a (d-1)-system lowers the density.
inline bool is_minimal(const DSystem &e)
{
    const int d = e.arity();
    if (d == 0) {
        return true;
    }
    const auto lower = DSystem::all_subsets(e.ground(), d - 1);
    if (static_cast<int>(lower.size()) > max_minimality_candidates) {
        throw std::domain_error("is_minimal: instance too large (" + std::to_string(lower.size()) +
                                " candidate (d-1)-sets)");
    }
    const auto top = DSystem::all_subsets(e.ground(), d);
    const std::size_t words = (top.size() + 63) / 64;
    auto index_of = [&](DSystem::Subset s) {
        return static_cast<std::size_t>(std::lower_bound(top.begin(), top.end(), s) - top.begin());
    };
    std::vector<std::uint64_t> current(words, 0);
    for (DSystem::Subset s : e.members()) {
        const auto i = index_of(s);
        current[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    // delta of a single (d-1)-set is the family of d-sets containing it.
    std::vector<std::vector<std::uint64_t>> single(lower.size(), std::vector<std::uint64_t>(words, 0));
    for (std::size_t j = 0; j < lower.size(); ++j) {
        for (std::size_t i = 0; i < top.size(); ++i) {
            if ((top[i] & lower[j]) == lower[j]) {
                single[j][i / 64] |= std::uint64_t{1} << (i % 64);
            }
        }
    }
    const long base = static_cast<long>(e.size());
    // Gray-code walk over all (d-1)-systems D; current holds E xor delta D.
    const std::uint64_t count = std::uint64_t{1} << lower.size();
    for (std::uint64_t step = 1; step < count; ++step) {
        const int flip = std::countr_zero(step);
        long size = 0;
        for (std::size_t w = 0; w < words; ++w) {
            current[w] ^= single[static_cast<std::size_t>(flip)][w];
            size += std::popcount(current[w]);
        }
        if (size < base) {
            return false;
        }
    }
    return true;
}

template <std::size_t MaxN>
DSystem edge_system(const BasicGraph<MaxN> &g)
{
    std::vector<DSystem::Subset> members;
    for (const auto &[a, b] : g.edges()) {
        members.push_back((DSystem::Subset{1} << a) | (DSystem::Subset{1} << b));
    }
    return DSystem(g.order(), 2, std::move(members));
}

// Bipartition of {0..n-1}; `side` holds the block not containing vertex 0.
struct Cut {
    int n = 0;
    std::uint64_t side = 0;
};

inline constexpr int max_exact_cut_order = 30;

// First cut (in Gray-code order) crossed by more edges than non-edges.
template <std::size_t MaxN>
std::optional<Cut> violating_cut(const BasicGraph<MaxN> &g)
{
    const int n = g.order();
    if (n > max_exact_cut_order) {
        throw std::domain_error("exhaustive cut search supports at most " + std::to_string(max_exact_cut_order) +
                                " vertices");
    }
    if (n < 2) {
        return std::nullopt;
    }
    const std::uint64_t all = BasicGraph<MaxN>::low_bits(n);
    std::uint64_t side = 0;
    long size = 0;
    long crossing = 0;
    const std::uint64_t steps = std::uint64_t{1} << (n - 1);
    for (std::uint64_t step = 1; step < steps; ++step) {
        const int v = std::countr_zero(step) + 1;
        const std::uint64_t vbit = std::uint64_t{1} << v;
        const std::uint64_t nbrs = static_cast<std::uint64_t>(g.row(v));
        const long to_side = std::popcount(nbrs & side);
        const long to_rest = std::popcount(nbrs & (all & ~side & ~vbit));
        if (side & vbit) {
            side &= ~vbit;
            --size;
            crossing += to_side - to_rest;
        } else {
            side |= vbit;
            ++size;
            crossing += to_rest - to_side;
        }
        if (2 * crossing > size * (n - size)) {
            return Cut{n, side};
        }
    }
    return std::nullopt;
}

// Every cut contains at least as many non-edges as edges.
template <std::size_t MaxN>
bool is_seidel_minimal(const BasicGraph<MaxN> &g)
{
    return !violating_cut(g).has_value();
}

template <std::size_t MaxN>
long odd_triple_count(const BasicGraph<MaxN> &g)
{
    const int n = g.order();
    long odd = 0;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const int ab = g.adjacent(a, b) ? 1 : 0;
            // Parity of e(ac)+e(bc) is bit c of row(a) xor row(b).
            const std::uint64_t x = static_cast<std::uint64_t>(g.row(a) ^ g.row(b));
            const std::uint64_t later = BasicGraph<MaxN>::low_bits(n) & ~BasicGraph<MaxN>::low_bits(b + 1);
            const long ones = std::popcount(x & later);
            const long zeros = std::popcount(later) - ones;
            odd += ab ? zeros : ones;
        }
    }
    return odd;
}

template <std::size_t MaxN>
Rational odd_triple_density(const BasicGraph<MaxN> &g)
{
    if (g.order() < 3) {
        throw std::invalid_argument("odd triple density needs at least three vertices");
    }
    Rational r(Integer(odd_triple_count(g)), binomial(static_cast<unsigned long>(g.order()), 3));
    r.canonicalize();
    return r;
}

// "n d: {a,b},{c,d}"
inline std::string to_text(const DSystem &e)
{
    std::vector<std::vector<int>> sets;
    for (DSystem::Subset s : e.members()) {
        std::vector<int> t;
        for (int v = 0; v < e.ground(); ++v) {
            if ((s >> v) & 1U) {
                t.push_back(v);
            }
        }
        sets.push_back(std::move(t));
    }
    std::sort(sets.begin(), sets.end());
    std::string out = std::to_string(e.ground()) + " " + std::to_string(e.arity()) + ":";
    for (std::size_t i = 0; i < sets.size(); ++i) {
        out += i == 0 ? " {" : ",{";
        for (std::size_t j = 0; j < sets[i].size(); ++j) {
            if (j > 0) {
                out += ',';
            }
            out += std::to_string(sets[i][j]);
        }
        out += '}';
    }
    return out;
}

inline DSystem parse_dsystem(std::string_view text)
{
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw std::invalid_argument("d-system text must look like 'n d: {a,b},...'");
    }
    int n = 0;
    int d = 0;
    {
        const std::string head(text.substr(0, colon));
        std::size_t used = 0;
        try {
            n = std::stoi(head, &used);
            d = std::stoi(head.substr(used));
        } catch (const std::exception &) {
            throw std::invalid_argument("bad d-system header '" + head + "'");
        }
    }
    std::vector<std::vector<int>> sets;
    std::string_view rest = text.substr(colon + 1);
    for (;;) {
        const auto open = rest.find('{');
        if (open == std::string_view::npos) {
            break;
        }
        const auto close = rest.find('}', open);
        if (close == std::string_view::npos) {
            throw std::invalid_argument("unterminated set in d-system text");
        }
        std::string_view body = rest.substr(open + 1, close - open - 1);
        std::vector<int> set;
        while (!body.empty()) {
            const auto comma = body.find(',');
            const std::string tok(body.substr(0, comma));
            body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
            if (tok.find_first_not_of(' ') == std::string::npos) {
                continue;
            }
            try {
                set.push_back(std::stoi(tok));
            } catch (const std::exception &) {
                throw std::invalid_argument("bad element '" + tok + "' in d-system text");
            }
        }
        if (static_cast<int>(set.size()) != d) {
            throw std::invalid_argument("d-system member with wrong size");
        }
        sets.push_back(std::move(set));
        rest = rest.substr(close + 1);
    }
    return DSystem::from_sets(n, d, sets);
}

} // namespace flagcert

#endif
