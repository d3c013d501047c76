#ifndef FLAGCERT_SELFTEST_HPP
#define FLAGCERT_SELFTEST_HPP

#include <cstdint>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "certificates.hpp"
#include "cochain.hpp"
#include "fixtures.hpp"
#include "flag.hpp"
#include "graph.hpp"
#include "realalg.hpp"

namespace flagcert
{

struct SelftestOptions {
    std::uint64_t seed = 42;
    int random_cases = 500;
    FixtureSet fixtures = default_fixtures();
};

namespace detail
{

inline DSystem random_dsystem(int n, int d, std::mt19937_64 &rng)
{
    std::vector<DSystem::Subset> members;
    for (auto s : DSystem::all_subsets(n, d)) {
        if (rng() & 1U) {
            members.push_back(s);
        }
    }
    return DSystem(n, d, std::move(members));
}

inline RatPoly random_small_poly(std::mt19937_64 &rng, int max_degree)
{
    std::vector<Rational> c(static_cast<std::size_t>(rng() % static_cast<unsigned>(max_degree + 1) + 1));
    for (auto &v : c) {
        v = make_rational(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 4));
    }
    return RatPoly(c);
}

inline SqrtExpr random_sqrt_expr(std::mt19937_64 &rng)
{
    RatPoly den = random_small_poly(rng, 1);
    if (den.is_zero()) {
        den = RatPoly(1);
    }
    return SqrtExpr(RatFunc(random_small_poly(rng, 2), den), RatFunc(random_small_poly(rng, 2)));
}

} // namespace detail

// Invariant suite plus the three certificates. Log lines are deterministic
// for a fixed seed. Returns true iff everything passes.
inline bool run_selftest(std::ostream &log, const SelftestOptions &opt = {})
{
    bool all = true;
    auto check = [&](const std::string &name, const std::function<std::string()> &body) {
        std::string detail;
        bool ok = true;
        try {
            detail = body();
            ok = detail.empty();
        } catch (const std::exception &e) {
            ok = false;
            detail = std::string("error: ") + e.what();
        }
        all = all && ok;
        log << (ok ? "PASS " : "FAIL ") << name;
        if (!ok) {
            log << ": " << detail;
        }
        log << "\n";
    };

    check("coboundary squares to zero (" + std::to_string(opt.random_cases) + " random systems)", [&] {
        std::mt19937_64 rng(opt.seed);
        for (int i = 0; i < opt.random_cases; ++i) {
            const int n = 2 + static_cast<int>(rng() % 9);
            const int d = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::min(n - 1, 4)));
            const DSystem e = detail::random_dsystem(n, d, rng);
            if (d + 2 > n) {
                continue;
            }
            if (!coboundary(coboundary(e)).empty()) {
                return "nonzero for " + to_text(e);
            }
        }
        return std::string();
    });

    check("coboundary is additive (" + std::to_string(opt.random_cases) + " random pairs)", [&] {
        std::mt19937_64 rng(opt.seed + 1);
        for (int i = 0; i < opt.random_cases; ++i) {
            const int n = 2 + static_cast<int>(rng() % 9);
            const int d = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::min(n - 1, 4)));
            const DSystem a = detail::random_dsystem(n, d, rng);
            const DSystem b = detail::random_dsystem(n, d, rng);
            if (!(coboundary(symmetric_difference(a, b)) ==
                  symmetric_difference(coboundary(a), coboundary(b)))) {
                return "fails for " + to_text(a) + " and " + to_text(b);
            }
        }
        return std::string();
    });

    check("graph counts 1, 2, 4, 11, 34, 156, 1044", [&] {
        const std::size_t expected[] = {1, 2, 4, 11, 34, 156, 1044};
        for (int n = 1; n <= 7; ++n) {
            if (enumerate_graphs(n).size() != expected[n - 1]) {
                return "wrong count at n = " + std::to_string(n);
            }
        }
        return std::string();
    });

    check("odd-triple density equals coboundary density (n <= 6)", [&] {
        for (int n = 3; n <= 6; ++n) {
            for (const auto &g : enumerate_graphs(n)) {
                if (odd_triple_density(g) != density(coboundary(edge_system(g)))) {
                    return "mismatch for " + to_text(g);
                }
            }
        }
        return std::string();
    });

    check("expansion consistency (|g| <= 5)", [&] {
        for (int n = 1; n <= 5; ++n) {
            for (const auto &g : enumerate_graphs(n)) {
                for (int level = 1; level <= n; ++level) {
                    const auto pg = density_profile(Flag(g, 0), level);
                    const FlagBasis &basis = graph_basis(level);
                    for (int k = 1; k <= level; ++k) {
                        const auto direct = density_profile(Flag(g, 0), k);
                        std::vector<Rational> via(direct.size(), Rational(0));
                        for (std::size_t h = 0; h < basis.size(); ++h) {
                            const auto ph = density_profile(basis.flags[h], k);
                            for (std::size_t i = 0; i < ph.size(); ++i) {
                                via[i] += ph[i] * pg[h];
                            }
                        }
                        if (via != direct) {
                            return "fails for " + to_text(g) + " at levels " + std::to_string(k) + " < " +
                                   std::to_string(level);
                        }
                    }
                }
            }
        }
        return std::string();
    });

    check("field axioms in Q(b)[sqrt(1+8b)] (200 random triples)", [&] {
        std::mt19937_64 rng(opt.seed + 2);
        for (int i = 0; i < 200; ++i) {
            const SqrtExpr x = detail::random_sqrt_expr(rng);
            const SqrtExpr y = detail::random_sqrt_expr(rng);
            const SqrtExpr z = detail::random_sqrt_expr(rng);
            if (!((x + y) * z == x * z + y * z) || !(x * y == y * x) || !((x * y) * z == x * (y * z))) {
                return "ring axiom fails for " + x.to_string();
            }
            if (!y.is_identically_zero() && !((x / y) * y == x)) {
                return "division fails for " + x.to_string() + " / " + y.to_string();
            }
        }
        return std::string();
    });

    auto certificate = [&](const CertificateReport &r) {
        if (r.pass) {
            return std::string();
        }
        const CheckStep *bad = r.first_failure();
        std::string why = bad == nullptr ? "failed" : "step '" + bad->name + "': " + bad->detail;
        if (bad != nullptr && bad->coordinate) {
            why += " (coordinate " + std::to_string(*bad->coordinate) + ")";
        }
        return why;
    };
    check("certificate example", [&] {
        ExampleInputs in;
        in.fixtures = opt.fixtures;
        return certificate(verify_example_phi2_ge_alpha(in));
    });
    check("certificate first", [&] {
        FirstInputs in;
        in.fixtures = opt.fixtures;
        return certificate(verify_first_bound(in));
    });
    check("certificate main", [&] {
        MainInputs in;
        in.fixtures = opt.fixtures;
        return certificate(verify_main_bound(SecCVariant::automatic, in));
    });

    log << (all ? "selftest passed" : "selftest FAILED") << "\n";
    return all;
}

} // namespace flagcert

#endif
