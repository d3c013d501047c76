#ifndef FLAGCERT_CERTIFICATES_HPP
#define FLAGCERT_CERTIFICATES_HPP

#include <array>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "flag.hpp"
#include "graph.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "realalg.hpp"
#include "report.hpp"

namespace flagcert
{

// ---------------------------------------------------------------------------
// Printed vectors, in the F1..F11 order at level 4 and the (K3bar, P3bar,
// P3, K3) order at level 3.
// ---------------------------------------------------------------------------

namespace printed
{

inline Rational q(long a, long b = 1) { return make_rational(a, b); }

inline std::vector<Rational> ex1() { return {0, q(1, 3), q(2, 3), 1}; }
inline std::vector<Rational> ex3() { return {0, q(2, 3), q(-2, 3), 0}; }
inline std::vector<Rational> ex_target() { return {0, 1, 0, 1}; }

inline std::vector<Rational> first2() { return {0, q(1, 6), 0, q(1, 3), q(1, 2), q(1, 6), q(1, 2), 0, q(1, 3), q(1, 6), 0}; }
inline std::vector<Rational> first3() { return {0, 0, 0, q(1, 6), 0, q(1, 3), q(-1, 2), 0, q(-1, 3), 0, 0}; }
inline std::vector<Rational> first4() { return {0, q(1, 3), q(2, 3), 0, 0, 0, q(-1, 2), 0, q(-1, 6), 0, 0}; }
inline std::vector<Rational> first0()
{
    return {0, q(1, 2), q(4, 7), q(1, 2), q(9, 14), q(5, 14), 0, 0, q(1, 7), q(3, 14), 0};
}
inline std::vector<Rational> target4() { return {0, q(1, 2), 1, q(1, 2), 1, q(1, 2), 0, 0, q(1, 2), q(1, 2), 1}; }

inline std::vector<Rational> secAA() { return std::vector<Rational>(11, Rational(1)); }
inline std::vector<Rational> secA()
{
    return {0, q(1, 6), q(1, 3), q(1, 3), q(1, 2), q(1, 2), q(1, 2), q(2, 3), q(2, 3), q(5, 6), 1};
}
// The vector displayed for the cut inequality reused in the main proof.
inline std::vector<Rational> secC_display() { return first3(); }

// Linear polynomials c0 + c1*b in the density b of edges.
inline std::vector<RatPoly> secB()
{
    auto lin = [](Rational c0, Rational c1) { return RatPoly(std::vector<Rational>{c0, c1}); };
    return {lin(0, -1),         lin(q(1, 6), q(-5, 6)), lin(0, q(-2, 3)),      lin(q(1, 3), q(-2, 3)),
            lin(q(1, 2), q(-1, 2)), lin(q(1, 6), q(-1, 2)), lin(q(1, 2), q(-1, 2)), lin(0, q(-1, 3)),
            lin(q(1, 3), q(-1, 3)), lin(q(1, 6), q(-1, 6)), RatPoly()};
}

// Quadratics in the free parameter x of the labeled square.
inline std::vector<RatPoly> secD()
{
    auto quad = [](Rational c0, Rational c1, Rational c2) { return RatPoly(std::vector<Rational>{c0, c1, c2}); };
    return {RatPoly(),          quad(q(1, 6), 0, 0), quad(q(1, 3), 0, 0), quad(0, q(-1, 3), 0),
            RatPoly(),          quad(0, q(-1, 3), q(1, 6)), quad(0, 0, q(1, 2)), quad(0, 0, q(2, 3)),
            quad(0, 0, q(1, 6)), RatPoly(),         RatPoly()};
}

inline std::vector<SqrtExpr> sec0()
{
    const SqrtExpr b = SqrtExpr::beta();
    const SqrtExpr r = SqrtExpr::root();
    auto c = [](long a, long d = 1) { return SqrtExpr(make_rational(a, d)); };
    return {c(0),
            c(1, 2),
            c(1) - c(1) / r,
            c(1, 2),
            c(9, 8) - (c(3) + c(12) * b) / (c(8) * r),
            c(1, 2),
            c(0),
            c(0),
            c(9, 8) - (c(15) + c(12) * b) / (c(8) * r),
            c(15, 8) - (c(21) + c(20) * b) / (c(8) * r),
            c(9, 4) - (c(15) + c(12) * b) / (c(4) * r)};
}

// (3/4) b (3 - sqrt(1+8b))
inline SqrtExpr main_bound()
{
    return SqrtExpr(make_rational(3, 4)) * SqrtExpr::beta() * (SqrtExpr(3) - SqrtExpr::root());
}

} // namespace printed

// x = (sqrt(1+8b) - 1)/(2b) - 1
inline SqrtExpr xi_substitution()
{
    return (SqrtExpr::root() - SqrtExpr(1)) / (SqrtExpr(2) * SqrtExpr::beta()) - SqrtExpr(1);
}

inline std::array<SqrtExpr, 5> main_coefficients()
{
    const SqrtExpr b = SqrtExpr::beta();
    const SqrtExpr r = SqrtExpr::root();
    const SqrtExpr three(3);
    const SqrtExpr quarter3(make_rational(3, 4));
    return {three * b / r, quarter3 * (three - (SqrtExpr(5) + SqrtExpr(8) * b) / r), three / r, three / r,
            quarter3 * (SqrtExpr(1) + (SqrtExpr(1) + SqrtExpr(4) * b) / r)};
}

inline const std::array<std::string, 5> &main_atom_labels()
{
    static const std::array<std::string, 5> labels{"secAA", "secA", "secB", "secC", "secD"};
    return labels;
}

struct ExampleInputs {
    Rational ex1 = 1;
    Rational ex3 = 1;
    FixtureSet fixtures = default_fixtures();
};

struct FirstInputs {
    Rational first2 = make_rational(9, 7);
    Rational first3 = make_rational(3, 7);
    Rational first4 = make_rational(6, 7);
    FixtureSet fixtures = default_fixtures();
};

enum class SecCVariant { first3, first4, automatic };

inline std::string to_string(SecCVariant v)
{
    switch (v) {
    case SecCVariant::first3:
        return "first3";
    case SecCVariant::first4:
        return "first4";
    case SecCVariant::automatic:
        return "auto";
    }
    return "?";
}

inline SecCVariant parse_secc_variant(const std::string &s)
{
    if (s == "first3") {
        return SecCVariant::first3;
    }
    if (s == "first4") {
        return SecCVariant::first4;
    }
    if (s == "auto") {
        return SecCVariant::automatic;
    }
    throw std::invalid_argument("secC variant must be first3, first4 or auto");
}

struct MainInputs {
    std::array<SqrtExpr, 5> coefficients = main_coefficients();
    FixtureSet fixtures = default_fixtures();
};

namespace detail
{

// Runs one step, turning exceptions into a failed step that names the cause.
inline void run_step(CertificateReport &report, const std::string &name, const std::function<CheckStep()> &body)
{
    CheckStep step;
    try {
        step = body();
    } catch (const FixtureError &e) {
        step.pass = false;
        step.detail = e.what();
    } catch (const std::exception &e) {
        step.pass = false;
        step.detail = std::string("error: ") + e.what();
    }
    step.name = name;
    report.steps.push_back(std::move(step));
}

template <class T>
CheckStep compare_exact(const std::vector<T> &recomputed, const std::vector<T> &expected, const std::string &what)
{
    CheckStep step;
    step.recomputed = coords_text(recomputed);
    step.printed = coords_text(expected);
    if (recomputed.size() != expected.size()) {
        step.detail = what + ": length " + std::to_string(recomputed.size()) + " vs " +
                      std::to_string(expected.size());
        return step;
    }
    for (std::size_t i = 0; i < recomputed.size(); ++i) {
        if (!(recomputed[i] == expected[i])) {
            step.coordinate = static_cast<int>(i) + 1;
            step.residual = coord_text(T(recomputed[i] - expected[i]));
            step.detail = what + ": mismatch at coordinate " + std::to_string(i + 1);
            return step;
        }
    }
    step.pass = true;
    step.detail = what + ": exact match";
    return step;
}

inline CheckStep nonnegative_scalars(const std::vector<std::pair<std::string, Rational>> &values)
{
    CheckStep step;
    for (std::size_t i = 0; i < values.size(); ++i) {
        step.recomputed.push_back(values[i].first + " = " + values[i].second.get_str());
        if (sgn(values[i].second) < 0) {
            step.coordinate = static_cast<int>(i) + 1;
            step.detail = "coefficient of " + values[i].first + " is negative";
            return step;
        }
    }
    step.pass = true;
    step.detail = "coefficients of the inequalities are nonnegative";
    return step;
}

// Rational domination lhs <= rhs coordinate-wise.
inline CheckStep dominated(const std::vector<Rational> &lhs, const std::vector<Rational> &rhs)
{
    CheckStep step;
    step.recomputed = coords_text(lhs);
    step.printed = coords_text(rhs);
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        if (lhs[i] > rhs[i]) {
            step.coordinate = static_cast<int>(i) + 1;
            step.residual = coord_text(Rational(lhs[i] - rhs[i]));
            step.detail = "coordinate " + std::to_string(i + 1) + " exceeds the target";
            return step;
        }
    }
    step.pass = true;
    step.detail = "every coordinate is at most the target coordinate";
    return step;
}

inline std::string interval_text(const Rational &lo, const Rational &hi, LowerEnd lower)
{
    return std::string(lower == LowerEnd::open ? "(" : "[") + lo.get_str() + ", " + hi.get_str() + "]";
}

// Each expression must be nonnegative on the interval.
inline CheckStep nonnegative_on(const std::vector<std::pair<std::string, SqrtExpr>> &exprs, const Rational &lo,
                                const Rational &hi, LowerEnd lower)
{
    CheckStep step;
    const std::string where = interval_text(lo, hi, lower);
    for (std::size_t i = 0; i < exprs.size(); ++i) {
        const auto result = sign_on_interval(exprs[i].second, lo, hi, lower);
        step.recomputed.push_back(exprs[i].first + ": " + to_string(result.sign));
        if (result.sign != SignClass::nonnegative) {
            step.coordinate = static_cast<int>(i) + 1;
            step.residual = exprs[i].second.to_string();
            step.detail = exprs[i].first + " is " + to_string(result.sign) + " on " + where;
            if (result.witness) {
                step.detail += " (witness b = " + result.witness->get_str() + ")";
            }
            return step;
        }
    }
    step.pass = true;
    step.detail = "nonnegative on " + where;
    return step;
}

template <class T>
std::vector<T> to_ring(const std::vector<Rational> &v)
{
    std::vector<T> out;
    out.reserve(v.size());
    for (const auto &x : v) {
        out.push_back(T(x));
    }
    return out;
}

inline std::vector<SqrtExpr> substitute(const std::vector<RatPoly> &v, const SqrtExpr &at)
{
    std::vector<SqrtExpr> out;
    out.reserve(v.size());
    for (const auto &p : v) {
        out.push_back(p.evaluate(at, SqrtExpr(0)));
    }
    return out;
}

inline std::vector<SqrtExpr> in_beta(const std::vector<RatPoly> &v)
{
    std::vector<SqrtExpr> out;
    out.reserve(v.size());
    for (const auto &p : v) {
        out.push_back(SqrtExpr(RatFunc(p)));
    }
    return out;
}

// Brackets recomputed from the cut they encode, for cross-checking the
// transcribed fixtures.
inline DensityVector<Rational> ex_cut() { return cut_bracket(TypeSigma::vertex(), [](unsigned m) { return m != 0; }); }
inline DensityVector<Rational> common_neighbour_cut()
{
    return cut_bracket(TypeSigma::non_edge(), [](unsigned m) { return m == 3U; });
}
inline DensityVector<Rational> neighbour_cut()
{
    return cut_bracket(TypeSigma::non_edge(), [](unsigned m) { return (m & 1U) != 0; });
}

inline CheckStep fixture_matches(const FixtureSet &set, const std::string &name, const DensityVector<Rational> &cut)
{
    const auto v = fixture_vector<Rational>(fixture(set, name));
    if (!(v.sigma == cut.sigma) || v.level != cut.level) {
        CheckStep step;
        step.detail = "fixture '" + name + "' has the wrong type or order";
        return step;
    }
    auto step = compare_exact(v.coords, cut.coords, "fixture '" + name + "' against the recomputed cut bracket");
    return step;
}

} // namespace detail

// ---------------------------------------------------------------------------
// phi2(alpha) >= alpha
// ---------------------------------------------------------------------------

inline CertificateReport verify_example_phi2_ge_alpha(const ExampleInputs &in = {})
{
    CertificateReport report;
    report.certificate = "example";
    report.target = coords_text(printed::ex_target());
    const auto ex1 = expand(named::complete(2), 3);
    report.atoms.push_back({"ex1", "expansion of K2 at level 3", "alpha", Sense::le, coords_text(ex1.coords)});
    report.coefficients = {{"ex1", in.ex1.get_str()}, {"ex3", in.ex3.get_str()}};

    detail::run_step(report, "ex1 expansion", [&] { return detail::compare_exact(ex1.coords, printed::ex1(), "K2 at level 3"); });
    detail::run_step(report, "ex bracket fixture",
                     [&] { return detail::fixture_matches(in.fixtures, "ex", detail::ex_cut()); });

    std::vector<Rational> ex3;
    detail::run_step(report, "ex3 unlabel", [&] {
        ex3 = unlabel(fixture_vector<Rational>(fixture(in.fixtures, "ex"))).coords;
        return detail::compare_exact(ex3, printed::ex3(), "unlabeled cut bracket");
    });
    if (ex3.empty()) {
        ex3 = printed::ex3();
    }
    report.atoms.push_back({"ex3", "unlabel of the cut bracket over one labeled vertex", "0", Sense::le, coords_text(ex3)});

    detail::run_step(report, "coefficient signs", [&] { return detail::nonnegative_scalars({{"ex3", in.ex3}}); });

    std::vector<Rational> combined(4);
    for (std::size_t i = 0; i < 4; ++i) {
        combined[i] = in.ex1 * ex1.coords[i] + in.ex3 * ex3[i];
    }
    report.combined = coords_text(combined);
    detail::run_step(report, "target", [&] {
        const auto t = expand(named::path(3).complement(), 3) + expand(named::complete(3), 3);
        return detail::compare_exact(t.coords, printed::ex_target(), "P3bar + K3 at level 3");
    });
    detail::run_step(report, "combination",
                     [&] { return detail::compare_exact(combined, printed::ex_target(), "ex1 + ex3 against P3bar + K3"); });
    detail::run_step(report, "scalar side", [&] {
        CheckStep s;
        s.recomputed = {in.ex1.get_str() + "*alpha"};
        s.printed = {"1*alpha"};
        s.pass = in.ex1 == 1;
        s.detail = s.pass ? "the combined scalar side is alpha" : "the combined scalar side is not alpha";
        return s;
    });
    report.pass = report.all_steps_pass();
    report.bound = report.pass ? "phi2(alpha) >= alpha"
                               : "alpha <= q(" + [&] {
                                     std::string s;
                                     for (std::size_t i = 0; i < combined.size(); ++i) {
                                         s += (i ? ", " : "") + combined[i].get_str();
                                     }
                                     return s;
                                 }() + ")";
    return report;
}

// ---------------------------------------------------------------------------
// q(P3bar + K3) >= 9/7 alpha (1 - alpha)
// ---------------------------------------------------------------------------

inline CertificateReport verify_first_bound(const FirstInputs &in = {})
{
    CertificateReport report;
    report.certificate = "first";
    report.target = coords_text(printed::target4());
    report.coefficients = {{"first2", in.first2.get_str()}, {"first3", in.first3.get_str()}, {"first4", in.first4.get_str()}};

    const auto first2 = product(named::complete(2), named::empty(2));
    report.atoms.push_back({"first2", "product K2 x K2bar", "alpha(1-alpha)", Sense::le, coords_text(first2.coords)});
    detail::run_step(report, "first2 product",
                     [&] { return detail::compare_exact(first2.coords, printed::first2(), "K2 x K2bar at level 4"); });

    detail::run_step(report, "first3 bracket fixture",
                     [&] { return detail::fixture_matches(in.fixtures, "first3", detail::common_neighbour_cut()); });
    detail::run_step(report, "first4 bracket fixture",
                     [&] { return detail::fixture_matches(in.fixtures, "first4", detail::neighbour_cut()); });

    std::vector<Rational> first3;
    std::vector<Rational> first4;
    detail::run_step(report, "first3 unlabel", [&] {
        first3 = unlabel(fixture_vector<Rational>(fixture(in.fixtures, "first3"))).coords;
        return detail::compare_exact(first3, printed::first3(), "unlabeled common-neighbour cut bracket");
    });
    detail::run_step(report, "first4 unlabel", [&] {
        first4 = unlabel(fixture_vector<Rational>(fixture(in.fixtures, "first4"))).coords;
        return detail::compare_exact(first4, printed::first4(), "unlabeled neighbour cut bracket");
    });
    if (first3.empty()) {
        first3 = printed::first3();
    }
    if (first4.empty()) {
        first4 = printed::first4();
    }
    report.atoms.push_back({"first3", "unlabel of the common-neighbour cut bracket over K2bar", "0", Sense::le,
                            coords_text(first3)});
    report.atoms.push_back({"first4", "unlabel of the neighbour cut bracket over K2bar", "0", Sense::le,
                            coords_text(first4)});

    detail::run_step(report, "coefficient signs", [&] {
        return detail::nonnegative_scalars({{"first2", in.first2}, {"first3", in.first3}, {"first4", in.first4}});
    });

    std::vector<Rational> combined(11);
    for (std::size_t i = 0; i < 11; ++i) {
        combined[i] = in.first2 * first2.coords[i] + in.first3 * first3[i] + in.first4 * first4[i];
    }
    report.combined = coords_text(combined);
    detail::run_step(report, "combination",
                     [&] { return detail::compare_exact(combined, printed::first0(), "weighted sum against first0"); });
    detail::run_step(report, "target", [&] {
        const auto t = expand(named::path(3).complement(), 4) + expand(named::complete(3), 4);
        return detail::compare_exact(t.coords, printed::target4(), "P3bar + K3 at level 4");
    });
    detail::run_step(report, "domination", [&] { return detail::dominated(printed::first0(), printed::target4()); });
    detail::run_step(report, "scalar side", [&] {
        CheckStep s;
        s.recomputed = {in.first2.get_str() + "*alpha*(1-alpha)"};
        s.printed = {"9/7*alpha*(1-alpha)"};
        s.pass = in.first2 == make_rational(9, 7);
        s.detail = s.pass ? "the combined scalar side is 9/7 alpha(1-alpha)"
                          : "the combined scalar side differs from 9/7 alpha(1-alpha)";
        return s;
    });
    report.pass = report.all_steps_pass();
    report.bound = report.pass ? "q(P3bar + K3) >= 9/7*alpha*(1-alpha)" : "not established";
    return report;
}

// ---------------------------------------------------------------------------
// q(P3bar + K3) >= (3/4) beta (3 - sqrt(1+8 beta))
// ---------------------------------------------------------------------------

namespace detail
{

inline CertificateReport verify_main_variant(SecCVariant variant, const MainInputs &in)
{
    CertificateReport report;
    report.certificate = "main";
    report.variant = to_string(variant);
    report.target = coords_text(printed::target4());
    for (std::size_t i = 0; i < 5; ++i) {
        report.coefficients.emplace_back(main_atom_labels()[i], in.coefficients[i].to_string());
    }

    const Rational half = make_rational(1, 2);
    const RatPoly b = RatPoly::x();

    const auto secAA = expand(SmallGraph(1), 4);
    const auto secA = expand(named::complete(2), 4);
    run_step(report, "secAA expansion", [&] { return compare_exact(secAA.coords, printed::secAA(), "K1 at level 4"); });
    run_step(report, "secA expansion", [&] { return compare_exact(secA.coords, printed::secA(), "K2 at level 4"); });

    std::vector<RatPoly> secB;
    {
        const auto prod = product(named::complete(2), named::empty(2));
        const auto e2 = expand(named::empty(2), 4);
        for (std::size_t i = 0; i < 11; ++i) {
            secB.push_back(RatPoly(prod.coords[i]) - b * RatPoly(e2.coords[i]));
        }
    }
    run_step(report, "secB product", [&] {
        return compare_exact(secB, printed::secB(), "K2 x K2bar - b K2bar at level 4");
    });

    const std::string secc_fixture = variant == SecCVariant::first3 ? "first3" : "first4";
    const std::vector<Rational> secC_printed = variant == SecCVariant::first3 ? printed::first3() : printed::first4();
    run_step(report, "secC bracket fixture", [&] {
        return fixture_matches(in.fixtures, secc_fixture,
                               variant == SecCVariant::first3 ? common_neighbour_cut() : neighbour_cut());
    });
    run_step(report, "secC unlabel", [&] {
        const auto v = unlabel(fixture_vector<Rational>(fixture(in.fixtures, secc_fixture))).coords;
        return compare_exact(v, secC_printed, "unlabeled " + secc_fixture + " bracket");
    });

    std::vector<RatPoly> square;
    run_step(report, "sec3 square", [&] {
        const auto y = fixture_vector<RatPoly>(fixture(in.fixtures, "sec3"));
        const auto sq = product(y, y);
        const auto listed = fixture_vector<RatPoly>(fixture(in.fixtures, "sec4"));
        if (!(listed.sigma == sq.sigma) || listed.level != sq.level) {
            CheckStep s;
            s.detail = "fixture 'sec4' has the wrong type or order";
            return s;
        }
        square = sq.coords;
        int nonzero = 0;
        for (const auto &c : sq.coords) {
            nonzero += !c.is_zero();
        }
        auto step = compare_exact(listed.coords, sq.coords, "fixture 'sec4' against the recomputed square");
        step.detail += " (" + std::to_string(nonzero) + " flags with nonzero coefficient)";
        return step;
    });
    std::vector<RatPoly> secD;
    run_step(report, "secD unlabel", [&] {
        secD = unlabel(fixture_vector<RatPoly>(fixture(in.fixtures, "sec4"))).coords;
        return compare_exact(secD, printed::secD(), "unlabeled square over K2");
    });
    if (secD.empty()) {
        secD = printed::secD();
    }

    const SqrtExpr xi = xi_substitution();
    run_step(report, "xi form", [&] {
        CheckStep s;
        const SqrtExpr residual = xi * (SqrtExpr::root() + SqrtExpr(1)) - (SqrtExpr(3) - SqrtExpr::root());
        s.pass = residual.is_identically_zero();
        s.residual = s.pass ? "" : residual.to_string();
        s.detail = s.pass ? "x*(sqrt(1+8b)+1) = 3 - sqrt(1+8b) identically" : "x substitution does not simplify";
        return s;
    });

    const std::array<std::vector<SqrtExpr>, 5> atoms{to_ring<SqrtExpr>(secAA.coords), to_ring<SqrtExpr>(secA.coords),
                                                     in_beta(secB), to_ring<SqrtExpr>(secC_printed),
                                                     substitute(secD, xi)};
    report.atoms.push_back({"secAA", "expansion of K1 at level 4", "1", Sense::eq, coords_text(secAA.coords)});
    report.atoms.push_back({"secA", "expansion of K2 at level 4", "b", Sense::eq, coords_text(secA.coords)});
    report.atoms.push_back({"secB", "product K2 x K2bar minus b times K2bar", "0", Sense::eq, coords_text(secB)});
    report.atoms.push_back({"secC", "unlabel of the " + secc_fixture + " cut bracket", "0", Sense::le,
                            coords_text(secC_printed)});
    report.atoms.push_back({"secD", "unlabel of the square over K2", "0", Sense::le, coords_text(secD)});

    std::vector<SqrtExpr> combined(11);
    for (std::size_t i = 0; i < 11; ++i) {
        for (std::size_t a = 0; a < 5; ++a) {
            combined[i] += in.coefficients[a] * atoms[a][i];
        }
    }
    report.combined = coords_text(combined);
    const auto sec0 = printed::sec0();
    run_step(report, "combination", [&] { return compare_exact(combined, sec0, "weighted sum against sec0"); });

    const SqrtExpr scalar = in.coefficients[0] + in.coefficients[1] * SqrtExpr::beta();
    run_step(report, "scalar side", [&] {
        return compare_exact(std::vector<SqrtExpr>{scalar}, std::vector<SqrtExpr>{printed::main_bound()},
                             "combined scalar side against (3/4) b (3 - sqrt(1+8b))");
    });

    run_step(report, "coefficient signs", [&] {
        return nonnegative_on({{"secC", in.coefficients[3]}, {"secD", in.coefficients[4]}}, 0, half, LowerEnd::open);
    });

    run_step(report, "domination", [&] {
        std::vector<std::pair<std::string, SqrtExpr>> gaps;
        const auto target = printed::target4();
        for (std::size_t i = 0; i < 11; ++i) {
            gaps.emplace_back("coordinate " + std::to_string(i + 1), SqrtExpr(target[i]) - sec0[i]);
        }
        return nonnegative_on(gaps, 0, half, LowerEnd::closed);
    });

    run_step(report, "closure", [&] {
        const SqrtExpr f = printed::main_bound();
        const Rational two_ninths = make_rational(2, 9);
        CheckStep s = nonnegative_on({{"derivative on [0, 2/9]", f.derivative()}}, 0, two_ninths, LowerEnd::closed);
        if (!s.pass) {
            return s;
        }
        CheckStep t = nonnegative_on({{"f - 2/9 on [2/9, 1/2]", f - SqrtExpr(two_ninths)}}, two_ninths, half,
                                     LowerEnd::closed);
        if (!t.pass) {
            return t;
        }
        const Rational at = eval_rational_point(f, two_ninths);
        CheckStep u;
        u.recomputed = {s.recomputed[0], t.recomputed[0], "f(2/9) = " + at.get_str()};
        u.pass = at == two_ninths;
        u.detail = u.pass ? "f is increasing on [0, 2/9], at least 2/9 on [2/9, 1/2], and f(2/9) = 2/9"
                          : "f(2/9) differs from 2/9";
        return u;
    });

    // Redundant evaluation at points where sqrt(1+8b) = t is rational, done
    // coordinate by coordinate in plain rationals.
    run_step(report, "spot checks", [&] {
        CheckStep s;
        const std::vector<Rational> ts{1, make_rational(5, 4), make_rational(3, 2), make_rational(5, 3), 2};
        for (const auto &t : ts) {
            const Rational b0 = (t * t - 1) / 8;
            const Rational xi0 = (3 - t) / (t + 1);
            std::array<Rational, 5> c;
            for (std::size_t a = 0; a < 5; ++a) {
                c[a] = eval_rational_point(in.coefficients[a], b0);
            }
            Rational scalar0 = c[0] + c[1] * b0;
            const Rational bound0 = eval_rational_point(printed::main_bound(), b0);
            s.recomputed.push_back("b=" + b0.get_str() + ": scalar " + scalar0.get_str());
            if (scalar0 != bound0) {
                s.detail = "scalar side at b = " + b0.get_str() + " is " + scalar0.get_str() + ", expected " +
                           bound0.get_str();
                return s;
            }
            for (std::size_t i = 0; i < 11; ++i) {
                const Rational v = c[0] * secAA.coords[i] + c[1] * secA.coords[i] + c[2] * secB[i](b0) +
                                   c[3] * secC_printed[i] + c[4] * secD[i](xi0);
                const Rational expect = eval_rational_point(sec0[i], b0);
                if (v != expect) {
                    s.coordinate = static_cast<int>(i) + 1;
                    s.residual = Rational(v - expect).get_str();
                    s.detail = "coordinate " + std::to_string(i + 1) + " at b = " + b0.get_str() + " is " +
                               v.get_str() + ", expected " + expect.get_str();
                    return s;
                }
                if (v > printed::target4()[i]) {
                    s.coordinate = static_cast<int>(i) + 1;
                    s.detail = "coordinate " + std::to_string(i + 1) + " exceeds the target at b = " + b0.get_str();
                    return s;
                }
                if (b0 == make_rational(3, 8) && i == 6) {
                    s.recomputed.push_back("b=3/8: coordinate 7 = " + v.get_str());
                }
            }
        }
        s.pass = true;
        s.detail = "exact agreement at b in {0, 9/128, 5/32, 2/9, 3/8}";
        return s;
    });

    report.pass = report.all_steps_pass();
    report.bound = report.pass ? "phi2(alpha) >= (3/4)*alpha*(3 - sqrt(8*alpha + 1)) for alpha in [0, 2/9]"
                               : "not established";
    return report;
}

} // namespace detail

inline CertificateReport verify_main_bound(SecCVariant variant = SecCVariant::automatic, const MainInputs &in = {})
{
    if (variant != SecCVariant::automatic) {
        return detail::verify_main_variant(variant, in);
    }
    CertificateReport report;
    report.certificate = "main";
    report.variant = "auto";
    report.target = coords_text(printed::target4());
    report.variants.push_back(detail::verify_main_variant(SecCVariant::first3, in));
    report.variants.push_back(detail::verify_main_variant(SecCVariant::first4, in));
    int passing = 0;
    const CertificateReport *winner = nullptr;
    for (const auto &v : report.variants) {
        if (v.pass) {
            ++passing;
            winner = &v;
        }
    }
    if (printed::secC_display() == printed::first3()) {
        report.findings.push_back("the vector displayed for the reused cut inequality equals the first3 vector");
    }
    for (const auto &v : report.variants) {
        std::string line = "variant " + v.variant + ": " + (v.pass ? "identity holds" : "fails");
        if (const CheckStep *bad = v.first_failure()) {
            line += " at step '" + bad->name + "'";
            if (bad->coordinate) {
                line += ", coordinate " + std::to_string(*bad->coordinate);
            }
        }
        report.findings.push_back(line);
    }
    CheckStep decide;
    decide.name = "exactly one secC variant";
    decide.pass = passing == 1;
    decide.detail = std::to_string(passing) + " of 2 variants pass";
    report.steps.push_back(decide);
    if (winner != nullptr) {
        report.atoms = winner->atoms;
        report.coefficients = winner->coefficients;
        report.combined = winner->combined;
    }
    report.pass = decide.pass;
    report.bound = report.pass ? winner->bound : "not established";
    return report;
}

} // namespace flagcert

#endif
