#ifndef FLAGCERT_BOUNDS_HPP
#define FLAGCERT_BOUNDS_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "interval.hpp"
#include "parallel.hpp"
#include "rational.hpp"

namespace flagcert
{

// ---------------------------------------------------------------------------
// Formatting
// ---------------------------------------------------------------------------

// "0.0743337392 +/- 2e-12": the printed decimal is within the stated error
// of every point of the enclosure.
inline std::string format_enclosure(const Interval &x, int digits = 10)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x.mid());
    const double printed = std::strtod(buf, nullptr);
    const double err = std::max(x.hi() - printed, printed - x.lo());
    if (err <= 0) {
        return std::string(buf) + " +/- 0";
    }
    const double scale = std::pow(10.0, std::floor(std::log10(err)));
    double mant = std::ceil(std::nextafter(err / scale, 1e9));
    char ebuf[32];
    std::snprintf(ebuf, sizeof ebuf, "%.0e", mant * scale);
    // Bump once more if decimal conversion rounded below the true error.
    if (std::strtod(ebuf, nullptr) < err) {
        std::snprintf(ebuf, sizeof ebuf, "%.0e", (mant + 1) * scale);
    }
    return std::string(buf) + " +/- " + ebuf;
}

// Largest multiple of 10^-places not above lo (lower) or smallest not below
// hi (upper).
inline std::string decimal_floor(double lo, int places)
{
    const double scale = std::pow(10.0, places);
    const double v = std::floor(std::nextafter(lo * scale, -1e300)) / scale;
    std::ostringstream os;
    os << std::fixed << std::setprecision(places) << v;
    return os.str();
}

inline std::string decimal_ceil(double hi, int places)
{
    const double scale = std::pow(10.0, places);
    const double v = std::ceil(std::nextafter(hi * scale, 1e300)) / scale;
    std::ostringstream os;
    os << std::fixed << std::setprecision(places) << v;
    return os.str();
}

inline std::string decimal_round(const Rational &r, int places, bool up)
{
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
    const Rational scaled = r * scale;
    Integer q;
    if (up) {
        mpz_cdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    } else {
        mpz_fdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    }
    const bool negative = sgn(q) < 0;
    std::string digits = Integer(abs(q)).get_str();
    if (static_cast<int>(digits.size()) <= places) {
        digits.insert(0, static_cast<std::size_t>(places + 1) - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
    return (negative ? "-" : "") + digits;
}

// A value known exactly, or only through a rigorous enclosure.
struct BoundValue {
    Interval enclosure;
    std::optional<Rational> exact;

    static BoundValue of(const Rational &r) { return {Interval::enclose(r), r}; }

    std::string text() const
    {
        if (exact) {
            return exact->get_str();
        }
        return format_enclosure(enclosure);
    }
};

// ---------------------------------------------------------------------------
// Lower-bound functions for phi_d
// ---------------------------------------------------------------------------

enum class PhiKind { exact_phi1, trivial, mawa, thm4, tabulated };

class PhiBound
{
public:
    // phi_1(a) = 2a(1-a)
    static PhiBound exact_phi1() { return PhiBound(PhiKind::exact_phi1, 1); }
    // phi_d(a) >= a
    static PhiBound trivial(int d) { return PhiBound(PhiKind::trivial, d); }
    // (3/4)(1 - sqrt(1-4a))(1-4a) on [0, 1/4]
    static PhiBound mawa(int d = 2) { return PhiBound(PhiKind::mawa, d); }
    // (3/4) a (3 - sqrt(1+8a)); beyond its maximum the value is capped at
    // the value at 1/2 so that the bound stays nondecreasing.
    static PhiBound thm4() { return PhiBound(PhiKind::thm4, 2); }
    // Step function: value of the largest tabulated argument not above a.
    static PhiBound tabulated(int d, std::vector<std::pair<Rational, Rational>> table)
    {
        if (table.empty()) {
            throw std::invalid_argument("tabulated bound needs at least one point");
        }
        std::sort(table.begin(), table.end());
        if (table.front().first != 0) {
            throw std::invalid_argument("tabulated bound must start at argument 0");
        }
        PhiBound b(PhiKind::tabulated, d);
        b.table_ = std::move(table);
        return b;
    }

    static PhiBound parse(const std::string &name, int d = 2)
    {
        if (name == "trivial") {
            return trivial(d);
        }
        if (name == "mawa") {
            return mawa(d);
        }
        if (name == "thm4") {
            return thm4();
        }
        if (name == "exact") {
            return exact_phi1();
        }
        throw std::invalid_argument("unknown phi bound '" + name + "' (expected trivial, mawa, thm4 or exact)");
    }

    PhiKind kind() const { return kind_; }
    int dimension() const { return dimension_; }
    const Rational &offset() const { return offset_; }

    std::string name() const
    {
        std::string base;
        switch (kind_) {
        case PhiKind::exact_phi1:
            base = "exact";
            break;
        case PhiKind::trivial:
            base = "trivial";
            break;
        case PhiKind::mawa:
            base = "mawa";
            break;
        case PhiKind::thm4:
            base = "thm4";
            break;
        case PhiKind::tabulated:
            base = "tabulated";
            break;
        }
        if (offset_ != 0) {
            base += (sgn(offset_) > 0 ? "+" : "") + offset_.get_str();
        }
        return base;
    }

    // The same bound moved up or down by a constant.
    PhiBound shifted(const Rational &delta) const
    {
        PhiBound b = *this;
        b.offset_ += delta;
        return b;
    }

    Rational domain_hi() const { return kind_ == PhiKind::mawa ? make_rational(1, 4) : make_rational(1, 2); }

    bool monotone_kind() const { return kind_ != PhiKind::mawa; }

    // Enclosure of the bound's values over every argument in x.
    Interval operator()(const Interval &x) const
    {
        check_domain(x.lo(), x.hi());
        Interval v;
        if (monotone_kind()) {
            const Interval lo = point(Interval(x.lo()));
            const Interval hi = point(Interval(x.hi()));
            v = Interval(lo.lo(), std::max(lo.hi(), hi.hi()));
            if (kind_ == PhiKind::tabulated) {
                v = tabulated_range(x);
            }
        } else {
            v = point(x);
        }
        if (offset_ != 0) {
            v = v + Interval::enclose(offset_);
        }
        return v;
    }

    Interval operator()(const Rational &x) const
    {
        check_domain(x);
        Interval v = kind_ == PhiKind::tabulated ? Interval::enclose(table_value(x)) : point(Interval::enclose(x));
        if (offset_ != 0) {
            v = v + Interval::enclose(offset_);
        }
        return v;
    }

    // The exact value when it is rational.
    std::optional<Rational> exact(const Rational &x) const
    {
        check_domain(x);
        std::optional<Rational> v;
        switch (kind_) {
        case PhiKind::exact_phi1:
            v = 2 * x * (1 - x);
            break;
        case PhiKind::trivial:
            v = x;
            break;
        case PhiKind::tabulated:
            v = table_value(x);
            break;
        case PhiKind::mawa: {
            Rational root;
            if (exact_sqrt(Rational(1 - 4 * x), root)) {
                v = make_rational(3, 4) * (1 - root) * (1 - 4 * x);
            }
            break;
        }
        case PhiKind::thm4: {
            Rational root;
            if (exact_sqrt(Rational(1 + 8 * x), root)) {
                const Rational f = make_rational(3, 4) * x * (3 - root);
                // f increases up to beyond 3/8 and f(3/8) = 9/32 < f(1/2).
                if (x <= make_rational(3, 8) || Interval::enclose(f).hi() < thm4_cap().lo()) {
                    v = f;
                }
            }
            break;
        }
        }
        if (v) {
            *v += offset_;
        }
        return v;
    }

    // Checks monotonicity on [lo, hi] by sampling.
    bool nondecreasing_on(double lo, double hi, int samples = 400) const
    {
        double prev = -1e300;
        for (int i = 0; i <= samples; ++i) {
            const double x = lo + (hi - lo) * i / samples;
            const double v = (*this)(Interval(x)).mid();
            if (v < prev - 1e-12) {
                return false;
            }
            prev = v;
        }
        return true;
    }

private:
    PhiBound(PhiKind kind, int d) : kind_(kind), dimension_(d)
    {
        if (d < 1) {
            throw std::invalid_argument("phi bound dimension must be positive");
        }
    }

    static Interval thm4_raw(const Interval &x)
    {
        return Interval(0.75) * x * (Interval(3.0) - sqrt(Interval(1.0) + Interval(8.0) * x));
    }

    static Interval thm4_cap() { return thm4_raw(Interval(0.5)); }

    Interval point(const Interval &x) const
    {
        switch (kind_) {
        case PhiKind::exact_phi1:
            return Interval(2.0) * x * (Interval(1.0) - x);
        case PhiKind::trivial:
            return x;
        case PhiKind::mawa: {
            const Interval u = Interval(1.0) - Interval(4.0) * x;
            return Interval(0.75) * (Interval(1.0) - sqrt(u)) * u;
        }
        case PhiKind::thm4:
            return min(thm4_raw(x), thm4_cap());
        case PhiKind::tabulated:
            return tabulated_range(x);
        }
        return x;
    }

    Rational table_value(const Rational &x) const
    {
        Rational v = table_.front().second;
        for (const auto &[a, value] : table_) {
            if (a <= x) {
                v = value;
            }
        }
        return v;
    }

    Interval tabulated_range(const Interval &x) const
    {
        std::optional<Interval> out;
        for (std::size_t i = 0; i < table_.size(); ++i) {
            const double a = Interval::enclose(table_[i].first).lo();
            const double next = i + 1 < table_.size() ? Interval::enclose(table_[i + 1].first).hi() : 1e300;
            if (next <= x.lo() || a > x.hi()) {
                continue;
            }
            const Interval v = Interval::enclose(table_[i].second);
            out = out ? hull(*out, v) : v;
        }
        return out ? *out : Interval::enclose(table_.front().second);
    }

    void check_domain(double lo, double hi) const
    {
        if (lo < 0 || hi > domain_hi().get_d()) {
            std::ostringstream os;
            os << "argument [" << lo << ", " << hi << "] of the " << name() << " bound leaves [0, "
               << domain_hi().get_str() << "]";
            throw std::domain_error(os.str());
        }
    }

    void check_domain(const Rational &x) const
    {
        if (sgn(x) < 0 || x > domain_hi()) {
            throw std::domain_error("argument " + x.get_str() + " of the " + name() + " bound leaves [0, " +
                                    domain_hi().get_str() + "]");
        }
    }

    PhiKind kind_;
    int dimension_;
    Rational offset_ = 0;
    std::vector<std::pair<Rational, Rational>> table_;
};

// Default bound for each level: exact phi_1, the chosen phi_2, trivial above.
inline std::vector<PhiBound> standard_bounds(int d, const PhiBound &phi2)
{
    std::vector<PhiBound> out;
    for (int k = 1; k <= d; ++k) {
        out.push_back(k == 1 ? PhiBound::exact_phi1() : k == 2 ? phi2 : PhiBound::trivial(k));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Closed formulas
// ---------------------------------------------------------------------------

inline void check_dimension(int d)
{
    if (d < 1) {
        throw std::invalid_argument("dimension must be at least 1");
    }
}

inline Integer factorial(unsigned long n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer power(long base, unsigned long e)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
    return r;
}

// 2d / ((d+1)! (d+1))
inline Rational simple_bound(int d)
{
    check_dimension(d);
    Rational r(Integer(2 * d), factorial(d + 1) * (d + 1));
    r.canonicalize();
    return r;
}

// (d+1)! / (d+1)^(d+1)
inline Rational upper_bound(int d)
{
    check_dimension(d);
    Rational r(factorial(d + 1), power(d + 1, d + 1));
    r.canonicalize();
    return r;
}

// (d^2+1) / (d+1)^(d+1)
inline Rational wagner_bound(int d)
{
    check_dimension(d);
    Rational r(Integer(d * d + 1), power(d + 1, d + 1));
    r.canonicalize();
    return r;
}

// phi_d(phi_{d-1}(... phi_1(1/(d+1)) / d ...) / 2), evaluated exactly while
// every step stays rational and by interval arithmetic throughout.
inline BoundValue gromov_nested(int d, const std::vector<PhiBound> &bounds)
{
    check_dimension(d);
    if (static_cast<int>(bounds.size()) != d) {
        throw std::invalid_argument("gromov_nested needs one bound per dimension 1.." + std::to_string(d));
    }
    for (int k = 1; k <= d; ++k) {
        if (bounds[k - 1].dimension() != k) {
            throw std::invalid_argument("bound " + std::to_string(k) + " is declared for dimension " +
                                        std::to_string(bounds[k - 1].dimension()));
        }
    }
    std::optional<Rational> exact = make_rational(1, d + 1);
    Interval x = Interval::enclose(*exact);
    for (int k = 1; k <= d; ++k) {
        const PhiBound &phi = bounds[k - 1];
        const int divisor = k < d ? d + 1 - k : 1;
        if (exact) {
            exact = phi.exact(*exact);
        }
        x = (exact ? Interval::enclose(*exact) : phi(x)) / Interval(static_cast<double>(divisor));
        if (exact) {
            *exact /= divisor;
        } else if (x.lo() < 0 || x.hi() > 0.5) {
            throw std::domain_error("nested argument leaves [0, 1/2]");
        }
    }
    return {exact ? Interval::enclose(*exact) : x, exact};
}

// ---------------------------------------------------------------------------
// Pagoda system
// ---------------------------------------------------------------------------

// literal: the four inequalities as printed, with eps2 a free unknown.
// phi1_equality: the third relation closed as an equality, which fixes
// eps2 = 3/8 - phi1(1/4 - 3 eps1).
enum class PagodaReading { literal, phi1_equality };

inline std::string to_string(PagodaReading r) { return r == PagodaReading::literal ? "literal" : "phi1_equality"; }

inline PagodaReading parse_pagoda_reading(const std::string &s)
{
    if (s == "literal") {
        return PagodaReading::literal;
    }
    if (s == "phi1_equality") {
        return PagodaReading::phi1_equality;
    }
    throw std::invalid_argument("pagoda reading must be literal or phi1_equality");
}

struct PagodaOptions {
    PagodaReading reading = PagodaReading::phi1_equality;
    PhiBound phi1 = PhiBound::exact_phi1();
    double precision = 1e-6;
    // Box for eps0, eps1 (and eps2 in the literal reading).
    double box = 0.05;
    double eps_lo = -0.05;
    double eps_hi = 0.05;
    int grid = 16;
    double min_width = 1e-11;
    std::size_t max_cells = 4'000'000;
};

enum class Feasibility { infeasible, feasible, undecided };

inline std::string to_string(Feasibility f)
{
    switch (f) {
    case Feasibility::infeasible:
        return "infeasible";
    case Feasibility::feasible:
        return "feasible";
    case Feasibility::undecided:
        return "undecided";
    }
    return "?";
}

// 3(3 - sqrt 2)/64
inline Interval pagoda_base()
{
    return Interval(3.0) * (Interval(3.0) - sqrt(Interval(2.0))) / Interval(64.0);
}

namespace detail
{

struct PagodaCell {
    Interval e0;
    Interval e1;
    Interval e2;
};

// Enclosures of the four constraint functions, each required to be <= 0.
inline std::array<Interval, 4> pagoda_constraints(const PhiBound &phi1, const PhiBound &phi2, PagodaReading reading,
                                                  const Interval &two_t, const PagodaCell &c)
{
    const Interval e2 = reading == PagodaReading::phi1_equality
                            ? Interval(0.375) - phi1(Interval(0.25) - Interval(3.0) * c.e1)
                            : c.e2;
    const Interval arg0 = Interval(0.125) + Interval(2.0) * c.e0;
    const Interval g1 = phi2(arg0) - two_t;
    const Interval g2 = phi1(Interval(0.25) + c.e1) - Interval(3.0) * arg0;
    const Interval g3 = reading == PagodaReading::literal
                            ? Interval(4.0) * (Interval(0.375) - e2) -
                                  Interval(4.0) * phi1(Interval(0.25) - Interval(3.0) * c.e1)
                            : Interval(0.0);
    const Interval g4 = Interval(-6.0) * c.e0 + Interval(24.0) * square(c.e1) + Interval(2.0) * c.e1 * e2 -
                        Interval(6.75) * c.e1 - Interval(1.5) * e2 + Interval(0.1875) - two_t;
    return {g1, g2, g3, g4};
}

} // namespace detail

// Decides whether some (eps0, eps1, eps2) in the box satisfies the system
// at base density plus eps.
inline Feasibility pagoda_feasibility(const PhiBound &phi2, double eps, const PagodaOptions &opt = {},
                                      std::size_t *cells_used = nullptr)
{
    const Interval two_t = Interval(2.0) * (pagoda_base() + Interval(eps));
    const bool literal = opt.reading == PagodaReading::literal;
    const int g = std::max(1, opt.grid);
    const double step = 2 * opt.box / g;
    auto slice = [&](int i) { return Interval(-opt.box + step * i, i + 1 == g ? opt.box : -opt.box + step * (i + 1)); };
    std::vector<detail::PagodaCell> roots;
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            if (literal) {
                for (int k = 0; k < g; ++k) {
                    roots.push_back({slice(i), slice(j), slice(k)});
                }
            } else {
                roots.push_back({slice(i), slice(j), Interval(0.0)});
            }
        }
    }
    const std::size_t budget = std::max<std::size_t>(64, opt.max_cells / roots.size());
    std::atomic<bool> found{false};
    std::atomic<std::size_t> used{0};
    std::vector<char> undecided(roots.size(), 0);

    auto infeasible = [](const std::array<Interval, 4> &gs) {
        return std::any_of(gs.begin(), gs.end(), [](const Interval &v) { return v.lo() > 0; });
    };
    auto satisfied = [](const std::array<Interval, 4> &gs) {
        return std::all_of(gs.begin(), gs.end(), [](const Interval &v) { return v.hi() <= 0; });
    };

    parallel_for(roots.size(), [&](std::size_t r) {
        std::vector<detail::PagodaCell> stack{roots[r]};
        std::size_t count = 0;
        while (!stack.empty() && !found.load(std::memory_order_relaxed)) {
            const detail::PagodaCell c = stack.back();
            stack.pop_back();
            ++count;
            if (infeasible(detail::pagoda_constraints(opt.phi1, phi2, opt.reading, two_t, c))) {
                continue;
            }
            const detail::PagodaCell mid{Interval(c.e0.mid()), Interval(c.e1.mid()),
                                         literal ? Interval(c.e2.mid()) : Interval(0.0)};
            if (satisfied(detail::pagoda_constraints(opt.phi1, phi2, opt.reading, two_t, mid))) {
                found.store(true);
                break;
            }
            const double w0 = c.e0.width();
            const double w1 = c.e1.width();
            const double w2 = literal ? c.e2.width() : 0.0;
            const double w = std::max({w0, w1, w2});
            if (w < opt.min_width || count > budget) {
                undecided[r] = 1;
                continue;
            }
            auto halves = [](const Interval &x) {
                return std::pair{Interval(x.lo(), x.mid()), Interval(x.mid(), x.hi())};
            };
            detail::PagodaCell a = c;
            detail::PagodaCell b = c;
            if (w == w0) {
                std::tie(a.e0, b.e0) = halves(c.e0);
            } else if (w == w1) {
                std::tie(a.e1, b.e1) = halves(c.e1);
            } else {
                std::tie(a.e2, b.e2) = halves(c.e2);
            }
            stack.push_back(a);
            stack.push_back(b);
        }
        used.fetch_add(count);
    });
    if (cells_used != nullptr) {
        *cells_used = used.load();
    }
    if (found.load()) {
        return Feasibility::feasible;
    }
    return std::any_of(undecided.begin(), undecided.end(), [](char u) { return u != 0; }) ? Feasibility::undecided
                                                                                          : Feasibility::infeasible;
}

struct PagodaResult {
    std::string phi2;
    PagodaReading reading = PagodaReading::phi1_equality;
    // Largest eps at which infeasibility was certified; the true threshold
    // lies below epsilon_star + precision.
    double epsilon_star = 0;
    double precision = 0;
    Interval c3_bound;
    bool degenerate = false;
    std::size_t cells = 0;
    int steps = 0;
    std::string note;
};

inline PagodaResult pagoda_threshold(const PhiBound &phi2, const PagodaOptions &opt = {})
{
    if (!(opt.precision > 0) || !(opt.eps_lo < opt.eps_hi) || !(opt.box > 0)) {
        throw std::invalid_argument("pagoda options need precision > 0, eps_lo < eps_hi and box > 0");
    }
    const double arg_lo = 0.125 - 2 * opt.box;
    const double arg_hi = 0.125 + 2 * opt.box;
    if (arg_lo < 0 || arg_hi > phi2.domain_hi().get_d()) {
        throw std::domain_error("the phi2 argument range [" + std::to_string(arg_lo) + ", " + std::to_string(arg_hi) +
                                "] leaves the domain of the " + phi2.name() + " bound");
    }
    if (!phi2.nondecreasing_on(arg_lo, arg_hi)) {
        throw std::domain_error("the " + phi2.name() + " bound is not nondecreasing on [" + std::to_string(arg_lo) +
                                ", " + std::to_string(arg_hi) + "]");
    }

    PagodaResult out;
    out.phi2 = phi2.name();
    out.reading = opt.reading;
    out.precision = opt.precision;
    std::size_t cells = 0;
    auto decide = [&](double eps) {
        std::size_t used = 0;
        const Feasibility f = pagoda_feasibility(phi2, eps, opt, &used);
        cells += used;
        ++out.steps;
        return f;
    };
    if (decide(opt.eps_lo) != Feasibility::infeasible) {
        throw std::runtime_error("the pagoda system is not certified infeasible at eps = " +
                                 std::to_string(opt.eps_lo) + " (" + phi2.name() + ", " + to_string(opt.reading) +
                                 " reading)");
    }
    if (decide(opt.eps_hi) == Feasibility::infeasible) {
        throw std::runtime_error("the pagoda system is infeasible across the whole eps range; the eps_i box is too "
                                 "small to bound the feasible set");
    }
    double lo = opt.eps_lo;
    double hi = opt.eps_hi;
    while (hi - lo > opt.precision) {
        const double m = lo + (hi - lo) / 2;
        if (decide(m) == Feasibility::infeasible) {
            lo = m;
        } else {
            hi = m;
        }
    }
    out.epsilon_star = lo;
    out.cells = cells;
    out.c3_bound = pagoda_base() + Interval(lo);
    if (lo <= 0) {
        out.degenerate = true;
        out.note = "no contradiction above the base density 3(3-sqrt 2)/64; the implied bound is base + eps*";
    }
    return out;
}

inline nlohmann::ordered_json to_json(const PagodaResult &r)
{
    return {{"phi2", r.phi2},
            {"reading", to_string(r.reading)},
            {"epsilon_star", r.epsilon_star},
            {"precision", r.precision},
            {"c3_lower", decimal_floor(r.c3_bound.lo(), 5)},
            {"c3_enclosure", format_enclosure(r.c3_bound)},
            {"degenerate", r.degenerate},
            {"cells", r.cells},
            {"bisection_steps", r.steps},
            {"note", r.note}};
}

// ---------------------------------------------------------------------------
// Comparison table
// ---------------------------------------------------------------------------

struct TableRow {
    std::string label;
    std::string value;
    std::string decimal;
    std::string note;
};

struct BoundsTableOptions {
    int d = 3;
    std::string phi2 = "thm4";
    bool pagoda = true;
    PagodaOptions pagoda_options;
};

inline std::vector<TableRow> bounds_table(const BoundsTableOptions &opt = {})
{
    const int d = opt.d;
    const PhiBound phi2 = PhiBound::parse(opt.phi2);
    std::vector<TableRow> rows;
    auto exact_row = [](std::string label, const Rational &r, bool lower, std::string note = "") {
        return TableRow{std::move(label), r.get_str(), decimal_round(r, 5, !lower), std::move(note)};
    };
    rows.push_back(exact_row("Wagner", wagner_bound(d), true, "(d^2+1)/(d+1)^(d+1)"));
    if (d == 3) {
        rows.push_back({"Basit et al.", "0.05448", "0.05448", "stored literal"});
    }
    rows.push_back(exact_row("Gromov", simple_bound(d), true, "2d/((d+1)!(d+1))"));
    if (d == 3) {
        rows.push_back({"Matousek-Wagner", "0.06332", "0.06332", "stored literal"});
    }
    try {
        const BoundValue nested = gromov_nested(d, standard_bounds(d, phi2));
        rows.push_back({"nested, phi2 " + phi2.name(), nested.text(),
                        nested.exact ? decimal_round(*nested.exact, 5, false) : decimal_floor(nested.enclosure.lo(), 5), "exact phi1, trivial phi3 and above"});
    } catch (const std::domain_error &e) {
        rows.push_back({"nested, phi2 " + phi2.name(), "-", "-", e.what()});
    }
    if (d == 3 && opt.pagoda) {
        const std::string label = "pagoda, phi2 " + phi2.name();
        try {
            const PagodaResult p = pagoda_threshold(phi2, opt.pagoda_options);
            std::ostringstream note;
            note << "eps* = " << std::setprecision(6) << p.epsilon_star << ", " << to_string(p.reading) << " reading";
            if (p.degenerate) {
                note << ", degenerate";
            }
            rows.push_back({label, format_enclosure(p.c3_bound), decimal_floor(p.c3_bound.lo(), 5), note.str()});
        } catch (const std::exception &e) {
            rows.push_back({label, "-", "-", std::string("skipped: ") + e.what()});
        }
    }
    rows.push_back(exact_row("upper", upper_bound(d), false, "(d+1)!/(d+1)^(d+1)"));
    return rows;
}

inline std::string format_table(const std::vector<TableRow> &rows)
{
    std::size_t w[3] = {5, 5, 7};
    for (const auto &r : rows) {
        w[0] = std::max(w[0], r.label.size());
        w[1] = std::max(w[1], r.value.size());
        w[2] = std::max(w[2], r.decimal.size());
    }
    std::ostringstream os;
    auto line = [&](const std::string &a, const std::string &b, const std::string &c, const std::string &n) {
        os << std::left << std::setw(static_cast<int>(w[0])) << a << "  " << std::setw(static_cast<int>(w[1])) << b
           << "  " << std::setw(static_cast<int>(w[2])) << c;
        if (!n.empty()) {
            os << "  " << n;
        }
        os << "\n";
    };
    line("bound", "value", "decimal", "note");
    for (const auto &r : rows) {
        line(r.label, r.value, r.decimal, r.note);
    }
    return os.str();
}

inline nlohmann::ordered_json to_json(const std::vector<TableRow> &rows)
{
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto &r : rows) {
        out.push_back({{"bound", r.label}, {"value", r.value}, {"decimal", r.decimal}, {"note", r.note}});
    }
    return out;
}

} // namespace flagcert

#endif
