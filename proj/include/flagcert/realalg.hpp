#ifndef FLAGCERT_REALALG_HPP
#define FLAGCERT_REALALG_HPP

#include <algorithm>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "interval.hpp"
#include "poly.hpp"
#include "rational.hpp"

namespace flagcert
{

// Quotient of two polynomials in lowest terms with a monic denominator.
class RatFunc
{
public:
    RatFunc() : den_(1) {}
    RatFunc(const Rational &c) : num_(c), den_(1) {}
    RatFunc(long c) : RatFunc(Rational(c)) {}
    RatFunc(RatPoly num) : num_(std::move(num)), den_(1) {}
    RatFunc(RatPoly num, RatPoly den) : num_(std::move(num)), den_(std::move(den))
    {
        if (den_.is_zero()) {
            throw std::domain_error("rational function with zero denominator");
        }
        normalize();
    }

    const RatPoly &num() const { return num_; }
    const RatPoly &den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    Rational operator()(const Rational &at) const
    {
        const Rational d = den_(at);
        if (sgn(d) == 0) {
            throw std::domain_error("rational function evaluated at a pole (" + at.get_str() + ")");
        }
        return num_(at) / d;
    }
    Interval operator()(const Interval &at) const
    {
        auto eval = [&](const RatPoly &p) {
            Interval acc(0.0);
            for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
                acc = acc * at + Interval::enclose(*it);
            }
            return acc;
        };
        return eval(num_) / eval(den_);
    }

    friend RatFunc operator+(const RatFunc &a, const RatFunc &b)
    {
        if (a.den_ == b.den_) {
            return {a.num_ + b.num_, a.den_};
        }
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RatFunc operator-(const RatFunc &a) { return {-a.num_, a.den_}; }
    friend RatFunc operator-(const RatFunc &a, const RatFunc &b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc &a, const RatFunc &b) { return {a.num_ * b.num_, a.den_ * b.den_}; }
    friend RatFunc operator/(const RatFunc &a, const RatFunc &b)
    {
        if (b.is_zero()) {
            throw std::domain_error("division by the zero rational function");
        }
        return {a.num_ * b.den_, a.den_ * b.num_};
    }
    RatFunc &operator+=(const RatFunc &o) { return *this = *this + o; }
    RatFunc &operator-=(const RatFunc &o) { return *this = *this - o; }
    RatFunc &operator*=(const RatFunc &o) { return *this = *this * o; }

    friend bool operator==(const RatFunc &a, const RatFunc &b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    RatFunc derivative() const
    {
        return {num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_};
    }

    std::string to_string(std::string_view var = "b") const
    {
        return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
    }

private:
    void normalize()
    {
        if (num_.is_zero()) {
            den_ = RatPoly(1);
            return;
        }
        const RatPoly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = divmod(num_, g).first;
            den_ = divmod(den_, g).first;
        }
        const Rational lead = den_.leading();
        if (lead != 1) {
            num_ = num_ * RatPoly(Rational(1) / lead);
            den_ = den_ * RatPoly(Rational(1) / lead);
        }
    }

    RatPoly num_;
    RatPoly den_;
};

// Element a(b) + c(b)*sqrt(1+8b) of the quadratic extension of Q(b). Since
// 1+8b is not a square in Q(b), the pair (a, c) is unique.
class SqrtExpr
{
public:
    SqrtExpr() = default;
    SqrtExpr(const Rational &c) : a_(c) {}
    SqrtExpr(long c) : a_(Rational(c)) {}
    SqrtExpr(RatFunc rational_part, RatFunc sqrt_part = RatFunc())
        : a_(std::move(rational_part)), b_(std::move(sqrt_part))
    {
    }

    // The radicand 1 + 8b.
    static const RatPoly &radicand()
    {
        static const RatPoly d(std::vector<Rational>{1, 8});
        return d;
    }
    static SqrtExpr beta() { return SqrtExpr(RatFunc(RatPoly::x())); }
    static SqrtExpr root() { return SqrtExpr(RatFunc(), RatFunc(1)); }

    const RatFunc &rational_part() const { return a_; }
    const RatFunc &sqrt_part() const { return b_; }
    bool is_identically_zero() const { return a_.is_zero() && b_.is_zero(); }

    friend SqrtExpr operator+(const SqrtExpr &x, const SqrtExpr &y) { return {x.a_ + y.a_, x.b_ + y.b_}; }
    friend SqrtExpr operator-(const SqrtExpr &x) { return {-x.a_, -x.b_}; }
    friend SqrtExpr operator-(const SqrtExpr &x, const SqrtExpr &y) { return {x.a_ - y.a_, x.b_ - y.b_}; }
    friend SqrtExpr operator*(const SqrtExpr &x, const SqrtExpr &y)
    {
        const RatFunc d(radicand());
        return {x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_};
    }
    friend SqrtExpr operator/(const SqrtExpr &x, const SqrtExpr &y)
    {
        const RatFunc n = y.norm();
        if (n.is_zero()) {
            throw std::domain_error("division by the zero element");
        }
        const SqrtExpr conj(y.a_, -y.b_);
        const SqrtExpr top = x * conj;
        return {top.a_ / n, top.b_ / n};
    }
    SqrtExpr &operator+=(const SqrtExpr &o) { return *this = *this + o; }
    SqrtExpr &operator-=(const SqrtExpr &o) { return *this = *this - o; }
    SqrtExpr &operator*=(const SqrtExpr &o) { return *this = *this * o; }

    friend bool operator==(const SqrtExpr &x, const SqrtExpr &y) { return (x - y).is_identically_zero(); }

    // a^2 - c^2 (1+8b); vanishes only for the zero element.
    RatFunc norm() const { return a_ * a_ - b_ * b_ * RatFunc(radicand()); }

    // d/db of a + c*sqrt(D) is a' + (c' + 4c/D) sqrt(D).
    SqrtExpr derivative() const
    {
        return {a_.derivative(), b_.derivative() + RatFunc(RatPoly(4)) * b_ / RatFunc(radicand())};
    }

    Interval operator()(const Interval &at) const
    {
        const Interval d = Interval(1.0) + Interval(8.0) * at;
        return a_(at) + b_(at) * sqrt(d);
    }

    std::string to_string() const
    {
        return "((" + a_.num().to_string() + ")/(" + a_.den().to_string() + ")) + ((" + b_.num().to_string() +
               ")/(" + b_.den().to_string() + "))*sqrt(1+8*b)";
    }
    friend std::ostream &operator<<(std::ostream &os, const SqrtExpr &x) { return os << x.to_string(); }

private:
    RatFunc a_;
    RatFunc b_;
};

inline SqrtExpr parse_sqrt_expr(std::string_view text)
{
    // ((a_num)/(a_den)) + ((b_num)/(b_den))*sqrt(1+8*b)
    std::vector<std::string> parts;
    std::size_t pos = 0;
    for (int k = 0; k < 4; ++k) {
        const auto open = text.find('(', pos);
        if (open == std::string_view::npos) {
            throw std::invalid_argument("bad SqrtExpr text");
        }
        std::size_t start = open;
        while (start < text.size() && text[start] == '(') {
            ++start;
        }
        const auto close = text.find(')', start);
        if (close == std::string_view::npos) {
            throw std::invalid_argument("bad SqrtExpr text");
        }
        parts.emplace_back(text.substr(start, close - start));
        pos = close + 1;
    }
    if (text.find("sqrt(1+8*b)", pos) == std::string_view::npos) {
        throw std::invalid_argument("SqrtExpr text must end with *sqrt(1+8*b)");
    }
    return {RatFunc(parse_poly(parts[0]), parse_poly(parts[1])), RatFunc(parse_poly(parts[2]), parse_poly(parts[3]))};
}

// Exact value at b0 where 1+8*b0 is the square of a rational.
inline Rational eval_rational_point(const SqrtExpr &x, const Rational &b0)
{
    Rational t;
    if (!exact_sqrt(SqrtExpr::radicand()(b0), t)) {
        throw std::domain_error("1+8b is not a rational square at b = " + b0.get_str());
    }
    return x.rational_part()(b0) + x.sqrt_part()(b0) * t;
}

// Exact sign at any rational point with 1+8*b0 >= 0.
inline int sign_at(const SqrtExpr &x, const Rational &b0)
{
    const Rational d = SqrtExpr::radicand()(b0);
    if (sgn(d) < 0) {
        throw std::domain_error("sqrt(1+8b) undefined at b = " + b0.get_str());
    }
    const Rational a = x.rational_part()(b0);
    const Rational c = x.sqrt_part()(b0);
    const int sa = sgn(a);
    const int sc = sgn(d) == 0 ? 0 : sgn(c);
    if (sc == 0) {
        return sa;
    }
    if (sa == 0 || sa == sc) {
        return sc;
    }
    // Opposite signs: compare |a| with |c| sqrt(d).
    const int cmp = ::cmp(a * a, c * c * d);
    return cmp > 0 ? sa : (cmp < 0 ? sc : 0);
}

enum class SignClass { nonnegative, nonpositive, mixed, undefined_at_pole };

inline std::string to_string(SignClass s)
{
    switch (s) {
    case SignClass::nonnegative:
        return "nonnegative";
    case SignClass::nonpositive:
        return "nonpositive";
    case SignClass::mixed:
        return "mixed";
    case SignClass::undefined_at_pole:
        return "undefined-at-pole";
    }
    return "?";
}

struct SignAnalysis {
    SignClass sign = SignClass::nonnegative;
    // For undefined_at_pole a pole, or the right end of a bracket of width
    // at most 2^-30 around one; for mixed a point where the value is negative.
    std::optional<Rational> witness;
    std::vector<Rational> samples;
};

enum class LowerEnd { open, closed };

namespace detail
{

// Sample points covering every maximal sub-interval of (lo, hi] on which
// the critical polynomial has no root.
inline std::vector<Rational> gap_samples(const RatPoly &critical, const Rational &lo, const Rational &hi)
{
    std::vector<Rational> samples;
    if (critical.degree() <= 0) {
        samples.push_back((lo + hi) / 2);
        return samples;
    }
    const auto seq = sturm_sequence(critical);
    auto count = [&](const Rational &a, const Rational &b) { return sign_variations(seq, a) - sign_variations(seq, b); };

    std::vector<std::pair<Rational, Rational>> stack{{lo, hi}};
    std::vector<std::pair<Rational, Rational>> cells;
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        const int c = count(a, b);
        if (c <= 1) {
            cells.emplace_back(a, b);
            continue;
        }
        const Rational m = (a + b) / 2;
        stack.emplace_back(m, b);
        stack.emplace_back(a, m);
    }
    for (auto [a, b] : cells) {
        if (count(a, b) == 0) {
            samples.push_back((a + b) / 2);
            continue;
        }
        if (sgn(critical(b)) == 0) {
            samples.push_back((a + b) / 2);
            continue;
        }
        // One root strictly inside (a, b): find points on both sides.
        for (;;) {
            const Rational m = (a + b) / 2;
            if (sgn(critical(m)) == 0) {
                samples.push_back((a + m) / 2);
                samples.push_back((m + b) / 2);
                break;
            }
            if (count(a, m) == 1) {
                samples.push_back(b);
                b = m;
                continue;
            }
            samples.push_back(m);
            samples.push_back(b);
            break;
        }
    }
    std::sort(samples.begin(), samples.end());
    samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
    return samples;
}

} // namespace detail

// Sign of x on (lo, hi] (or [lo, hi]). The interval is cut at the real
// roots of the numerator of a^2 - c^2 (1+8b), the only places where x can
// change sign, and x is evaluated exactly at one point of every piece.
inline SignAnalysis sign_on_interval(const SqrtExpr &x, const Rational &lo, const Rational &hi,
                                     LowerEnd lower = LowerEnd::open)
{
    if (!(lo < hi)) {
        throw std::invalid_argument("sign_on_interval: need lo < hi");
    }
    if (sgn(SqrtExpr::radicand()(lo)) < 0) {
        throw std::invalid_argument("sign_on_interval: interval leaves the domain b >= -1/8");
    }
    SignAnalysis out;
    if (x.is_identically_zero()) {
        out.sign = SignClass::nonnegative;
        return out;
    }
    const RatPoly poles = x.rational_part().den() * x.sqrt_part().den();
    if (poles.degree() > 0) {
        const auto seq = sturm_sequence(poles);
        const bool at_lo = lower == LowerEnd::closed && sgn(poles(lo)) == 0;
        if (at_lo || sign_variations(seq, lo) - sign_variations(seq, hi) > 0) {
            out.sign = SignClass::undefined_at_pole;
            if (at_lo) {
                out.witness = lo;
            } else {
                Rational a = lo;
                Rational b = hi;
                while (sgn(poles(b)) != 0 && b - a > Rational(1, 1L << 30)) {
                    const Rational m = (a + b) / 2;
                    if (sgn(poles(m)) == 0) {
                        b = m;
                    } else if (sign_variations(seq, a) - sign_variations(seq, m) > 0) {
                        b = m;
                    } else {
                        a = m;
                    }
                }
                out.witness = b;
            }
            return out;
        }
    }
    const RatPoly critical = x.norm().num();
    out.samples = detail::gap_samples(critical, lo, hi);
    bool pos = false;
    bool neg = false;
    std::optional<Rational> first_pos;
    std::optional<Rational> first_neg;
    for (const auto &s : out.samples) {
        const int sg = sign_at(x, s);
        if (sg > 0) {
            pos = true;
            if (!first_pos) {
                first_pos = s;
            }
        } else if (sg < 0) {
            neg = true;
            if (!first_neg) {
                first_neg = s;
            }
        }
    }
    if (pos && neg) {
        out.sign = SignClass::mixed;
        out.witness = first_neg;
    } else if (neg) {
        out.sign = SignClass::nonpositive;
    } else {
        out.sign = SignClass::nonnegative;
    }
    return out;
}

} // namespace flagcert

#endif
