#ifndef FLAGCERT_INTERVAL_HPP
#define FLAGCERT_INTERVAL_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "rational.hpp"

namespace flagcert
{

// Closed interval of doubles. Every operation rounds to nearest and then
// widens by one ulp in each direction, so the exact real result of the
// operation on any points of the operands is contained in the result.
class Interval
{
public:
    Interval() = default;
    Interval(double v) : lo_(v), hi_(v) {}
    Interval(double lo, double hi) : lo_(lo), hi_(hi)
    {
        if (!(lo <= hi)) {
            throw std::invalid_argument("interval with lo > hi");
        }
    }

    static Interval enclose(const Rational &r)
    {
        const double d = r.get_d();
        Interval out(down(d), up(d));
        return out;
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double mid() const { return lo_ + (hi_ - lo_) / 2; }
    double width() const { return hi_ - lo_; }
    bool contains(double v) const { return lo_ <= v && v <= hi_; }

    friend Interval operator+(const Interval &a, const Interval &b)
    {
        return {down(a.lo_ + b.lo_), up(a.hi_ + b.hi_)};
    }
    friend Interval operator-(const Interval &a, const Interval &b)
    {
        return {down(a.lo_ - b.hi_), up(a.hi_ - b.lo_)};
    }
    friend Interval operator-(const Interval &a) { return {-a.hi_, -a.lo_}; }
    friend Interval operator*(const Interval &a, const Interval &b)
    {
        const double p[] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
        return {down(*std::min_element(p, p + 4)), up(*std::max_element(p, p + 4))};
    }
    friend Interval operator/(const Interval &a, const Interval &b)
    {
        if (b.lo_ <= 0 && b.hi_ >= 0) {
            throw std::domain_error("interval division by an interval containing zero");
        }
        const double q[] = {a.lo_ / b.lo_, a.lo_ / b.hi_, a.hi_ / b.lo_, a.hi_ / b.hi_};
        return {down(*std::min_element(q, q + 4)), up(*std::max_element(q, q + 4))};
    }
    Interval &operator+=(const Interval &o) { return *this = *this + o; }
    Interval &operator-=(const Interval &o) { return *this = *this - o; }
    Interval &operator*=(const Interval &o) { return *this = *this * o; }

    friend Interval square(const Interval &a)
    {
        if (a.lo_ >= 0) {
            return {down(a.lo_ * a.lo_), up(a.hi_ * a.hi_)};
        }
        if (a.hi_ <= 0) {
            return {down(a.hi_ * a.hi_), up(a.lo_ * a.lo_)};
        }
        const double m = std::max(-a.lo_, a.hi_);
        return {0.0, up(m * m)};
    }

    friend Interval sqrt(const Interval &a)
    {
        if (a.hi_ < 0) {
            throw std::domain_error("square root of a negative interval");
        }
        const double lo = a.lo_ <= 0 ? 0.0 : std::max(0.0, down(std::sqrt(a.lo_)));
        return {lo, up(std::sqrt(a.hi_))};
    }

    friend Interval min(const Interval &a, const Interval &b)
    {
        return {std::min(a.lo_, b.lo_), std::min(a.hi_, b.hi_)};
    }
    friend Interval max(const Interval &a, const Interval &b)
    {
        return {std::max(a.lo_, b.lo_), std::max(a.hi_, b.hi_)};
    }
    friend Interval hull(const Interval &a, const Interval &b)
    {
        return {std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_)};
    }

    friend std::ostream &operator<<(std::ostream &os, const Interval &a)
    {
        return os << '[' << a.lo_ << ", " << a.hi_ << ']';
    }

private:
    static double down(double v) { return std::nextafter(v, -std::numeric_limits<double>::infinity()); }
    static double up(double v) { return std::nextafter(v, std::numeric_limits<double>::infinity()); }

    double lo_ = 0.0;
    double hi_ = 0.0;
};

} // namespace flagcert

#endif
