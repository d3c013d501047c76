#ifndef FLAGCERT_POLY_HPP
#define FLAGCERT_POLY_HPP

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace flagcert
{

// Dense univariate polynomial over the rationals; coefficient i multiplies
// x^i. Trailing zeros are always stripped, so the zero polynomial has no
// coefficients and degree -1.
class RatPoly
{
public:
    RatPoly() = default;
    RatPoly(const Rational &c) : coeffs_{c} { trim(); }
    RatPoly(long c) : RatPoly(Rational(c)) {}
    explicit RatPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static RatPoly x() { return RatPoly(std::vector<Rational>{0, 1}); }
    static RatPoly monomial(const Rational &c, std::size_t k)
    {
        std::vector<Rational> v(k + 1, Rational(0));
        v[k] = c;
        return RatPoly(std::move(v));
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational> &coeffs() const { return coeffs_; }
    Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
    Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }
    bool is_constant() const { return degree() <= 0; }

    Rational operator()(const Rational &at) const
    {
        Rational acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * at + *it;
        }
        return acc;
    }

    template <class T>
    T evaluate(const T &at, const T &zero) const
    {
        T acc = zero;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * at + T(*it);
        }
        return acc;
    }

    friend RatPoly operator+(const RatPoly &a, const RatPoly &b)
    {
        std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            v[i] += a.coeffs_[i];
        }
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
            v[i] += b.coeffs_[i];
        }
        return RatPoly(std::move(v));
    }
    friend RatPoly operator-(const RatPoly &a) { return a * RatPoly(-1); }
    friend RatPoly operator-(const RatPoly &a, const RatPoly &b) { return a + (-b); }
    friend RatPoly operator*(const RatPoly &a, const RatPoly &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                v[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return RatPoly(std::move(v));
    }
    RatPoly &operator+=(const RatPoly &o) { return *this = *this + o; }
    RatPoly &operator-=(const RatPoly &o) { return *this = *this - o; }
    RatPoly &operator*=(const RatPoly &o) { return *this = *this * o; }

    friend bool operator==(const RatPoly &a, const RatPoly &b) { return a.coeffs_ == b.coeffs_; }

    // Euclidean division: a = q*b + r with deg r < deg b.
    friend std::pair<RatPoly, RatPoly> divmod(const RatPoly &a, const RatPoly &b)
    {
        if (b.is_zero()) {
            throw std::domain_error("polynomial division by zero");
        }
        std::vector<Rational> rem = a.coeffs_;
        const int db = b.degree();
        if (a.degree() < db) {
            return {RatPoly(), a};
        }
        std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
        const Rational lead = b.leading();
        for (int k = a.degree() - db; k >= 0; --k) {
            const Rational c = rem[static_cast<std::size_t>(k + db)] / lead;
            quo[static_cast<std::size_t>(k)] = c;
            if (sgn(c) != 0) {
                for (int j = 0; j <= db; ++j) {
                    rem[static_cast<std::size_t>(k + j)] -= c * b.coeffs_[static_cast<std::size_t>(j)];
                }
            }
        }
        rem.resize(static_cast<std::size_t>(db));
        return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
    }

    RatPoly monic() const
    {
        if (is_zero()) {
            return *this;
        }
        std::vector<Rational> v = coeffs_;
        const Rational lead = leading();
        for (auto &c : v) {
            c /= lead;
        }
        return RatPoly(std::move(v));
    }

    RatPoly derivative() const
    {
        if (coeffs_.size() <= 1) {
            return {};
        }
        std::vector<Rational> v(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) {
            v[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
        }
        return RatPoly(std::move(v));
    }

    // Substitute another polynomial for x.
    RatPoly compose(const RatPoly &inner) const
    {
        RatPoly acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * inner + RatPoly(*it);
        }
        return acc;
    }

    // Sparse "c*b^k" notation, e.g. "3/4 + -1/2*b^2".
    std::string to_string(std::string_view var = "b") const
    {
        if (is_zero()) {
            return "0";
        }
        std::string out;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (sgn(coeffs_[i]) == 0) {
                continue;
            }
            if (!out.empty()) {
                out += " + ";
            }
            out += coeffs_[i].get_str();
            if (i == 1) {
                out += "*" + std::string(var);
            } else if (i > 1) {
                out += "*" + std::string(var) + "^" + std::to_string(i);
            }
        }
        return out;
    }

    friend std::ostream &operator<<(std::ostream &os, const RatPoly &p) { return os << p.to_string(); }

private:
    void trim()
    {
        while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) {
            coeffs_.pop_back();
        }
    }

    std::vector<Rational> coeffs_;
};

inline RatPoly parse_poly(std::string_view text, char var = 'b')
{
    RatPoly out;
    std::string s;
    for (char c : text) {
        if (c != ' ') {
            s += c;
        }
    }
    if (s.empty()) {
        throw std::invalid_argument("empty polynomial text");
    }
    // Split on '+' that is not part of an exponent or sign of a coefficient.
    std::vector<std::string> terms;
    std::string cur;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '+' && !cur.empty()) {
            terms.push_back(cur);
            cur.clear();
        } else {
            cur += s[i];
        }
    }
    if (!cur.empty()) {
        terms.push_back(cur);
    }
    for (const auto &t : terms) {
        const auto star = t.find('*');
        Rational c;
        std::size_t k = 0;
        if (star == std::string::npos) {
            if (!t.empty() && t.back() == var) {
                throw std::invalid_argument("polynomial term needs an explicit coefficient: " + t);
            }
            c = parse_rational(t);
        } else {
            c = parse_rational(t.substr(0, star));
            const std::string mono = t.substr(star + 1);
            if (mono.empty() || mono[0] != var) {
                throw std::invalid_argument("bad monomial in polynomial text: " + t);
            }
            if (mono.size() == 1) {
                k = 1;
            } else if (mono[1] == '^') {
                k = std::stoul(mono.substr(2));
            } else {
                throw std::invalid_argument("bad monomial in polynomial text: " + t);
            }
        }
        out += RatPoly::monomial(c, k);
    }
    return out;
}

inline RatPoly gcd(RatPoly a, RatPoly b)
{
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline RatPoly square_free_part(const RatPoly &p)
{
    if (p.degree() <= 0) {
        return p.monic();
    }
    const RatPoly g = gcd(p, p.derivative());
    return divmod(p, g).first.monic();
}

// Sturm chain of the square-free part of p.
inline std::vector<RatPoly> sturm_sequence(const RatPoly &p)
{
    if (p.is_zero()) {
        throw std::invalid_argument("Sturm sequence of the zero polynomial");
    }
    std::vector<RatPoly> seq{square_free_part(p)};
    seq.push_back(seq.front().derivative());
    while (!seq.back().is_zero()) {
        RatPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
        seq.push_back(-r);
    }
    seq.pop_back();
    return seq;
}

inline int sign_variations(const std::vector<RatPoly> &seq, const Rational &at)
{
    int count = 0;
    int last = 0;
    for (const auto &q : seq) {
        const int s = sgn(q(at));
        if (s == 0) {
            continue;
        }
        if (last != 0 && s != last) {
            ++count;
        }
        last = s;
    }
    return count;
}

// Number of distinct real roots in the half-open interval (lo, hi].
inline int sturm_root_count(const RatPoly &p, const Rational &lo, const Rational &hi)
{
    if (p.is_zero()) {
        throw std::invalid_argument("sturm_root_count: zero polynomial");
    }
    if (!(lo < hi)) {
        throw std::invalid_argument("sturm_root_count: need lo < hi");
    }
    const auto seq = sturm_sequence(p);
    return sign_variations(seq, lo) - sign_variations(seq, hi);
}

} // namespace flagcert

#endif
