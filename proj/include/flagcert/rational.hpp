#ifndef FLAGCERT_RATIONAL_HPP
#define FLAGCERT_RATIONAL_HPP

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace flagcert
{

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1)
{
    if (den == 0) {
        throw std::invalid_argument("rational with zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Integer binomial(unsigned long n, unsigned long k)
{
    if (k > n) {
        return 0;
    }
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline std::string to_string(const Rational &r)
{
    return r.get_str();
}

// Accepts "p", "p/q", and plain decimals such as "-0.0125" or "1e-6"; the
// value is converted exactly.
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.pop_back();
    }
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) {
        ++start;
    }
    s = s.substr(start);
    if (s.empty()) {
        throw std::invalid_argument("empty rational literal");
    }
    if (s.find('/') != std::string::npos) {
        Rational r;
        if (r.set_str(s, 10) != 0 || r.get_den() == 0) {
            throw std::invalid_argument("bad rational literal: " + s);
        }
        r.canonicalize();
        return r;
    }

    bool negative = false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') {
        negative = s[i] == '-';
        ++i;
    }
    std::string digits;
    long exponent = 0;
    bool seen_point = false;
    bool seen_digit = false;
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point) {
                --exponent;
            }
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (c == 'e' || c == 'E') {
            break;
        } else {
            throw std::invalid_argument("bad rational literal: " + s);
        }
    }
    if (!seen_digit) {
        throw std::invalid_argument("bad rational literal: " + s);
    }
    if (i < s.size()) {
        const std::string tail = s.substr(i + 1);
        std::size_t used = 0;
        long e = 0;
        try {
            e = std::stol(tail, &used);
        } catch (const std::exception &) {
            throw std::invalid_argument("bad exponent in literal: " + s);
        }
        if (used != tail.size()) {
            throw std::invalid_argument("bad exponent in literal: " + s);
        }
        exponent += e;
    }
    Integer mantissa(digits, 10);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    Rational r = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

inline int sign(const Rational &r)
{
    return sgn(r);
}

// Exact square root of a non-negative rational if it is a perfect square.
inline bool exact_sqrt(const Rational &r, Rational &root)
{
    if (sgn(r) < 0) {
        return false;
    }
    Rational c = r;
    c.canonicalize();
    if (mpz_perfect_square_p(c.get_num_mpz_t()) == 0 || mpz_perfect_square_p(c.get_den_mpz_t()) == 0) {
        return false;
    }
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), c.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), c.get_den_mpz_t());
    root = Rational(n, d);
    root.canonicalize();
    return true;
}

} // namespace flagcert

#endif
