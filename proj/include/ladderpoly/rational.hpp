#pragma once

// Scalar plumbing shared by the exact (mpq_class) and floating (double) paths.

#include <gmpxx.h>

#include <cmath>
#include <charconv>
#include <concepts>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace ladderpoly {

using Rational = mpq_class;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Rational>;

inline double to_double(const Rational& r) { return r.get_d(); }
inline double to_double(double d) { return d; }

template <Scalar T>
T scalar_from(long v)
{
    return T(v);
}

template <Scalar T>
T scalar_from(long num, long den)
{
    if constexpr (is_exact_v<T>) {
        Rational r(num, den);
        r.canonicalize();
        return r;
    } else {
        return static_cast<double>(num) / static_cast<double>(den);
    }
}

template <Scalar T>
T abs_value(const T& v)
{
    if constexpr (is_exact_v<T>)
        return abs(v);
    else
        return std::fabs(v);
}

template <Scalar T>
bool is_zero(const T& v)
{
    if constexpr (is_exact_v<T>)
        return sgn(v) == 0;
    else
        return v == 0.0;
}

/// Exact conversion of a binary double to a rational.
inline Rational exact_rational(double d)
{
    if (!std::isfinite(d))
        throw std::invalid_argument("cannot convert non-finite double to rational");
    Rational r(d);
    r.canonicalize();
    return r;
}

/// Integer power for either scalar type.
template <Scalar T>
T ipow(const T& base, long e)
{
    if (e < 0) {
        T inv = T(1) / base;
        return ipow(inv, -e);
    }
    T result(1);
    T b = base;
    while (e > 0) {
        if (e & 1)
            result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

/// "num/den" with den always printed, e.g. "2/1", "-3/4".
inline std::string to_fraction_string(const Rational& r)
{
    Rational c = r;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

/// "2", "1/3": the numerator alone when the denominator is one.
inline std::string to_display_string(const Rational& r)
{
    Rational c = r;
    c.canonicalize();
    return c.get_str();
}

/// Shortest text that reads back to the same double.
inline std::string format_double(double v)
{
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// True when the text is an integer or a "num/den" literal (the exact-path trigger on the CLI).
inline bool looks_rational(std::string_view text)
{
    if (text.empty())
        return false;
    std::size_t i = 0;
    bool seen_slash = false;
    bool seen_digit = false;
    if (text[0] == '-' || text[0] == '+')
        ++i;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c >= '0' && c <= '9') {
            seen_digit = true;
        } else if (c == '/' && !seen_slash && seen_digit && i + 1 < text.size()) {
            seen_slash = true;
            seen_digit = false;
        } else {
            return false;
        }
    }
    return seen_digit;
}

/// Parses "num/den", an integer, or a decimal literal (converted exactly from its double value).
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (looks_rational(s)) {
        if (!s.empty() && s[0] == '+')
            s.erase(0, 1);
        Rational r;
        if (r.set_str(s, 10) != 0)
            throw std::invalid_argument("malformed rational: " + s);
        if (r.get_den() == 0)
            throw std::invalid_argument("zero denominator: " + s);
        r.canonicalize();
        return r;
    }
    std::size_t used = 0;
    double d = 0.0;
    try {
        d = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed number: " + s);
    }
    if (used != s.size())
        throw std::invalid_argument("malformed number: " + s);
    return exact_rational(d);
}

inline double parse_double(std::string_view text)
{
    if (looks_rational(text))
        return to_double(parse_rational(text));
    std::string s(text);
    std::size_t used = 0;
    double d = 0.0;
    try {
        d = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed number: " + s);
    }
    if (used != s.size())
        throw std::invalid_argument("malformed number: " + s);
    return d;
}

} // namespace ladderpoly
