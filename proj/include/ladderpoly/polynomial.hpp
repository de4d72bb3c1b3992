#pragma once

#include "ladderpoly/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

namespace ladderpoly {

/// Dense monomial-coefficient polynomial, c[0] + c[1] x + ... + c[d] x^d.
///
/// Canonical form has no trailing zero coefficients; the zero polynomial has
/// an empty coefficient vector and degree -1. Differentiation and argument
/// shifts are exact coefficient transforms, so in Rational mode every
/// identity checked on a Polynomial is an exact algebraic identity.
template <Scalar T>
class Polynomial
{
public:
    Polynomial() = default;

    explicit Polynomial(std::vector<T> coeffs)
        : coeffs_(std::move(coeffs))
    {
        trim();
    }

    Polynomial(std::initializer_list<T> coeffs)
        : coeffs_(coeffs)
    {
        trim();
    }

    static Polynomial constant(const T& c) { return Polynomial(std::vector<T>{c}); }

    /// The identity polynomial x.
    static Polynomial identity() { return Polynomial(std::vector<T>{T(0), T(1)}); }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<T>& coeffs() const { return coeffs_; }

    T operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : T(0); }

    T leading() const { return coeffs_.empty() ? T(0) : coeffs_.back(); }

    /// Horner evaluation.
    T operator()(const T& x) const
    {
        T acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc *= x;
            acc += *it;
        }
        return acc;
    }

    Polynomial derivative() const
    {
        if (coeffs_.size() <= 1)
            return {};
        std::vector<T> d(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            d[i - 1] = coeffs_[i] * T(static_cast<long>(i));
        return Polynomial(std::move(d));
    }

    /// p(x + k), by repeated synthetic division (Taylor shift).
    Polynomial shifted(const T& k) const
    {
        std::vector<T> c = coeffs_;
        const std::size_t n = c.size();
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = n - 1; j > i; --j)
                c[j - 1] += k * c[j];
        return Polynomial(std::move(c));
    }

    template <Scalar U>
    Polynomial<U> cast() const
    {
        std::vector<U> out;
        out.reserve(coeffs_.size());
        for (const T& c : coeffs_) {
            if constexpr (std::is_same_v<T, U>)
                out.push_back(c);
            else if constexpr (is_exact_v<U>)
                out.push_back(exact_rational(c));
            else
                out.push_back(to_double(c));
        }
        return Polynomial<U>(std::move(out));
    }

    Polynomial& operator+=(const Polynomial& o)
    {
        if (o.coeffs_.size() > coeffs_.size())
            coeffs_.resize(o.coeffs_.size(), T(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
            coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o)
    {
        if (o.coeffs_.size() > coeffs_.size())
            coeffs_.resize(o.coeffs_.size(), T(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
            coeffs_[i] -= o.coeffs_[i];
        trim();
        return *this;
    }

    Polynomial& operator*=(const T& s)
    {
        for (T& c : coeffs_)
            c *= s;
        trim();
        return *this;
    }

    Polynomial& operator/=(const T& s)
    {
        for (T& c : coeffs_)
            c /= s;
        trim();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
    friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
    friend Polynomial operator/(Polynomial a, const T& s) { return a /= s; }
    friend Polynomial operator-(Polynomial a)
    {
        for (T& c : a.coeffs_)
            c = -c;
        return a;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<T> out(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Polynomial(std::move(out));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

private:
    void trim()
    {
        while (!coeffs_.empty() && ladderpoly::is_zero(coeffs_.back()))
            coeffs_.pop_back();
        if constexpr (is_exact_v<T>)
            for (T& c : coeffs_)
                c.canonicalize();
    }

    std::vector<T> coeffs_;
};

/// Largest |coefficient|; used as a scale for float comparisons.
template <Scalar T>
T max_abs_coefficient(const Polynomial<T>& p)
{
    T m(0);
    for (const T& c : p.coeffs())
        m = std::max<T>(m, abs_value(c));
    return m;
}

/// Horner evaluation of a Rational polynomial at a double point (coefficients rounded first).
inline double evaluate_as_double(const Polynomial<Rational>& p, double x)
{
    double acc = 0.0;
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * x + to_double(*it);
    return acc;
}

} // namespace ladderpoly
