#pragma once

// Defining data of the four hypergeometric families and the generic formulas
// that derive eigenvalues, tau_n, weights and norms from sigma and tau.

#include "ladderpoly/polynomial.hpp"
#include "ladderpoly/rational.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ladderpoly {

enum class Family { hermite, laguerre, kravchuk, meixner };
enum class Variable { continuous, discrete };

class invalid_parameter : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Parameters for which a formula divides by zero (alpha_n = 0, gamma_n = 0, ...).
class degenerate_parameter : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

class outside_support : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

inline std::string to_string(Family f)
{
    switch (f) {
    case Family::hermite: return "hermite";
    case Family::laguerre: return "laguerre";
    case Family::kravchuk: return "kravchuk";
    case Family::meixner: return "meixner";
    }
    return "unknown";
}

inline std::string to_string(Variable v) { return v == Variable::continuous ? "continuous" : "discrete"; }

inline Family family_from_string(std::string_view name)
{
    if (name == "hermite")
        return Family::hermite;
    if (name == "laguerre")
        return Family::laguerre;
    if (name == "kravchuk")
        return Family::kravchuk;
    if (name == "meixner")
        return Family::meixner;
    throw invalid_parameter("unknown family: " + std::string(name));
}

/// Family parameters. Only the fields relevant to the family are meaningful:
/// Laguerre alpha; Kravchuk p, q = 1 - p, N; Meixner gamma, mu.
template <Scalar T>
struct Parameters
{
    T alpha{0};
    T p{0};
    T q{0};
    T gamma{0};
    T mu{0};
    int N = 0;
};

/// Coefficients of x P_n = alpha_n P_{n+1} + beta_n P_n + gamma_n P_{n-1}.
template <Scalar T>
struct RecurrenceTerms
{
    T alpha;
    T beta;
    T gamma;
};

/// Continuous interval (lower, upper) or integer range {lower, ..., upper}; upper may be +inf.
struct Support
{
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
    bool integer = false;

    bool finite() const { return std::isfinite(upper); }
};

template <Scalar T>
struct FamilySpec
{
    Family family = Family::hermite;
    Variable variable = Variable::continuous;
    Parameters<T> params;
    Polynomial<T> sigma; ///< degree <= 2
    Polynomial<T> tau;   ///< degree <= 1
    Support support;
    /// P_0 (the B_0 convention); 1 for all four families.
    T p0{1};
    std::function<RecurrenceTerms<T>(int)> recurrence;

    bool discrete() const { return variable == Variable::discrete; }
};

// --- generic section: quantities derived from sigma and tau ------------------

/// sigma'' (constant).
template <Scalar T>
T sigma_second_derivative(const FamilySpec<T>& spec)
{
    return T(2) * spec.sigma[2];
}

/// tau' (constant).
template <Scalar T>
T tau_slope(const FamilySpec<T>& spec)
{
    return spec.tau[1];
}

/// lambda_n = -n (tau' + (n-1)/2 sigma'').
template <Scalar T>
T lambda_n(const FamilySpec<T>& spec, int n)
{
    T k(n);
    T km1(n - 1);
    return -k * (tau_slope(spec) + km1 * spec.sigma[2]);
}

/// lambda_k / k written as the polynomial -(tau' + (k-1)/2 sigma''), finite at k = 0.
template <Scalar T>
T lambda_over_index(const FamilySpec<T>& spec, int k)
{
    T km1(k - 1);
    return -(tau_slope(spec) + km1 * spec.sigma[2]);
}

/// tau_n as a polynomial: tau + n sigma' (continuous) or tau(x+n) + sigma(x+n) - sigma(x) (discrete).
template <Scalar T>
Polynomial<T> tau_n_polynomial(const FamilySpec<T>& spec, int n)
{
    T k(n);
    if (!spec.discrete())
        return spec.tau + spec.sigma.derivative() * k;
    return spec.tau.shifted(k) + spec.sigma.shifted(k) - spec.sigma;
}

template <Scalar T>
T tau_n(const FamilySpec<T>& spec, int n, const T& point)
{
    return tau_n_polynomial(spec, n)(point);
}

template <Scalar T>
RecurrenceTerms<T> recurrence(const FamilySpec<T>& spec, int n)
{
    return spec.recurrence(n);
}

// --- support ----------------------------------------------------------------

template <Scalar T>
bool in_support(const FamilySpec<T>& spec, double point)
{
    const Support& s = spec.support;
    if (s.integer) {
        if (point != std::floor(point))
            return false;
        return point >= s.lower && point <= s.upper;
    }
    if (std::isinf(s.lower))
        return point < s.upper;
    return point > s.lower && point < s.upper;
}

template <Scalar T>
void require_in_support(const FamilySpec<T>& spec, double point)
{
    if (!in_support(spec, point))
        throw outside_support(to_string(spec.family) + ": point " + std::to_string(point) + " outside support");
}

// --- weights ------------------------------------------------------------------

namespace detail {

inline double log_binomial(int n, int k)
{
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

template <Scalar T>
T binomial(int n, int k)
{
    if (k < 0 || k > n)
        return T(0);
    if constexpr (is_exact_v<T>) {
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        return Rational(b);
    } else {
        if (n > 1000)
            return std::exp(log_binomial(n, k));
        double r = 1.0;
        int kk = std::min(k, n - k);
        for (int i = 1; i <= kk; ++i)
            r = r * (n - kk + i) / i;
        return r;
    }
}

/// Rising factorial (a)_n.
template <Scalar T>
T pochhammer(const T& a, int n)
{
    T r(1);
    for (int i = 0; i < n; ++i)
        r *= a + T(i);
    return r;
}

template <Scalar T>
T factorial(int n)
{
    T r(1);
    for (int i = 2; i <= n; ++i)
        r *= T(i);
    return r;
}

} // namespace detail

/// Weight rho at a support point. Discrete weights are exact in Rational mode;
/// continuous weights are transcendental and only available for double.
///
///   Hermite  e^{-s^2}
///   Laguerre s^alpha e^{-s}
///   Kravchuk C(N,x) p^x q^(N-x)            (total mass 1)
///   Meixner  mu^x Gamma(gamma+x) / (x! Gamma(gamma))  (total mass (1-mu)^-gamma)
template <Scalar T>
T weight(const FamilySpec<T>& spec, const T& point)
{
    const double xd = to_double(point);
    require_in_support(spec, xd);
    const auto& pr = spec.params;
    switch (spec.family) {
    case Family::hermite:
    case Family::laguerre:
        if constexpr (is_exact_v<T>) {
            throw std::domain_error("continuous weights are transcendental; use the double path");
        } else {
            if (spec.family == Family::hermite)
                return std::exp(-point * point);
            return std::pow(point, pr.alpha) * std::exp(-point);
        }
    case Family::kravchuk: {
        const int x = static_cast<int>(xd);
        if constexpr (is_exact_v<T>) {
            return detail::binomial<T>(pr.N, x) * ipow(pr.p, x) * ipow(pr.q, pr.N - x);
        } else {
            if (pr.N <= 200)
                return detail::binomial<T>(pr.N, x) * std::pow(pr.p, x) * std::pow(pr.q, pr.N - x);
            return std::exp(detail::log_binomial(pr.N, x) + x * std::log(pr.p) + (pr.N - x) * std::log(pr.q));
        }
    }
    case Family::meixner: {
        const int x = static_cast<int>(xd);
        if constexpr (is_exact_v<T>) {
            return detail::pochhammer(pr.gamma, x) * ipow(pr.mu, x) / detail::factorial<T>(x);
        } else {
            if (x <= 200) {
                double r = 1.0;
                for (int k = 0; k < x; ++k)
                    r *= (pr.gamma + k) * pr.mu / (k + 1);
                return r;
            }
            return std::exp(x * std::log(pr.mu) + std::lgamma(pr.gamma + x) - std::lgamma(x + 1.0) -
                            std::lgamma(pr.gamma));
        }
    }
    }
    throw std::logic_error("unreachable");
}

/// sigma * rho'/rho as a polynomial (continuous families). The Pearson relation
/// (sigma rho)' = tau rho is then the polynomial identity sigma' + flux = tau.
template <Scalar T>
Polynomial<T> pearson_flux(const FamilySpec<T>& spec)
{
    switch (spec.family) {
    case Family::hermite: return Polynomial<T>{T(0), T(-2)};          // rho'/rho = -2s, sigma = 1
    case Family::laguerre: return Polynomial<T>{spec.params.alpha, T(-1)}; // s (alpha/s - 1)
    default: throw std::domain_error("pearson_flux is defined for continuous families");
    }
}

/// Half logarithmic derivative r = (sqrt rho)'/sqrt rho and its derivative r', continuous families.
struct HalfLogDerivative
{
    double r;
    double dr;
};

inline HalfLogDerivative half_log_derivative(const FamilySpec<double>& spec, double s)
{
    switch (spec.family) {
    case Family::hermite: return {-s, -1.0};
    case Family::laguerre: {
        const double a = spec.params.alpha;
        return {a / (2.0 * s) - 0.5, -a / (2.0 * s * s)};
    }
    default: throw std::domain_error("half_log_derivative is defined for continuous families");
    }
}

/// Pearson residual at a point: Delta(sigma rho) - tau rho (discrete) or (sigma rho)' - tau rho (continuous).
template <Scalar T>
T pearson_residual(const FamilySpec<T>& spec, const T& point)
{
    if (spec.discrete()) {
        const T rho = weight(spec, point);
        const T next = point + T(1);
        const T rho_next = in_support(spec, to_double(next)) ? weight(spec, next) : T(0);
        return spec.sigma(next) * rho_next - spec.sigma(point) * rho - spec.tau(point) * rho;
    }
    if constexpr (is_exact_v<T>) {
        // rho cancels from both sides; the identity is polynomial.
        return (spec.sigma.derivative() + pearson_flux(spec) - spec.tau)(point);
    } else {
        const double rho = weight(spec, point);
        const double drho = 2.0 * half_log_derivative(spec, point).r * rho;
        return spec.sigma.derivative()(point) * rho + spec.sigma(point) * drho - spec.tau(point) * rho;
    }
}

// --- norms --------------------------------------------------------------------

/// d_n^2 / d_0^2, rational for every family with rational parameters.
template <Scalar T>
T relative_squared_norm(const FamilySpec<T>& spec, int n)
{
    const auto& pr = spec.params;
    switch (spec.family) {
    case Family::hermite: return ipow(T(2), n) * detail::factorial<T>(n);
    case Family::laguerre: return detail::pochhammer(T(pr.alpha + T(1)), n) / detail::factorial<T>(n);
    case Family::kravchuk:
        if (n < 0 || n > pr.N)
            throw outside_support("kravchuk index out of range");
        return detail::binomial<T>(pr.N, n) * ipow(T(pr.p * pr.q), n);
    case Family::meixner:
        return detail::factorial<T>(n) * detail::pochhammer(pr.gamma, n) / ipow(pr.mu, n);
    }
    throw std::logic_error("unreachable");
}

/// d_0^2 = total weight mass.
template <Scalar T>
double total_mass(const FamilySpec<T>& spec)
{
    const auto& pr = spec.params;
    switch (spec.family) {
    case Family::hermite: return std::sqrt(std::numbers::pi);
    case Family::laguerre: return std::tgamma(to_double(pr.alpha) + 1.0);
    case Family::kravchuk: return 1.0;
    case Family::meixner: return std::pow(1.0 - to_double(pr.mu), -to_double(pr.gamma));
    }
    throw std::logic_error("unreachable");
}

/// Exact total mass when it is rational (Kravchuk always; Meixner with integer gamma).
inline std::optional<Rational> exact_total_mass(const FamilySpec<Rational>& spec)
{
    const auto& pr = spec.params;
    if (spec.family == Family::kravchuk)
        return Rational(1);
    if (spec.family == Family::meixner && pr.gamma.get_den() == 1 && pr.gamma.get_num().fits_slong_p())
        return ipow(Rational(Rational(1) / (Rational(1) - pr.mu)), pr.gamma.get_num().get_si());
    return std::nullopt;
}

/// d_n^2 in double precision.
template <Scalar T>
double squared_norm(const FamilySpec<T>& spec, int n)
{
    const auto& pr = spec.params;
    if (spec.family == Family::laguerre) {
        const double a = to_double(pr.alpha);
        return std::exp(std::lgamma(n + a + 1.0) - std::lgamma(n + 1.0));
    }
    if (spec.family == Family::kravchuk && pr.N > 1000) {
        if (n < 0 || n > pr.N)
            throw outside_support("kravchuk index out of range");
        return std::exp(detail::log_binomial(pr.N, n) + n * std::log(to_double(pr.p) * to_double(pr.q)));
    }
    return total_mass(spec) * to_double(relative_squared_norm(spec, n));
}

/// Exact d_n^2 when the total mass is rational.
inline std::optional<Rational> exact_squared_norm(const FamilySpec<Rational>& spec, int n)
{
    auto mass = exact_total_mass(spec);
    if (!mass)
        return std::nullopt;
    return *mass * relative_squared_norm(spec, n);
}

// --- construction -------------------------------------------------------------

/// A difference equation A(x) P(x+1) + B(x) P(x-1) + C_n(x) P(x) = 0 written out for a family.
template <Scalar T>
struct DifferenceEquation
{
    Polynomial<T> forward;
    Polynomial<T> backward;
    std::function<Polynomial<T>(int)> center;
};

/// Recovers sigma and tau from a written-out difference equation by matching it against
/// sigma Delta nabla P + tau Delta P + lambda_n P = 0, whose coefficients are
/// forward = sigma + tau, backward = sigma, center = -2 sigma - tau + lambda_n.
/// Only the forward and n = 0 center coefficients are used (lambda_0 = 0).
template <Scalar T>
std::pair<Polynomial<T>, Polynomial<T>> match_difference_equation(const DifferenceEquation<T>& eq)
{
    Polynomial<T> sigma = -(eq.forward + eq.center(0));
    Polynomial<T> tau = eq.forward - sigma;
    return {sigma, tau};
}

/// The Meixner difference equation written with backward coefficient (x - 1).
template <Scalar T>
DifferenceEquation<T> meixner_shifted_backward_equation(const T& gamma, const T& mu)
{
    DifferenceEquation<T> eq;
    eq.forward = Polynomial<T>{mu * gamma, mu};
    eq.backward = Polynomial<T>{T(-1), T(1)};
    eq.center = [gamma, mu](int n) {
        T k(n);
        return Polynomial<T>{-mu * (k + gamma) + k, -mu - T(1)};
    };
    return eq;
}

template <Scalar T>
FamilySpec<T> make_hermite()
{
    FamilySpec<T> s;
    s.family = Family::hermite;
    s.variable = Variable::continuous;
    s.sigma = Polynomial<T>{T(1)};
    s.tau = Polynomial<T>{T(0), T(-2)};
    s.support = {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), false};
    s.recurrence = [](int n) { return RecurrenceTerms<T>{scalar_from<T>(1, 2), T(0), T(n)}; };
    return s;
}

template <Scalar T>
FamilySpec<T> make_laguerre(const T& alpha)
{
    if (!(alpha > T(-1)))
        throw invalid_parameter("laguerre: alpha must exceed -1");
    FamilySpec<T> s;
    s.family = Family::laguerre;
    s.variable = Variable::continuous;
    s.params.alpha = alpha;
    s.sigma = Polynomial<T>{T(0), T(1)};
    s.tau = Polynomial<T>{T(1) + alpha, T(-1)};
    s.support = {0.0, std::numeric_limits<double>::infinity(), false};
    s.recurrence = [alpha](int n) {
        T k(n);
        return RecurrenceTerms<T>{-(k + T(1)), T(2) * k + alpha + T(1), -(k + alpha)};
    };
    return s;
}

template <Scalar T>
FamilySpec<T> make_kravchuk(const T& p, int N)
{
    if (!(p > T(0) && p < T(1)))
        throw invalid_parameter("kravchuk: p must lie in (0,1)");
    if (N < 1)
        throw invalid_parameter("kravchuk: N must be >= 1");
    FamilySpec<T> s;
    s.family = Family::kravchuk;
    s.variable = Variable::discrete;
    const T q = T(1) - p;
    s.params.p = p;
    s.params.q = q;
    s.params.N = N;
    s.sigma = Polynomial<T>{T(0), T(1)};
    // tau(x) = (Np - x)/q
    s.tau = Polynomial<T>{T(N) * p / q, T(-1) / q};
    s.support = {0.0, static_cast<double>(N), true};
    s.recurrence = [p, q, N](int n) {
        T k(n);
        return RecurrenceTerms<T>{k + T(1), k + p * (T(N) - T(2) * k), p * q * (T(N) - k + T(1))};
    };
    return s;
}

template <Scalar T>
FamilySpec<T> make_meixner(const T& gamma, const T& mu)
{
    if (!(gamma > T(0)))
        throw invalid_parameter("meixner: gamma must be positive");
    if (!(mu > T(0) && mu < T(1)))
        throw invalid_parameter("meixner: mu must lie in (0,1)");
    FamilySpec<T> s;
    s.family = Family::meixner;
    s.variable = Variable::discrete;
    s.params.gamma = gamma;
    s.params.mu = mu;
    auto [sigma, tau] = match_difference_equation(meixner_shifted_backward_equation(gamma, mu));
    s.sigma = sigma;
    s.tau = tau;
    s.support = {0.0, std::numeric_limits<double>::infinity(), true};
    s.recurrence = [gamma, mu](int n) {
        T k(n);
        return RecurrenceTerms<T>{mu / (mu - T(1)), (k + mu * (k + gamma)) / (T(1) - mu),
                                  k * (k + gamma - T(1)) / (mu - T(1))};
    };
    return s;
}

template <Scalar T>
FamilySpec<T> make_family(Family family, const Parameters<T>& params)
{
    switch (family) {
    case Family::hermite: return make_hermite<T>();
    case Family::laguerre: return make_laguerre<T>(params.alpha);
    case Family::kravchuk: return make_kravchuk<T>(params.p, params.N);
    case Family::meixner: return make_meixner<T>(params.gamma, params.mu);
    }
    throw invalid_parameter("unknown family");
}

/// Same family with parameters converted to another scalar type.
template <Scalar U, Scalar T>
FamilySpec<U> convert_family(const FamilySpec<T>& spec)
{
    auto conv = [](const T& v) -> U {
        if constexpr (std::is_same_v<T, U>)
            return v;
        else if constexpr (is_exact_v<U>)
            return exact_rational(v);
        else
            return to_double(v);
    };
    Parameters<U> p;
    p.alpha = conv(spec.params.alpha);
    p.p = conv(spec.params.p);
    p.q = conv(spec.params.q);
    p.gamma = conv(spec.params.gamma);
    p.mu = conv(spec.params.mu);
    p.N = spec.params.N;
    return make_family<U>(spec.family, p);
}

} // namespace ladderpoly
