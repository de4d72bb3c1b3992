#pragma once

// Polynomial sequences built by recurrence, raising and lowering, plus the
// residuals and Gram matrices used to check them against each other.

#include "ladderpoly/family.hpp"
#include "ladderpoly/matrix.hpp"
#include "ladderpoly/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace ladderpoly {

template <Scalar T>
struct PolySeq
{
    FamilySpec<T> family;
    std::vector<Polynomial<T>> coeffs;

    int max_degree() const { return static_cast<int>(coeffs.size()) - 1; }
    const Polynomial<T>& operator[](int n) const { return coeffs.at(static_cast<std::size_t>(n)); }
};

// --- difference operators -----------------------------------------------------

/// Delta P(x) = P(x+1) - P(x).
template <Scalar T>
Polynomial<T> forward_difference(const Polynomial<T>& p)
{
    return p.shifted(T(1)) - p;
}

/// nabla P(x) = P(x) - P(x-1).
template <Scalar T>
Polynomial<T> backward_difference(const Polynomial<T>& p)
{
    return p - p.shifted(T(-1));
}

/// The first-order operator of the raising/lowering relations: d/ds or nabla.
template <Scalar T>
Polynomial<T> first_order(const FamilySpec<T>& spec, const Polynomial<T>& p)
{
    return spec.discrete() ? backward_difference(p) : p.derivative();
}

// --- recurrence route ---------------------------------------------------------

template <Scalar T>
PolySeq<T> build_by_recurrence(const FamilySpec<T>& spec, int n_max)
{
    if (n_max < 0)
        throw std::invalid_argument("build_by_recurrence: n_max must be >= 0");
    PolySeq<T> seq{spec, {}};
    seq.coeffs.reserve(static_cast<std::size_t>(n_max) + 1);
    seq.coeffs.push_back(Polynomial<T>::constant(spec.p0));
    const Polynomial<T> x = Polynomial<T>::identity();
    for (int n = 0; n < n_max; ++n) {
        const auto r = spec.recurrence(n);
        if (is_zero(r.alpha))
            throw degenerate_parameter("recurrence: alpha_" + std::to_string(n) + " = 0");
        Polynomial<T> next = (x - Polynomial<T>::constant(r.beta)) * seq.coeffs[static_cast<std::size_t>(n)];
        if (n > 0)
            next -= seq.coeffs[static_cast<std::size_t>(n - 1)] * r.gamma;
        seq.coeffs.push_back(next / r.alpha);
    }
    return seq;
}

/// P_0 .. P_{n_max} at one point via the three-term recurrence (no coefficient expansion).
template <Scalar T>
std::vector<T> evaluate_by_recurrence(const FamilySpec<T>& spec, int n_max, const T& x)
{
    std::vector<T> v;
    v.reserve(static_cast<std::size_t>(n_max) + 1);
    v.push_back(spec.p0);
    for (int n = 0; n < n_max; ++n) {
        const auto r = spec.recurrence(n);
        T next = (x - r.beta) * v[static_cast<std::size_t>(n)];
        if (n > 0)
            next -= r.gamma * v[static_cast<std::size_t>(n - 1)];
        v.push_back(next / r.alpha);
    }
    return v;
}

// --- raising and lowering -----------------------------------------------------

namespace detail {

/// (lambda_n/n) * (2n+1)/lambda_{2n+1}, the tau_n coefficient shared by raising and lowering.
template <Scalar T>
T tau_n_factor(const FamilySpec<T>& spec, int n)
{
    const T denom = lambda_over_index(spec, 2 * n + 1);
    if (is_zero(denom))
        throw degenerate_parameter("lambda_{2n+1} = 0 at n = " + std::to_string(n));
    return lambda_over_index(spec, n) / denom;
}

} // namespace detail

/// One raising step: solves
///   sigma D P_n = -(lambda_n/n)((2n+1)/lambda_{2n+1}) tau_n P_n - (lambda_{2n}/2n) alpha_n P_{n+1}
/// for P_{n+1}, with D = d/ds or nabla.
template <Scalar T>
Polynomial<T> raise(const FamilySpec<T>& spec, const Polynomial<T>& pn, int n)
{
    const T scale = lambda_over_index(spec, 2 * n) * spec.recurrence(n).alpha;
    if (is_zero(scale))
        throw degenerate_parameter("raising: lambda_{2n} alpha_n = 0 at n = " + std::to_string(n));
    Polynomial<T> rhs = spec.sigma * first_order(spec, pn) + detail::tau_n_factor(spec, n) * (tau_n_polynomial(spec, n) * pn);
    return -rhs / scale;
}

/// The multiplier b_n(x) in sigma D P_n = b_n P_n + (lambda_{2n}/2n) gamma_n P_{n-1}.
template <Scalar T>
Polynomial<T> lowering_bracket(const FamilySpec<T>& spec, int n)
{
    const auto r = spec.recurrence(n);
    const T l2n = lambda_over_index(spec, 2 * n);
    Polynomial<T> shift = Polynomial<T>::identity() - Polynomial<T>::constant(r.beta);
    return -(detail::tau_n_factor(spec, n) * tau_n_polynomial(spec, n)) - l2n * shift;
}

/// Multiplier of P_n in the forward-difference lowering relation
///   (sigma + tau) Delta P_n = [-(lambda_n/n)((2n+1)/lambda_{2n+1}) tau_n - lambda_n
///                              - (lambda_{2n}/2n)(x - beta_n)] P_n + (lambda_{2n}/2n) gamma_n P_{n-1}.
template <Scalar T>
Polynomial<T> forward_lowering_bracket(const FamilySpec<T>& spec, int n)
{
    return lowering_bracket(spec, n) - Polynomial<T>::constant(lambda_n(spec, n));
}

enum class LoweringForm { backward, forward };

/// Recovers P_{n-1} from P_n. Continuous families always use d/ds; discrete
/// families use the nabla form or the forward Delta form.
template <Scalar T>
Polynomial<T> lower(const FamilySpec<T>& spec, const Polynomial<T>& pn, int n,
                    LoweringForm form = LoweringForm::backward)
{
    if (n < 1)
        throw std::invalid_argument("lower: n must be >= 1");
    const T scale = lambda_over_index(spec, 2 * n) * spec.recurrence(n).gamma;
    if (is_zero(scale))
        throw degenerate_parameter("lowering: gamma_n = 0 at n = " + std::to_string(n));
    if (spec.discrete() && form == LoweringForm::forward) {
        Polynomial<T> lhs = (spec.sigma + spec.tau) * forward_difference(pn);
        return (lhs - forward_lowering_bracket(spec, n) * pn) / scale;
    }
    Polynomial<T> lhs = spec.sigma * first_order(spec, pn);
    return (lhs - lowering_bracket(spec, n) * pn) / scale;
}

template <Scalar T>
Polynomial<T> lower(const FamilySpec<T>& spec, const PolySeq<T>& seq, int n,
                    LoweringForm form = LoweringForm::backward)
{
    if (n < 1 || n > seq.max_degree())
        throw std::out_of_range("lower: index outside the sequence");
    return lower(spec, seq[n], n, form);
}

/// Ground state from the n = 0 lowering relation: with gamma_0 P_{-1} absent it reads
/// sigma D P_0 = b_0 P_0, whose polynomial solution is a constant exactly when b_0 vanishes.
template <Scalar T>
Polynomial<T> bootstrap_ground_state(const FamilySpec<T>& spec)
{
    const Polynomial<T> b0 = spec.discrete() ? forward_lowering_bracket(spec, 0) : lowering_bracket(spec, 0);
    if constexpr (is_exact_v<T>) {
        if (!b0.is_zero())
            throw degenerate_parameter("n = 0 lowering relation has no constant solution");
    } else {
        const double tol = 1e-12 * (1.0 + to_double(max_abs_coefficient(spec.tau)));
        if (to_double(max_abs_coefficient(b0)) > tol)
            throw degenerate_parameter("n = 0 lowering relation has no constant solution");
    }
    return Polynomial<T>::constant(spec.p0);
}

template <Scalar T>
PolySeq<T> build_by_raising(const FamilySpec<T>& spec, int n_max)
{
    if (n_max < 0)
        throw std::invalid_argument("build_by_raising: n_max must be >= 0");
    PolySeq<T> seq{spec, {}};
    seq.coeffs.reserve(static_cast<std::size_t>(n_max) + 1);
    seq.coeffs.push_back(bootstrap_ground_state(spec));
    for (int n = 0; n < n_max; ++n)
        seq.coeffs.push_back(raise(spec, seq.coeffs.back(), n));
    return seq;
}

// --- residuals ----------------------------------------------------------------

/// sigma P'' + tau P' + lambda_n P, or sigma Delta nabla P + tau Delta P + lambda_n P.
template <Scalar T>
Polynomial<T> equation_residual_polynomial(const FamilySpec<T>& spec, const Polynomial<T>& p, int n)
{
    const T lam = lambda_n(spec, n);
    if (spec.discrete()) {
        Polynomial<T> dn = forward_difference(backward_difference(p));
        return spec.sigma * dn + spec.tau * forward_difference(p) + p * lam;
    }
    const Polynomial<T> d1 = p.derivative();
    return spec.sigma * d1.derivative() + spec.tau * d1 + p * lam;
}

/// A residual value together with the sum of the magnitudes of its terms.
template <Scalar T>
struct Residual
{
    T value{0};
    T scale{0};

    double relative() const
    {
        const double s = to_double(scale);
        const double v = std::fabs(to_double(value));
        return s == 0.0 ? v : v / s;
    }
};

template <Scalar T>
Residual<T> equation_residual(const FamilySpec<T>& spec, const Polynomial<T>& p, int n, const T& point)
{
    const T lam = lambda_n(spec, n);
    T a, b;
    if (spec.discrete()) {
        a = spec.sigma(point) * forward_difference(backward_difference(p))(point);
        b = spec.tau(point) * forward_difference(p)(point);
    } else {
        const Polynomial<T> d1 = p.derivative();
        a = spec.sigma(point) * d1.derivative()(point);
        b = spec.tau(point) * d1(point);
    }
    const T c = lam * p(point);
    return {a + b + c, abs_value(a) + abs_value(b) + abs_value(c)};
}

template <Scalar T>
Residual<T> equation_residual(const FamilySpec<T>& spec, const PolySeq<T>& seq, int n, const T& point)
{
    return equation_residual(spec, seq[n], n, point);
}

/// Discrete equation on lattice values P_n(x-1), P_n(x), P_n(x+1) from the pointwise
/// recurrence; avoids the cancellation of expanded coefficients at large x.
template <Scalar T>
Residual<T> lattice_equation_residual(const FamilySpec<T>& spec, int n, const T& point)
{
    if (!spec.discrete())
        throw std::domain_error("lattice_equation_residual: discrete families only");
    const T lo = evaluate_by_recurrence(spec, n, point - T(1))[n];
    const T mid = evaluate_by_recurrence(spec, n, point)[n];
    const T hi = evaluate_by_recurrence(spec, n, point + T(1))[n];
    const T a = spec.sigma(point) * (hi - T(2) * mid + lo);
    const T b = spec.tau(point) * (hi - mid);
    const T c = lambda_n(spec, n) * mid;
    return {a + b + c, abs_value(a) + abs_value(b) + abs_value(c)};
}

/// x P_n - alpha_n P_{n+1} - beta_n P_n - gamma_n P_{n-1}; requires n + 1 <= max_degree.
template <Scalar T>
Polynomial<T> recurrence_residual_polynomial(const FamilySpec<T>& spec, const PolySeq<T>& seq, int n)
{
    const auto r = spec.recurrence(n);
    Polynomial<T> res = Polynomial<T>::identity() * seq[n] - seq[n + 1] * r.alpha - seq[n] * r.beta;
    if (n > 0)
        res -= seq[n - 1] * r.gamma;
    return res;
}

// --- Gram matrices ------------------------------------------------------------

/// Normalized factorial moments E[x(x-1)...(x-k+1)] under the discrete weight, k = 0..k_max.
///   Kravchuk: N(N-1)...(N-k+1) p^k      Meixner: (gamma)_k (mu/(1-mu))^k
template <Scalar T>
std::vector<T> factorial_moments(const FamilySpec<T>& spec, int k_max)
{
    const auto& pr = spec.params;
    std::vector<T> m(static_cast<std::size_t>(k_max) + 1);
    T acc(1);
    for (int k = 0; k <= k_max; ++k) {
        m[static_cast<std::size_t>(k)] = acc;
        switch (spec.family) {
        case Family::kravchuk: acc *= T(pr.N - k) * pr.p; break;
        case Family::meixner: acc *= (pr.gamma + T(k)) * pr.mu / (T(1) - pr.mu); break;
        default: throw std::domain_error("factorial_moments: discrete families only");
        }
    }
    return m;
}

/// Normalized power moments E[x^i], i = 0..i_max, from factorial moments via Stirling numbers of the second kind.
template <Scalar T>
std::vector<T> power_moments(const FamilySpec<T>& spec, int i_max)
{
    const auto fm = factorial_moments(spec, i_max);
    const auto n = static_cast<std::size_t>(i_max) + 1;
    std::vector<std::vector<T>> stirling(n, std::vector<T>(n, T(0)));
    stirling[0][0] = T(1);
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t k = 1; k <= i; ++k)
            stirling[i][k] = T(static_cast<long>(k)) * stirling[i - 1][k] + stirling[i - 1][k - 1];
    std::vector<T> out(n, T(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k <= i; ++k)
            out[i] += stirling[i][k] * fm[k];
    return out;
}

/// G_nm / d_0^2 computed from power moments (exact for Meixner's infinite support).
template <Scalar T>
DenseMatrix<T> relative_gram_by_moments(const FamilySpec<T>& spec, const PolySeq<T>& seq)
{
    const int n = seq.max_degree();
    const auto mom = power_moments(spec, 2 * std::max(n, 0));
    DenseMatrix<T> g(static_cast<std::size_t>(n + 1), static_cast<std::size_t>(n + 1));
    for (int a = 0; a <= n; ++a)
        for (int b = a; b <= n; ++b) {
            T acc(0);
            const auto& ca = seq[a].coeffs();
            const auto& cb = seq[b].coeffs();
            for (std::size_t i = 0; i < ca.size(); ++i)
                for (std::size_t j = 0; j < cb.size(); ++j)
                    acc += ca[i] * cb[j] * mom[i + j];
            g(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = acc;
            g(static_cast<std::size_t>(b), static_cast<std::size_t>(a)) = acc;
        }
    return g;
}

/// G_nm = sum over the finite support of rho P_n P_m.
template <Scalar T>
DenseMatrix<T> gram_by_summation(const FamilySpec<T>& spec, const PolySeq<T>& seq)
{
    if (!spec.support.integer || !spec.support.finite())
        throw std::domain_error("gram_by_summation: finite integer support required");
    const int n = seq.max_degree();
    DenseMatrix<T> g(static_cast<std::size_t>(n + 1), static_cast<std::size_t>(n + 1));
    const int lo = static_cast<int>(spec.support.lower);
    const int hi = static_cast<int>(spec.support.upper);
    for (int x = lo; x <= hi; ++x) {
        const T xt(x);
        const T rho = weight(spec, xt);
        std::vector<T> v(static_cast<std::size_t>(n + 1));
        for (int k = 0; k <= n; ++k)
            v[static_cast<std::size_t>(k)] = seq[k](xt);
        for (int a = 0; a <= n; ++a)
            for (int b = 0; b <= n; ++b)
                g(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) +=
                    rho * v[static_cast<std::size_t>(a)] * v[static_cast<std::size_t>(b)];
    }
    return g;
}

/// G / d_0^2 for a discrete family: direct sum on finite support, moments otherwise.
template <Scalar T>
DenseMatrix<T> relative_gram_matrix(const FamilySpec<T>& spec, const PolySeq<T>& seq)
{
    if (!spec.discrete())
        throw std::domain_error("relative_gram_matrix: continuous Gram matrices are float-only (quadrature)");
    if (spec.support.finite()) {
        DenseMatrix<T> g = gram_by_summation(spec, seq);
        if constexpr (is_exact_v<T>) {
            if (auto mass = exact_total_mass(spec))
                return (T(1) / *mass) * g;
        }
        return (T(1) / T(total_mass(spec))) * g;
    }
    return relative_gram_by_moments(spec, seq);
}

struct GramReport
{
    DenseMatrix<double> gram;
    std::string method;
    int points = 0;           ///< quadrature nodes or summed lattice points
    double tail_bound = 0.0;  ///< bound on the omitted tail (truncated infinite sums)
};

namespace detail {

/// Sums f(x) * rho(x) over the integer support. Infinite supports stop once a
/// geometric bound on the remaining weighted tail falls below tail_tol.
template <class F>
int sum_over_lattice(const FamilySpec<double>& spec, int n_max, F&& visit, double& tail_bound,
                     double tail_tol = 1e-30)
{
    const int lo = static_cast<int>(spec.support.lower);
    if (spec.support.finite()) {
        const int hi = static_cast<int>(spec.support.upper);
        for (int x = lo; x <= hi; ++x)
            visit(x, weight(spec, static_cast<double>(x)));
        tail_bound = 0.0;
        return hi - lo + 1;
    }
    if (spec.family != Family::meixner)
        throw std::domain_error("sum_over_lattice: unsupported infinite support");
    const double mu = spec.params.mu;
    const double g = spec.params.gamma;
    if (!(mu < 1.0))
        throw degenerate_parameter("meixner tail does not converge for mu >= 1");
    constexpr int hard_limit = 2000000;
    for (int x = lo; x < hard_limit; ++x) {
        const double rho = weight(spec, static_cast<double>(x));
        const auto vals = evaluate_by_recurrence(spec, n_max, static_cast<double>(x));
        double env = 0.0;
        for (double v : vals)
            env = std::max(env, v * v);
        visit(x, rho);
        // Ratio bound of consecutive envelope terms: weight ratio times polynomial growth.
        const double growth = std::pow((x + 2.0) / (x + 1.0), 2.0 * n_max);
        const double ratio = mu * (x + 1.0 + g) / (x + 2.0) * growth;
        const double t = rho * env;
        if (ratio < 1.0 && x > 0) {
            const double bound = t * ratio / (1.0 - ratio);
            if (bound < tail_tol) {
                tail_bound = bound;
                return x - lo + 1;
            }
        }
    }
    throw degenerate_parameter("meixner tail did not converge within the summation limit");
}

} // namespace detail

/// Float Gram matrix G_nm = <P_n, P_m>_rho. Continuous families use a Gauss rule
/// generated from the family recurrence (exact for degree <= 2 n_max + 3).
inline GramReport orthogonality_matrix(const FamilySpec<double>& spec, int n_max)
{
    GramReport rep;
    const auto dim = static_cast<std::size_t>(n_max + 1);
    rep.gram = DenseMatrix<double>(dim, dim);
    if (!spec.discrete()) {
        const int pts = n_max + 2;
        const QuadratureRule rule = gauss_rule(spec, pts);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const auto v = evaluate_by_recurrence(spec, n_max, rule.nodes[i]);
            for (std::size_t a = 0; a < dim; ++a)
                for (std::size_t b = 0; b < dim; ++b)
                    rep.gram(a, b) += rule.weights[i] * v[a] * v[b];
        }
        rep.method = "gauss-quadrature";
        rep.points = pts;
        return rep;
    }
    rep.points = detail::sum_over_lattice(
        spec, n_max,
        [&](int x, double rho) {
            const auto v = evaluate_by_recurrence(spec, n_max, static_cast<double>(x));
            for (std::size_t a = 0; a < dim; ++a)
                for (std::size_t b = 0; b < dim; ++b)
                    rep.gram(a, b) += rho * v[a] * v[b];
        },
        rep.tail_bound);
    rep.method = spec.support.finite() ? "summation" : "truncated-summation";
    return rep;
}

} // namespace ladderpoly
