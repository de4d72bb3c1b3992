#pragma once

// Orthonormal functions psi_n = sqrt(rho) P_n / d_n, Wigner d-functions through
// the Kravchuk map, and residuals of the relations they satisfy.

#include "ladderpoly/poly_engine.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace ladderpoly {

// --- plain normalized functions -----------------------------------------------

/// psi_n(point) for 0..n_max, with P_n evaluated by the three-term recurrence.
inline std::vector<double> psi_all(const FamilySpec<double>& spec, int n_max, double point)
{
    require_in_support(spec, point);
    const double root_rho = std::sqrt(weight(spec, point));
    auto v = evaluate_by_recurrence(spec, n_max, point);
    for (int n = 0; n <= n_max; ++n)
        v[static_cast<std::size_t>(n)] *= root_rho / std::sqrt(squared_norm(spec, n));
    return v;
}

inline double psi(const FamilySpec<double>& spec, int n, double point)
{
    if (n < 0)
        throw std::invalid_argument("psi: n must be >= 0");
    if (spec.family == Family::kravchuk && n > spec.params.N)
        throw outside_support("psi: kravchuk index above N");
    return psi_all(spec, n, point)[static_cast<std::size_t>(n)];
}

/// psi_n at a point, zero when the point lies off an integer support (for shifted lattice terms).
inline double psi_or_zero(const FamilySpec<double>& spec, int n, double point)
{
    if (n < 0 || !in_support(spec, point))
        return 0.0;
    if (spec.family == Family::kravchuk && n > spec.params.N)
        return 0.0;
    return psi(spec, n, point);
}

/// Values and first two derivatives.
struct Jet
{
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// P_n, P_n', P_n'' for n = 0..n_max by differentiating the three-term recurrence.
inline std::vector<Jet> polynomial_jets(const FamilySpec<double>& spec, int n_max, double x)
{
    std::vector<Jet> j(static_cast<std::size_t>(n_max) + 1);
    j[0] = {spec.p0, 0.0, 0.0};
    for (int n = 0; n < n_max; ++n) {
        const auto r = spec.recurrence(n);
        const Jet& cur = j[static_cast<std::size_t>(n)];
        Jet next{(x - r.beta) * cur.value, (x - r.beta) * cur.d1 + cur.value, (x - r.beta) * cur.d2 + 2.0 * cur.d1};
        if (n > 0) {
            const Jet& prev = j[static_cast<std::size_t>(n - 1)];
            next.value -= r.gamma * prev.value;
            next.d1 -= r.gamma * prev.d1;
            next.d2 -= r.gamma * prev.d2;
        }
        next.value /= r.alpha;
        next.d1 /= r.alpha;
        next.d2 /= r.alpha;
        j[static_cast<std::size_t>(n + 1)] = next;
    }
    return j;
}

/// psi_n and its derivatives by the product rule on sqrt(rho) * P_n (continuous families).
inline std::vector<Jet> psi_jets(const FamilySpec<double>& spec, int n_max, double s)
{
    if (spec.discrete())
        throw std::domain_error("psi_jets: continuous families only");
    require_in_support(spec, s);
    const auto pj = polynomial_jets(spec, n_max, s);
    const auto [r, dr] = half_log_derivative(spec, s);
    const double root_rho = std::sqrt(weight(spec, s));
    std::vector<Jet> out(pj.size());
    for (std::size_t n = 0; n < pj.size(); ++n) {
        const double c = root_rho / std::sqrt(squared_norm(spec, static_cast<int>(n)));
        const Jet& p = pj[n];
        out[n] = {c * p.value, c * (p.d1 + r * p.value), c * (p.d2 + 2.0 * r * p.d1 + (dr + r * r) * p.value)};
    }
    return out;
}

inline Jet psi_jet(const FamilySpec<double>& spec, int n, double s)
{
    return psi_jets(spec, n, s)[static_cast<std::size_t>(n)];
}

/// A sampled normalized function.
struct NormalizedState
{
    Family family = Family::hermite;
    int n = 0;
    std::vector<double> points;
    std::vector<double> values;
    bool norm_checked = false;
};

inline NormalizedState tabulate_state(const FamilySpec<double>& spec, int n, const std::vector<double>& points)
{
    NormalizedState st{spec.family, n, points, {}, false};
    st.values.reserve(points.size());
    for (double x : points)
        st.values.push_back(psi(spec, n, x));
    return st;
}

/// Matrix of <psi_a, psi_b>, a, b <= n_max. Discrete families sum over the
/// support (Meixner tail-truncated); continuous ones use the family Gauss rule.
inline DenseMatrix<double> orthonormality_matrix(const FamilySpec<double>& spec, int n_max)
{
    const auto dim = static_cast<std::size_t>(n_max + 1);
    if (!spec.discrete()) {
        GramReport rep = orthogonality_matrix(spec, n_max);
        for (std::size_t a = 0; a < dim; ++a)
            for (std::size_t b = 0; b < dim; ++b)
                rep.gram(a, b) /= std::sqrt(squared_norm(spec, static_cast<int>(a)) *
                                            squared_norm(spec, static_cast<int>(b)));
        return rep.gram;
    }
    DenseMatrix<double> g(dim, dim);
    double tail = 0.0;
    detail::sum_over_lattice(
        spec, n_max,
        [&](int x, double) {
            const auto v = psi_all(spec, n_max, static_cast<double>(x));
            for (std::size_t a = 0; a < dim; ++a)
                for (std::size_t b = 0; b < dim; ++b)
                    g(a, b) += v[a] * v[b];
        },
        tail);
    return g;
}

// --- continuous relations -----------------------------------------------------

enum class FunctionRelation { equation, recurrence, raising, lowering };

inline FunctionRelation function_relation_from_string(const std::string& s)
{
    if (s == "equation")
        return FunctionRelation::equation;
    if (s == "recurrence")
        return FunctionRelation::recurrence;
    if (s == "raising")
        return FunctionRelation::raising;
    if (s == "lowering")
        return FunctionRelation::lowering;
    throw std::invalid_argument("unknown relation: " + s);
}

namespace detail {

inline Residual<double> sum_terms(std::initializer_list<double> terms)
{
    Residual<double> r;
    for (double t : terms) {
        r.value += t;
        r.scale += std::fabs(t);
    }
    return r;
}

} // namespace detail

/// Self-adjoint form sigma psi'' + sigma' psi' - [sigma' r + sigma (r' + r^2)] psi + lambda_n psi,
/// r = (sqrt rho)'/sqrt rho.
inline Residual<double> self_adjoint_residual(const FamilySpec<double>& spec, int n, double s)
{
    const Jet j = psi_jet(spec, n, s);
    const auto [r, dr] = half_log_derivative(spec, s);
    const double sg = spec.sigma(s);
    const double dsg = spec.sigma.derivative()(s);
    return detail::sum_terms({sg * j.d2, dsg * j.d1, -(dsg * r + sg * (dr + r * r)) * j.value,
                              lambda_n(spec, n) * j.value});
}

/// Residual of one normalized relation for Hermite or Laguerre:
///   Hermite  equation   psi'' + (2n+1-s^2) psi
///            recurrence 2s psi_n - sqrt(2(n+1)) psi_{n+1} - sqrt(2n) psi_{n-1}
///            raising    sqrt(n+1) psi_{n+1} - (s psi_n - psi_n')/sqrt 2
///            lowering   sqrt(n) psi_{n-1} - (s psi_n + psi_n')/sqrt 2
///   Laguerre equation   self-adjoint form
///            recurrence sqrt((n+1)(n+a+1)) psi_{n+1} + sqrt(n(n+a)) psi_{n-1} - (2n+a+1-s) psi_n
///            raising    sqrt((n+1)(n+a+1)) psi_{n+1} - (2n+a+2-s)/2 psi_n - s psi_n'
///            lowering   sqrt(n(n+a)) psi_{n-1} - (2n+a-s)/2 psi_n + s psi_n'
inline Residual<double> function_residual(const FamilySpec<double>& spec, FunctionRelation rel, int n, double s)
{
    if (n < 0)
        throw std::invalid_argument("function_residual: n must be >= 0");
    if (spec.family == Family::laguerre && s <= 0.0)
        throw outside_support("function_residual: laguerre relations need s > 0");
    const auto jets = psi_jets(spec, n + 1, s);
    const Jet& c = jets[static_cast<std::size_t>(n)];
    const double up = jets[static_cast<std::size_t>(n + 1)].value;
    const double down = n > 0 ? jets[static_cast<std::size_t>(n - 1)].value : 0.0;
    const double nn = n;
    if (spec.family == Family::hermite) {
        switch (rel) {
        case FunctionRelation::equation: return detail::sum_terms({c.d2, (2.0 * nn + 1.0) * c.value, -s * s * c.value});
        case FunctionRelation::recurrence:
            return detail::sum_terms({2.0 * s * c.value, -std::sqrt(2.0 * (nn + 1.0)) * up, -std::sqrt(2.0 * nn) * down});
        case FunctionRelation::raising:
            return detail::sum_terms({std::sqrt(nn + 1.0) * up, -s * c.value / std::numbers::sqrt2,
                                      c.d1 / std::numbers::sqrt2});
        case FunctionRelation::lowering:
            return detail::sum_terms({std::sqrt(nn) * down, -s * c.value / std::numbers::sqrt2,
                                      -c.d1 / std::numbers::sqrt2});
        }
    }
    if (spec.family == Family::laguerre) {
        const double a = spec.params.alpha;
        const double kup = std::sqrt((nn + 1.0) * (nn + a + 1.0));
        const double kdown = std::sqrt(nn * (nn + a));
        switch (rel) {
        case FunctionRelation::equation: return self_adjoint_residual(spec, n, s);
        case FunctionRelation::recurrence: return detail::sum_terms({kup * up, kdown * down, -(2.0 * nn + a + 1.0 - s) * c.value});
        case FunctionRelation::raising: return detail::sum_terms({kup * up, -0.5 * (2.0 * nn + a + 2.0 - s) * c.value, -s * c.d1});
        case FunctionRelation::lowering: return detail::sum_terms({kdown * down, -0.5 * (2.0 * nn + a - s) * c.value, s * c.d1});
        }
    }
    throw std::domain_error("function_residual: hermite and laguerre only");
}

/// The Laguerre self-adjoint equation with the alternate bracket,
/// s^2 psi'' + s psi' + (1/2)[-s^2 - a^2 + a s + s] psi + s n psi. Kept as a diagnostic; it does not vanish.
inline Residual<double> laguerre_alternate_bracket_residual(const FamilySpec<double>& spec, int n, double s)
{
    if (spec.family != Family::laguerre)
        throw std::domain_error("laguerre only");
    const Jet j = psi_jet(spec, n, s);
    const double a = spec.params.alpha;
    return detail::sum_terms({s * s * j.d2, s * j.d1, 0.5 * (-s * s - a * a + a * s + s) * j.value, s * n * j.value});
}

// --- hydrogen radial equation -------------------------------------------------

/// psi = w L^{2l+1}_{n-l-1} with w = s^{l+1} e^{-s/2} (w^2 = sigma rho for alpha = 2l+1).
inline Jet hydrogen_jet(int n, int l, double s)
{
    if (l < 0 || n <= l)
        throw std::invalid_argument("hydrogen: need n > l >= 0");
    if (!(s > 0.0))
        throw outside_support("hydrogen: s must be positive");
    const auto lag = make_laguerre<double>(2.0 * l + 1.0);
    const int k = n - l - 1;
    const Jet p = polynomial_jets(lag, k, s)[static_cast<std::size_t>(k)];
    const double w = std::pow(s, l + 1.0) * std::exp(-0.5 * s);
    const double r = (l + 1.0) / s - 0.5;
    const double dr = -(l + 1.0) / (s * s);
    return {w * p.value, w * (p.d1 + r * p.value), w * (p.d2 + 2.0 * r * p.d1 + (dr + r * r) * p.value)};
}

/// psi'' - (w''/w) psi + (n-l-1) psi / s.
inline Residual<double> hydrogen_residual(int n, int l, double s)
{
    const Jet j = hydrogen_jet(n, l, s);
    const double r = (l + 1.0) / s - 0.5;
    const double w2 = -(l + 1.0) / (s * s) + r * r;
    return detail::sum_terms({j.d2, -w2 * j.value, (n - l - 1.0) * j.value / s});
}

/// integral_0^upper psi_a psi_b / s ds by composite Gauss-Legendre.
inline double hydrogen_overlap(int n_a, int n_b, int l, double upper = 150.0, int panels = 300)
{
    return composite_gauss_legendre(
        [&](double s) { return hydrogen_jet(n_a, l, s).value * hydrogen_jet(n_b, l, s).value / s; }, 0.0, upper,
        panels);
}

// --- Wigner d-functions -------------------------------------------------------

/// Spin labels stored doubled so half-integers are exact: j = two_j/2 and so on.
struct WignerIndex
{
    int two_j = 0;
    int two_m = 0;
    int two_mp = 0;
    double beta = 0.0;

    int N() const { return two_j; }
    int n() const { return (two_j - two_m) / 2; }
    int x() const { return (two_j - two_mp) / 2; }
    bool valid() const
    {
        return two_j >= 0 && std::abs(two_m) <= two_j && std::abs(two_mp) <= two_j && (two_j - two_m) % 2 == 0 &&
               (two_j - two_mp) % 2 == 0;
    }
};

/// Parses "1/2", "3", "-5/2" or "1.5" into a doubled spin label.
inline int parse_twice_spin(const std::string& text)
{
    const Rational r = parse_rational(text) * Rational(2);
    if (r.get_den() != 1)
        throw invalid_parameter("not an integer or half-integer: " + text);
    return static_cast<int>(r.get_num().get_si());
}

/// d^j_{m,m'}(beta) = (-1)^{m-m'} sqrt(rho(x)) k_n(x) / d_n with N = 2j, n = j-m, x = j-m',
/// p = sin^2(beta/2). beta = 0 and beta = pi are handled by their closed forms.
inline double wigner_d(const WignerIndex& idx)
{
    if (!idx.valid())
        throw invalid_parameter("wigner: j, m, m' must be compatible (half-)integers with |m|, |m'| <= j");
    if (idx.two_j == 0)
        return 1.0;
    const double half = 0.5 * idx.beta;
    const double p = std::sin(half) * std::sin(half);
    const double q = std::cos(half) * std::cos(half);
    if (p == 0.0)
        return idx.two_m == idx.two_mp ? 1.0 : 0.0;
    if (q == 0.0 || p >= 1.0) {
        if (idx.two_m != -idx.two_mp)
            return 0.0;
        return ((idx.two_j + idx.two_m) / 2) % 2 == 0 ? 1.0 : -1.0;
    }
    // d_{m,m'} = (-1)^{m-m'} d_{m',m} = d_{-m',-m} = (-1)^{m-m'} d_{-m,-m'}. Evaluating the
    // equivalent entry with the largest row label keeps n = j - m, the number of recurrence
    // steps, minimal; forward recurrence in n loses relative accuracy where d decays.
    int tm = idx.two_m, tmp = idx.two_mp;
    const bool odd = ((tm - tmp) / 2) % 2 != 0;
    double sign = 1.0;
    if (std::max(std::abs(tm), std::abs(tmp)) != tm) {
        if (tmp >= std::abs(tm)) {
            std::swap(tm, tmp);
            sign = odd ? -1.0 : 1.0;
        } else if (-tmp >= std::abs(tm)) {
            const int a = -tmp, b = -tm;
            tm = a;
            tmp = b;
        } else {
            tm = -tm;
            tmp = -tmp;
            sign = odd ? -1.0 : 1.0;
        }
    }
    const auto spec = make_kravchuk<double>(p, idx.N());
    const int n = (idx.two_j - tm) / 2;
    const int x = (idx.two_j - tmp) / 2;
    const double value = psi(spec, n, static_cast<double>(x));
    return sign * (((x - n) % 2 == 0) ? value : -value);
}

inline double wigner_d(int two_j, int two_m, int two_mp, double beta)
{
    return wigner_d(WignerIndex{two_j, two_m, two_mp, beta});
}

/// Entry or zero when (m, m') leaves the representation.
inline double wigner_d_or_zero(int two_j, int two_m, int two_mp, double beta)
{
    if (std::abs(two_m) > two_j || std::abs(two_mp) > two_j)
        return 0.0;
    return wigner_d(two_j, two_m, two_mp, beta);
}

enum class LatticeRelation { difference, recurrence, raising, lowering };

inline LatticeRelation lattice_relation_from_string(const std::string& s)
{
    if (s == "difference")
        return LatticeRelation::difference;
    if (s == "recurrence")
        return LatticeRelation::recurrence;
    if (s == "raising")
        return LatticeRelation::raising;
    if (s == "lowering")
        return LatticeRelation::lowering;
    throw std::invalid_argument("unknown relation: " + s);
}

/// Which d-entry the last term of the recurrence uses: d_{m+1,m'} (symmetric) or d_{m+1,m} (swapped).
enum class RecurrenceReading { symmetric, swapped };

/// Residuals of the d-function relations in (j, m, m') form:
///   difference sqrt((j+m')(j-m'+1)) d_{m,m'-1} + (2/sin b)(m - m' cos b) d_{m,m'} + sqrt((j-m')(j+m'+1)) d_{m,m'+1}
///   recurrence sqrt((j+m)(j-m+1)) d_{m-1,m'} - (2/sin b)(m' - m cos b) d_{m,m'} + sqrt((j-m)(j+m+1)) d_{m+1,m'}
///   raising    (sin b/2) sqrt((j+m)(j-m+1)) d_{m-1,m'} - sin^2(b/2)(m+m') d_{m,m'} - (sin b/2) sqrt((j-m')(j+m'+1)) d_{m,m'+1}
///   lowering   (sin b/2) sqrt((j-m)(j+m+1)) d_{m+1,m'} - sin^2(b/2)(m+m') d_{m,m'} - (sin b/2) sqrt((j+m')(j-m'+1)) d_{m,m'-1}
inline Residual<double> wigner_relation_residual(LatticeRelation rel, const WignerIndex& idx,
                                    RecurrenceReading reading = RecurrenceReading::symmetric)
{
    if (!idx.valid())
        throw invalid_parameter("wigner: invalid index");
    const double j = 0.5 * idx.two_j;
    const double m = 0.5 * idx.two_m;
    const double mp = 0.5 * idx.two_mp;
    const double b = idx.beta;
    const double sb = std::sin(b);
    const int J = idx.two_j, M = idx.two_m, MP = idx.two_mp;
    auto d = [&](int tm, int tmp) { return wigner_d_or_zero(J, tm, tmp, b); };
    auto root = [](double v) { return std::sqrt(std::max(v, 0.0)); };
    const double c = d(M, MP);
    if ((rel == LatticeRelation::difference || rel == LatticeRelation::recurrence) && std::fabs(sb) < 1e-300)
        throw degenerate_parameter("difference and recurrence relations are singular at sin(beta) = 0");
    switch (rel) {
    case LatticeRelation::difference:
        return detail::sum_terms({root((j + mp) * (j - mp + 1.0)) * d(M, MP - 2), 2.0 / sb * (m - mp * std::cos(b)) * c,
                                  root((j - mp) * (j + mp + 1.0)) * d(M, MP + 2)});
    case LatticeRelation::recurrence: {
        const double last = reading == RecurrenceReading::symmetric ? d(M + 2, MP) : d(M + 2, M);
        return detail::sum_terms({root((j + m) * (j - m + 1.0)) * d(M - 2, MP), -2.0 / sb * (mp - m * std::cos(b)) * c,
                                  root((j - m) * (j + m + 1.0)) * last});
    }
    case LatticeRelation::raising: {
        const double p = std::sin(0.5 * b) * std::sin(0.5 * b);
        return detail::sum_terms({0.5 * sb * root((j + m) * (j - m + 1.0)) * d(M - 2, MP), -p * (m + mp) * c,
                                  -0.5 * sb * root((j - mp) * (j + mp + 1.0)) * d(M, MP + 2)});
    }
    case LatticeRelation::lowering: {
        const double p = std::sin(0.5 * b) * std::sin(0.5 * b);
        return detail::sum_terms({0.5 * sb * root((j - m) * (j + m + 1.0)) * d(M + 2, MP), -p * (m + mp) * c,
                                  -0.5 * sb * root((j + mp) * (j - mp + 1.0)) * d(M, MP - 2)});
    }
    }
    throw std::logic_error("unreachable");
}

/// The same relations written with Kravchuk labels (N, n, x, p), entries d_{j-n, j-x}:
///   difference sqrt(pq(N-x)(x+1)) d_{j-n,j-x-1} + (p(N-x-n) + q(x-n)) d_{j-n,j-x} + sqrt(pqx(N-x+1)) d_{j-n,j-x+1}
///   recurrence [-p(N-x-n) - q(n-x)] d_{j-n,j-x} + sqrt(pq(n+1)(N-n)) d_{j-n-1,j-x} + sqrt(pqn(N-n+1)) d_{j-n+1,j-x}
///   raising    sqrt(pq(n+1)(N-n)) d_{j-n-1,j-x} - p(N-x-n) d_{j-n,j-x} - sqrt(pqx(N-x+1)) d_{j-n,j-x+1}
///   lowering   sqrt(pqn(N-n+1)) d_{j-n+1,j-x} - p(N-x-n) d_{j-n,j-x} - sqrt(pq(x+1)(N-x)) d_{j-n,j-x-1}
inline Residual<double> wigner_relation_residual_kravchuk_labels(LatticeRelation rel, int N, int n, int x, double beta)
{
    if (N < 1 || n < 0 || n > N || x < 0 || x > N)
        throw invalid_parameter("kravchuk labels out of range");
    const double p = std::sin(0.5 * beta) * std::sin(0.5 * beta);
    const double q = std::cos(0.5 * beta) * std::cos(0.5 * beta);
    // d_{j-a, j-b} has doubled labels (N - 2a, N - 2b)
    auto d = [&](int a, int b) { return wigner_d_or_zero(N, N - 2 * a, N - 2 * b, beta); };
    auto root = [](double v) { return std::sqrt(std::max(v, 0.0)); };
    const double Nn = N, nn = n, xx = x;
    const double c = d(n, x);
    switch (rel) {
    case LatticeRelation::difference:
        return detail::sum_terms({root(p * q * (Nn - xx) * (xx + 1.0)) * d(n, x + 1),
                                  (p * (Nn - xx - nn) + q * (xx - nn)) * c, root(p * q * xx * (Nn - xx + 1.0)) * d(n, x - 1)});
    case LatticeRelation::recurrence:
        return detail::sum_terms({(-p * (Nn - xx - nn) - q * (nn - xx)) * c, root(p * q * (nn + 1.0) * (Nn - nn)) * d(n + 1, x),
                                  root(p * q * nn * (Nn - nn + 1.0)) * d(n - 1, x)});
    case LatticeRelation::raising:
        return detail::sum_terms({root(p * q * (nn + 1.0) * (Nn - nn)) * d(n + 1, x), -p * (Nn - xx - nn) * c,
                                  -root(p * q * xx * (Nn - xx + 1.0)) * d(n, x - 1)});
    case LatticeRelation::lowering:
        return detail::sum_terms({root(p * q * nn * (Nn - nn + 1.0)) * d(n - 1, x), -p * (Nn - xx - nn) * c,
                                  -root(p * q * (xx + 1.0) * (Nn - xx)) * d(n, x + 1)});
    }
    throw std::logic_error("unreachable");
}

// --- Meixner normalized relations ---------------------------------------------

/// Residuals of the normalized Meixner relations, M_n(x) = psi_n(x):
///   difference sqrt(mu(g+x)(x+1)) M_n(x+1) + sqrt(mu x(x+g-1)) M_n(x-1) - [mu(x+n+g) - n + x] M_n(x)
///   recurrence sqrt(mu(g+n)(n+1)) M_{n+1}(x) + sqrt(mu n(n+g-1)) M_{n-1}(x) - [mu(x+n+g) - x + n] M_n(x)
///   raising    sqrt(mu(g+n)(n+1)) M_{n+1}(x) - mu(x+n+g) M_n(x) + sqrt(mu x(x+g-1)) M_n(x-1)
///   lowering   sqrt(mu n(n+g-1)) M_{n-1}(x) - mu(x+n+g) M_n(x) + sqrt(mu(g+x)(x+1)) M_n(x+1)
inline Residual<double> meixner_relation_residual(const FamilySpec<double>& spec, LatticeRelation rel, int n, int x)
{
    if (spec.family != Family::meixner)
        throw std::domain_error("meixner only");
    if (n < 0 || x < 0)
        throw outside_support("meixner: n and x must be >= 0");
    const double g = spec.params.gamma;
    const double mu = spec.params.mu;
    const double nn = n, xx = x;
    auto M = [&](int k, int y) { return psi_or_zero(spec, k, static_cast<double>(y)); };
    const double c = M(n, x);
    switch (rel) {
    case LatticeRelation::difference:
        return detail::sum_terms({std::sqrt(mu * (g + xx) * (xx + 1.0)) * M(n, x + 1),
                                  std::sqrt(mu * xx * (xx + g - 1.0)) * M(n, x - 1), -(mu * (xx + nn + g) - nn + xx) * c});
    case LatticeRelation::recurrence:
        return detail::sum_terms({std::sqrt(mu * (g + nn) * (nn + 1.0)) * M(n + 1, x),
                                  std::sqrt(mu * nn * (nn + g - 1.0)) * M(n - 1, x), -(mu * (xx + nn + g) - xx + nn) * c});
    case LatticeRelation::raising:
        return detail::sum_terms({std::sqrt(mu * (g + nn) * (nn + 1.0)) * M(n + 1, x), -mu * (xx + nn + g) * c,
                                  std::sqrt(mu * xx * (xx + g - 1.0)) * M(n, x - 1)});
    case LatticeRelation::lowering:
        return detail::sum_terms({std::sqrt(mu * nn * (nn + g - 1.0)) * M(n - 1, x), -mu * (xx + nn + g) * c,
                                  std::sqrt(mu * (g + xx) * (xx + 1.0)) * M(n, x + 1)});
    }
    throw std::logic_error("unreachable");
}

/// Normalized residuals of a discrete family written generically; Kravchuk-normalized (non-Wigner) form:
///   raising    sqrt(pq(n+1)(N-n)) psi_{n+1}(x) - p(x+n-N) psi_n(x) - sqrt(pqx(N-x+1)) psi_n(x-1)
///   lowering   sqrt(pqn(N-n+1)) psi_{n-1}(x) - p(x+n-N) psi_n(x) - sqrt(pq(N-x)(x+1)) psi_n(x+1)
inline Residual<double> kravchuk_ladder_residual(const FamilySpec<double>& spec, LatticeRelation rel, int n, int x)
{
    if (spec.family != Family::kravchuk)
        throw std::domain_error("kravchuk only");
    const double p = spec.params.p, q = spec.params.q;
    const double N = spec.params.N, nn = n, xx = x;
    auto f = [&](int k, int y) { return psi_or_zero(spec, k, static_cast<double>(y)); };
    const double c = f(n, x);
    switch (rel) {
    case LatticeRelation::raising:
        return detail::sum_terms({std::sqrt(p * q * (nn + 1.0) * std::max(N - nn, 0.0)) * f(n + 1, x),
                                  -p * (xx + nn - N) * c, -std::sqrt(p * q * xx * (N - xx + 1.0)) * f(n, x - 1)});
    case LatticeRelation::lowering:
        return detail::sum_terms({std::sqrt(p * q * nn * (N - nn + 1.0)) * f(n - 1, x), -p * (xx + nn - N) * c,
                                  -std::sqrt(p * q * std::max(N - xx, 0.0) * (xx + 1.0)) * f(n, x + 1)});
    default: throw std::invalid_argument("kravchuk_ladder_residual: raising or lowering only");
    }
}

} // namespace ladderpoly
