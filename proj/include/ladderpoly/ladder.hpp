#pragma once

// Truncated ladder operators on the orthonormal index basis, their commutators,
// and normalized functions built by repeated raising from the ground state.

#include "ladderpoly/matrix.hpp"
#include "ladderpoly/normalized.hpp"
#include "ladderpoly/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace ladderpoly {

enum class LadderOp { raise, lower, diagonal };

inline std::string to_string(LadderOp op)
{
    switch (op) {
    case LadderOp::raise:
        return "raise";
    case LadderOp::lower:
        return "lower";
    case LadderOp::diagonal:
        return "diagonal";
    }
    return "?";
}

inline LadderOp ladder_op_from_string(const std::string& s)
{
    if (s == "raise" || s == "A+")
        return LadderOp::raise;
    if (s == "lower" || s == "A-")
        return LadderOp::lower;
    if (s == "diagonal" || s == "A0")
        return LadderOp::diagonal;
    throw invalid_parameter("unknown operator: " + s);
}

/// A ladder operator truncated to dim basis vectors. Convention: (A+)_{k+1,k} is
/// the only nonzero pattern of the raising operator, and A- = (A+)^T.
/// Wigner matrices (two_j >= 0) use the m-ordered basis k = j + m.
struct LadderMatrix
{
    Family family = Family::hermite;
    LadderOp op = LadderOp::raise;
    int dim = 0;
    int two_j = -1;
    DenseMatrix<double> entries;

    bool wigner() const { return two_j >= 0; }

    std::vector<std::tuple<int, int, double>> triplets() const
    {
        std::vector<std::tuple<int, int, double>> out;
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c)
                if (entries(r, c) != 0.0)
                    out.emplace_back(r, c, entries(r, c));
        return out;
    }
};

namespace detail {

/// (A+)_{k+1,k} for the infinite families.
inline double raise_coefficient(const FamilySpec<double>& spec, int k)
{
    const double n = k;
    switch (spec.family) {
    case Family::hermite:
        return std::sqrt(n + 1.0);
    case Family::laguerre:
        return std::sqrt((n + 1.0) * (n + spec.params.alpha + 1.0));
    case Family::meixner:
        return std::sqrt(spec.params.mu * (spec.params.gamma + n) * (n + 1.0));
    case Family::kravchuk:
        break;
    }
    throw std::logic_error("raise_coefficient: finite family");
}

inline double diagonal_coefficient(const FamilySpec<double>& spec, int k)
{
    switch (spec.family) {
    case Family::hermite:
        return 1.0;
    case Family::laguerre:
        return 2.0 * k + spec.params.alpha + 1.0;
    case Family::meixner:
        return spec.params.mu * (2.0 * k + spec.params.gamma);
    case Family::kravchuk:
        break;
    }
    throw std::logic_error("diagonal_coefficient: finite family");
}

} // namespace detail

/// so(3) generators for spin j on the basis m = -j..j:
/// A+ |m-1> -> sqrt((j+m)(j-m+1))/sqrt(2j) |m>, A0 = m/(2j).
inline LadderMatrix wigner_ladder_matrix(int two_j, LadderOp op)
{
    if (two_j < 1)
        throw invalid_parameter("wigner ladder: j must be at least 1/2");
    const int dim = two_j + 1;
    LadderMatrix out{Family::kravchuk, op, dim, two_j, DenseMatrix<double>(dim, dim)};
    const double scale = 1.0 / std::sqrt(static_cast<double>(two_j));
    for (int k = 0; k < dim; ++k) {
        const int two_m = 2 * k - two_j;
        if (op == LadderOp::diagonal) {
            out.entries(k, k) = 0.5 * two_m / two_j;
            continue;
        }
        if (k == 0)
            continue;
        const double jpm = 0.5 * (two_j + two_m);
        const double jmm1 = 0.5 * (two_j - two_m) + 1.0;
        const double v = scale * std::sqrt(jpm * jmm1);
        if (op == LadderOp::raise)
            out.entries(k, k - 1) = v;
        else
            out.entries(k - 1, k) = v;
    }
    return out;
}

/// Truncated ladder matrix. Kravchuk maps to the Wigner generators with 2j = N
/// and requires dim = N + 1.
inline LadderMatrix ladder_matrix(const FamilySpec<double>& spec, LadderOp op, int dim)
{
    if (dim < 2)
        throw invalid_parameter("ladder_matrix: dim must be >= 2");
    if (spec.family == Family::kravchuk) {
        if (dim != spec.params.N + 1)
            throw invalid_parameter("ladder_matrix: kravchuk dimension is N + 1");
        return wigner_ladder_matrix(spec.params.N, op);
    }
    LadderMatrix out{spec.family, op, dim, -1, DenseMatrix<double>(dim, dim)};
    for (int k = 0; k < dim; ++k) {
        if (op == LadderOp::diagonal) {
            out.entries(k, k) = detail::diagonal_coefficient(spec, k);
            continue;
        }
        if (k + 1 == dim)
            continue;
        const double v = detail::raise_coefficient(spec, k);
        if (op == LadderOp::raise)
            out.entries(k + 1, k) = v;
        else
            out.entries(k, k + 1) = v;
    }
    return out;
}

inline DenseMatrix<double> commutator(const DenseMatrix<double>& a, const DenseMatrix<double>& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
        throw std::invalid_argument("commutator: dimension mismatch");
    return a * b - b * a;
}

inline DenseMatrix<double> commutator(const LadderMatrix& a, const LadderMatrix& b)
{
    return commutator(a.entries, b.entries);
}

/// Check of [X, Y] = c Z on the compared block. The fitted coefficient is the
/// least-squares c over that block; max_deviation is measured against the expected c.
struct AlgebraCheck
{
    std::string relation;
    double expected = 0.0;
    double fitted = 0.0;
    double max_deviation = 0.0;
    double fitted_deviation = 0.0;
    int compared = 0; ///< leading block size
    bool edge_excluded = false;

    bool holds(double tol) const { return max_deviation <= tol; }
};

inline AlgebraCheck check_relation(std::string relation, const DenseMatrix<double>& comm, const DenseMatrix<double>& rhs,
                                   double expected, bool exclude_edge)
{
    AlgebraCheck out;
    out.relation = std::move(relation);
    out.expected = expected;
    out.edge_excluded = exclude_edge;
    const int dim = static_cast<int>(comm.rows());
    out.compared = exclude_edge ? dim - 1 : dim;
    double num = 0.0, den = 0.0;
    for (int r = 0; r < out.compared; ++r)
        for (int c = 0; c < out.compared; ++c) {
            num += comm(r, c) * rhs(r, c);
            den += rhs(r, c) * rhs(r, c);
        }
    out.fitted = den > 0.0 ? num / den : 0.0;
    for (int r = 0; r < out.compared; ++r)
        for (int c = 0; c < out.compared; ++c) {
            out.max_deviation = std::max(out.max_deviation, std::fabs(comm(r, c) - expected * rhs(r, c)));
            out.fitted_deviation = std::max(out.fitted_deviation, std::fabs(comm(r, c) - out.fitted * rhs(r, c)));
        }
    return out;
}

/// so(3) relations for spin j, all entries:
/// [A+,A-] = 2A0, [A+,A0] = A+, [A-,A0] = -A-.
inline std::vector<AlgebraCheck> wigner_algebra(int two_j)
{
    const auto up = wigner_ladder_matrix(two_j, LadderOp::raise);
    const auto down = wigner_ladder_matrix(two_j, LadderOp::lower);
    const auto zero = wigner_ladder_matrix(two_j, LadderOp::diagonal);
    return {check_relation("[A+,A-] = 2 A0", commutator(up, down), zero.entries, 2.0, false),
            check_relation("[A+,A0] = A+", commutator(up, zero), up.entries, 1.0, false),
            check_relation("[A-,A0] = -A-", commutator(down, zero), down.entries, -1.0, false)};
}

/// Relations of the infinite families on a dim truncation, top row/column excluded.
/// Hermite: [A-,A+] = A0 (A0 = identity). Laguerre and Meixner (su(1,1)):
/// [A+,A-] = A0, [A+,A0] = 2mu A+, [A-,A0] = -2mu A-, with mu = 1 for Laguerre.
inline std::vector<AlgebraCheck> ladder_algebra(const FamilySpec<double>& spec, int dim)
{
    if (spec.family == Family::kravchuk)
        return wigner_algebra(spec.params.N);
    const auto up = ladder_matrix(spec, LadderOp::raise, dim);
    const auto down = ladder_matrix(spec, LadderOp::lower, dim);
    const auto zero = ladder_matrix(spec, LadderOp::diagonal, dim);
    if (spec.family == Family::hermite)
        return {check_relation("[A-,A+] = A0", commutator(down, up), zero.entries, 1.0, true)};
    const double c = spec.family == Family::meixner ? 2.0 * spec.params.mu : 2.0;
    const std::string cs = spec.family == Family::meixner ? "2mu" : "2";
    return {check_relation("[A+,A-] = A0", commutator(up, down), zero.entries, 1.0, true),
            check_relation("[A+,A0] = " + cs + " A+", commutator(up, zero), up.entries, c, true),
            check_relation("[A-,A0] = -" + cs + " A-", commutator(down, zero), down.entries, -c, true)};
}

// --- function-space ladder ------------------------------------------------------

/// Ground state fixed by A- psi_0 = 0 (the n = 0 lowering relation), normalized.
/// Discrete families step psi_0(x+1)/psi_0(x) from psi_0(0); point must be a support integer.
inline double ground_state(const FamilySpec<double>& spec, double point)
{
    switch (spec.family) {
    case Family::hermite:
        return std::exp(-0.5 * point * point) / std::pow(std::numbers::pi, 0.25);
    case Family::laguerre: {
        const double a = spec.params.alpha;
        if (point < 0.0)
            throw outside_support("laguerre: s must be >= 0");
        if (point == 0.0)
            return a == 0.0 ? 1.0 : 0.0;
        return std::exp(0.5 * a * std::log(point) - 0.5 * point - 0.5 * std::lgamma(a + 1.0));
    }
    case Family::kravchuk:
    case Family::meixner:
        break;
    }
    const double x = point;
    if (x < spec.support.lower || x > spec.support.upper || x != std::floor(x))
        throw outside_support("ground_state: point outside the integer support");
    using L = long double;
    L v;
    if (spec.family == Family::kravchuk) {
        const L p = spec.params.p, q = spec.params.q, N = spec.params.N;
        v = std::pow(q, N / 2);
        for (int y = 0; y < static_cast<int>(x); ++y)
            v *= std::sqrt(p * (N - y) / (q * (y + 1)));
    } else {
        const L mu = spec.params.mu, g = spec.params.gamma;
        v = std::pow(1 - mu, g / 2);
        for (int y = 0; y < static_cast<int>(x); ++y)
            v *= std::sqrt(mu * (y + g) / (y + 1));
    }
    return static_cast<double>(v);
}

/// psi_n = q_n psi_0 with q_n obtained by applying A+ n times to the constant 1,
/// dividing by each step coefficient. The discrete forms lose accuracy on the
/// lattice for large n (monomial basis); build_by_ladder uses ladder_lattice_values there.
///   Hermite   A+ = (s - d/ds)/sqrt(2)            q -> (2 s q - q')/sqrt(2)
///   Laguerre  A+ = (2k+a+2-s)/2 + s d/ds          q -> (k+a+1-s) q + s q'
///   Meixner   A+ f = mu(x+k+g) f(x) - sqrt(mu x(x+g-1)) f(x-1)
///                                                 q -> mu(x+k+g) q(x) - x q(x-1)
///   Kravchuk  A+ f = p(x+k-N) f(x) + sqrt(pq x(N-x+1)) f(x-1)
///                                                 q -> p(x+k-N) q(x) + q x q(x-1)
inline Polynomial<double> ladder_prefactor(const FamilySpec<double>& spec, int n)
{
    if (n < 0)
        throw std::invalid_argument("ladder_prefactor: n must be >= 0");
    if (spec.family == Family::kravchuk && n > spec.params.N)
        throw std::invalid_argument("ladder_prefactor: n exceeds N");
    using P = Polynomial<double>;
    const P x = P::identity();
    P q = P::constant(1.0);
    for (int k = 0; k < n; ++k) {
        P next;
        double c = 1.0;
        switch (spec.family) {
        case Family::hermite:
            next = (2.0 * (x * q) - q.derivative()) / std::numbers::sqrt2;
            c = std::sqrt(k + 1.0);
            break;
        case Family::laguerre:
            next = P{k + spec.params.alpha + 1.0, -1.0} * q + x * q.derivative();
            c = detail::raise_coefficient(spec, k);
            break;
        case Family::meixner: {
            const double mu = spec.params.mu, g = spec.params.gamma;
            next = P{mu * (k + g), mu} * q - x * q.shifted(-1.0);
            c = detail::raise_coefficient(spec, k);
            break;
        }
        case Family::kravchuk: {
            const double p = spec.params.p, qq = spec.params.q;
            const double N = spec.params.N;
            next = P{p * (k - N), p} * q + qq * (x * q.shifted(-1.0));
            c = std::sqrt(p * qq * (k + 1.0) * (N - k));
            break;
        }
        }
        q = next / c;
        for (int i = 0; i <= q.degree(); ++i)
            if (!std::isfinite(q[static_cast<std::size_t>(i)]))
                throw std::overflow_error("ladder_prefactor: coefficients overflow at step " + std::to_string(k + 1));
    }
    return q;
}

/// Discrete families: (A+)^n applied to psi_0 sampled on {0, ..., x_max}. The
/// action only reaches x - 1, so the truncated vector is exact.
///   Meixner   A+ f = mu(x+k+g) f(x) - sqrt(mu x(x+g-1)) f(x-1)
///   Kravchuk  A+ f = p(x+k-N) f(x) + sqrt(pq x(N-x+1)) f(x-1)
inline std::vector<double> ladder_lattice_values(const FamilySpec<double>& spec, int n, int x_max)
{
    if (!spec.discrete())
        throw std::domain_error("ladder_lattice_values: discrete families only");
    if (n < 0)
        throw std::invalid_argument("ladder_lattice_values: n must be >= 0");
    if (spec.family == Family::kravchuk && n > spec.params.N)
        throw std::invalid_argument("ladder_lattice_values: n exceeds N");
    if (spec.support.finite())
        x_max = std::min(x_max, static_cast<int>(spec.support.upper));
    // The two terms nearly cancel away from the bulk of psi_n; extended precision keeps 1e-12.
    using L = long double;
    std::vector<L> f(static_cast<std::size_t>(x_max + 1));
    if (spec.family == Family::meixner) {
        const L mu = spec.params.mu, g = spec.params.gamma;
        f[0] = std::pow(1 - mu, g / 2);
        for (int x = 0; x < x_max; ++x)
            f[x + 1] = f[x] * std::sqrt(mu * (x + g) / (x + 1));
    } else {
        const L p = spec.params.p, q = spec.params.q, N = spec.params.N;
        f[0] = std::pow(q, N / 2);
        for (int x = 0; x < x_max; ++x)
            f[x + 1] = f[x] * std::sqrt(p * (N - x) / (q * (x + 1)));
    }
    std::vector<L> next(f.size());
    for (int k = 0; k < n; ++k) {
        for (int x = 0; x <= x_max; ++x) {
            const L prev = x > 0 ? f[x - 1] : 0.0L;
            L v;
            if (spec.family == Family::meixner) {
                const L mu = spec.params.mu, g = spec.params.gamma;
                v = (mu * (x + k + g) * f[x] - std::sqrt(mu * x * (x + g - 1)) * prev) /
                    std::sqrt(mu * (g + k) * (k + 1));
            } else {
                const L p = spec.params.p, q = spec.params.q, N = spec.params.N;
                v = (p * (x + k - N) * f[x] + std::sqrt(p * q * x * (N - x + 1)) * prev) /
                    std::sqrt(p * q * (k + 1) * (N - k));
            }
            if (!std::isfinite(v))
                throw std::overflow_error("ladder_lattice_values: non-finite value at step " + std::to_string(k + 1));
            next[x] = v;
        }
        std::swap(f, next);
    }
    return std::vector<double>(f.begin(), f.end());
}

/// psi_n built by (A+)^n psi_0 / (product of step coefficients), sampled at points.
inline NormalizedState build_by_ladder(const FamilySpec<double>& spec, int n, const std::vector<double>& points)
{
    NormalizedState st{spec.family, n, points, {}, false};
    st.values.reserve(points.size());
    if (spec.discrete()) {
        int x_max = 0;
        for (double x : points) {
            if (x < spec.support.lower || x > spec.support.upper || x != std::floor(x))
                throw outside_support("build_by_ladder: point outside the integer support");
            x_max = std::max(x_max, static_cast<int>(x));
        }
        const auto f = ladder_lattice_values(spec, n, x_max);
        for (double x : points)
            st.values.push_back(f[static_cast<std::size_t>(x)]);
        return st;
    }
    const auto q = ladder_prefactor(spec, n);
    for (double s : points) {
        const double v = q(s) * ground_state(spec, s);
        if (!std::isfinite(v))
            throw std::overflow_error("build_by_ladder: non-finite value");
        st.values.push_back(v);
    }
    return st;
}

/// ||psi_n||^2 of the ladder-built state: Gauss rule (exact for q^2) or lattice sum.
inline double ladder_state_norm(const FamilySpec<double>& spec, int n)
{
    if (!spec.discrete()) {
        const auto q = ladder_prefactor(spec, n);
        const auto rule = gauss_rule(spec, n + 2);
        return rule.integrate([&](double s) { return q(s) * q(s); }) / total_mass(spec);
    }
    double tail = 0.0;
    const int count = detail::sum_over_lattice(spec, n, [](int, double) {}, tail);
    const auto f = ladder_lattice_values(spec, n, count - 1);
    double sum = 0.0;
    for (double v : f)
        sum += v * v;
    return sum;
}

} // namespace ladderpoly
