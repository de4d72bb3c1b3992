#pragma once

// Gauss rules from three-term recurrences (Golub-Welsch).

#include "ladderpoly/family.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace ladderpoly {

struct QuadratureRule
{
    std::vector<double> nodes;
    std::vector<double> weights;

    double integrate(const std::function<double(double)>& f) const
    {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            acc += weights[i] * f(nodes[i]);
        return acc;
    }
};

/// Nodes are the eigenvalues of the symmetric Jacobi matrix, weights mass * (first eigenvector component)^2.
inline QuadratureRule golub_welsch(std::span<const double> diagonal, std::span<const double> off_diagonal, double mass)
{
    const auto n = static_cast<Eigen::Index>(diagonal.size());
    if (n == 0 || static_cast<Eigen::Index>(off_diagonal.size()) != n - 1)
        throw std::invalid_argument("golub_welsch: inconsistent Jacobi matrix sizes");
    Eigen::VectorXd d(n);
    Eigen::VectorXd e(n > 1 ? n - 1 : 0);
    for (Eigen::Index i = 0; i < n; ++i)
        d(i) = diagonal[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i + 1 < n; ++i)
        e(i) = off_diagonal[static_cast<std::size_t>(i)];

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("golub_welsch: eigen-decomposition failed");

    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        const double v0 = solver.eigenvectors()(0, i);
        rule.nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
        rule.weights[static_cast<std::size_t>(i)] = mass * v0 * v0;
    }
    return rule;
}

/// Gauss rule for the family weight, exact for polynomials of degree <= 2*points - 1.
/// Off-diagonal entries are sqrt(alpha_n gamma_{n+1}), the symmetrized recurrence.
inline QuadratureRule gauss_rule(const FamilySpec<double>& spec, int points)
{
    if (spec.discrete())
        throw std::domain_error("gauss_rule: continuous families only");
    if (points < 1)
        throw std::invalid_argument("gauss_rule: points must be positive");
    std::vector<double> diag(static_cast<std::size_t>(points));
    std::vector<double> off(static_cast<std::size_t>(points - 1));
    for (int n = 0; n < points; ++n) {
        const auto r = spec.recurrence(n);
        diag[static_cast<std::size_t>(n)] = r.beta;
        if (n + 1 < points) {
            const double prod = r.alpha * spec.recurrence(n + 1).gamma;
            if (!(prod > 0.0))
                throw degenerate_parameter("gauss_rule: recurrence is not positive definite");
            off[static_cast<std::size_t>(n)] = std::sqrt(prod);
        }
    }
    return golub_welsch(diag, off, total_mass(spec));
}

/// Gauss-Legendre rule on [a, b].
inline QuadratureRule gauss_legendre(int points, double a, double b)
{
    std::vector<double> diag(static_cast<std::size_t>(points), 0.0);
    std::vector<double> off(static_cast<std::size_t>(points - 1));
    for (int k = 1; k < points; ++k)
        off[static_cast<std::size_t>(k - 1)] = k / std::sqrt(4.0 * k * k - 1.0);
    QuadratureRule rule = golub_welsch(diag, off, 2.0);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        rule.nodes[i] = mid + half * rule.nodes[i];
        rule.weights[i] *= half;
    }
    return rule;
}

/// Composite Gauss-Legendre over equal panels of [a, b].
inline double composite_gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels,
                                       int order = 10)
{
    const QuadratureRule ref = gauss_legendre(order, 0.0, 1.0);
    const double width = (b - a) / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double left = a + p * width;
        for (std::size_t i = 0; i < ref.nodes.size(); ++i)
            acc += width * ref.weights[i] * f(left + width * ref.nodes[i]);
    }
    return acc;
}

} // namespace ladderpoly
