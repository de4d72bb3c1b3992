#pragma once

// Exact certification of a family: every route and relation is checked on the
// polynomial ring over Q, with a float fallback for non-rational parameters.

#include "ladderpoly/poly_engine.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ladderpoly {

enum class CheckMode { exact, floating };

inline std::string to_string(CheckMode m) { return m == CheckMode::exact ? "exact" : "float"; }

struct CertificateCheck
{
    std::string name;
    bool passed = true;
    CheckMode mode = CheckMode::exact;
    std::optional<std::string> first_failure;
    double max_error = 0.0; ///< float mode only
    double tolerance = 0.0; ///< float mode only
};

struct CertificateReport
{
    Family family = Family::hermite;
    std::vector<std::pair<std::string, std::string>> params;
    int n_max = 0;
    std::vector<CertificateCheck> checks;

    bool passed() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const CertificateCheck& c) { return c.passed; });
    }

    /// "check at n=k" for the first failing check in order, if any.
    std::optional<std::string> first_failure() const
    {
        for (const auto& c : checks)
            if (!c.passed)
                return c.name + (c.first_failure ? " at " + *c.first_failure : std::string());
        return std::nullopt;
    }
};

template <Scalar T>
std::vector<std::pair<std::string, std::string>> describe_parameters(const FamilySpec<T>& spec)
{
    auto text = [](const T& v) {
        if constexpr (is_exact_v<T>)
            return to_display_string(v);
        else
            return format_double(v);
    };
    const auto& p = spec.params;
    switch (spec.family) {
    case Family::hermite:
        return {};
    case Family::laguerre:
        return {{"alpha", text(p.alpha)}};
    case Family::kravchuk:
        return {{"p", text(p.p)}, {"N", std::to_string(p.N)}};
    case Family::meixner:
        return {{"gamma", text(p.gamma)}, {"mu", text(p.mu)}};
    }
    return {};
}

namespace detail {

template <class Pred>
CertificateCheck exact_check(std::string name, int from, int to, Pred&& holds)
{
    CertificateCheck c{std::move(name), true, CheckMode::exact, std::nullopt, 0.0, 0.0};
    for (int n = from; n <= to; ++n)
        if (!holds(n)) {
            c.passed = false;
            c.first_failure = "n=" + std::to_string(n);
            break;
        }
    return c;
}

/// Points at which the weight equation is checked: the lattice start for discrete
/// families, a spread of rationals inside the interval otherwise.
inline std::vector<Rational> pearson_points(const FamilySpec<Rational>& spec)
{
    std::vector<Rational> pts;
    if (spec.discrete()) {
        const int hi = spec.support.finite() ? static_cast<int>(spec.support.upper) : 40;
        for (int x = 0; x <= hi; ++x)
            pts.emplace_back(x);
    } else {
        for (int i = 1; i <= 12; ++i)
            pts.push_back(scalar_from<Rational>(i, 3) - (spec.family == Family::hermite ? Rational(2) : Rational(0)));
    }
    return pts;
}

inline double max_abs_coefficient(const Polynomial<double>& p)
{
    double m = 0.0;
    for (int i = 0; i <= p.degree(); ++i)
        m = std::max(m, std::fabs(p[static_cast<std::size_t>(i)]));
    return m;
}

} // namespace detail

/// Checks, in order: pearson (weight equation), equation (the second-order
/// equation for each raised P_n), recurrence (raised P_n obey the family's
/// three-term coefficients), raising-route (recurrence route == raising route),
/// lowering-backward / lowering-forward (lowering P_n returns P_{n-1}), and for
/// discrete families gram-diagonal and squared-norms; continuous families get a
/// float quadrature Gram check. A family whose construction itself breaks down
/// gets a failing "construction" check and no further checks.
inline CertificateReport certify_family(const FamilySpec<Rational>& spec, int n_max)
{
    if (n_max < 1)
        throw std::invalid_argument("certify: n_max must be >= 1");
    if (spec.family == Family::kravchuk && n_max > spec.params.N)
        throw std::invalid_argument("certify: kravchuk n_max exceeds N");
    CertificateReport rep{spec.family, describe_parameters(spec), n_max, {}};

    const auto pts = detail::pearson_points(spec);
    {
        CertificateCheck c{"pearson", true, CheckMode::exact, std::nullopt, 0.0, 0.0};
        for (const auto& x : pts)
            if (!is_zero(pearson_residual(spec, x))) {
                c.passed = false;
                c.first_failure = "x=" + to_display_string(x);
                break;
            }
        rep.checks.push_back(std::move(c));
    }

    PolySeq<Rational> raised;
    try {
        raised = build_by_raising(spec, n_max);
    } catch (const std::exception& e) {
        rep.checks.push_back({"construction", false, CheckMode::exact, std::string(e.what()), 0.0, 0.0});
        return rep;
    }
    rep.checks.push_back(detail::exact_check("equation", 0, n_max, [&](int n) {
        return equation_residual_polynomial(spec, raised[n], n).is_zero();
    }));
    rep.checks.push_back(detail::exact_check("recurrence", 0, n_max - 1, [&](int n) {
        return recurrence_residual_polynomial(spec, raised, n).is_zero();
    }));

    const auto recurred = build_by_recurrence(spec, n_max);
    rep.checks.push_back(
        detail::exact_check("raising-route", 0, n_max, [&](int n) { return recurred[n] == raised[n]; }));
    rep.checks.push_back(detail::exact_check("lowering-backward", 1, n_max, [&](int n) {
        return lower(spec, raised, n, LoweringForm::backward) == raised[n - 1];
    }));
    if (spec.discrete())
        rep.checks.push_back(detail::exact_check("lowering-forward", 1, n_max, [&](int n) {
            return lower(spec, raised, n, LoweringForm::forward) == raised[n - 1];
        }));

    if (spec.discrete()) {
        const auto g = relative_gram_matrix(spec, raised);
        CertificateCheck diag{"gram-diagonal", true, CheckMode::exact, std::nullopt, 0.0, 0.0};
        for (int a = 0; a <= n_max && diag.passed; ++a)
            for (int b = 0; b <= n_max; ++b)
                if (a != b && !is_zero(g(a, b))) {
                    diag.passed = false;
                    diag.first_failure = "n=" + std::to_string(std::max(a, b)) + " (entry " + std::to_string(a) +
                                         "," + std::to_string(b) + ")";
                    break;
                }
        rep.checks.push_back(std::move(diag));
        rep.checks.push_back(detail::exact_check("squared-norms", 0, n_max, [&](int n) {
            return g(n, n) == relative_squared_norm(spec, n);
        }));
    } else {
        const auto fspec = convert_family<double>(spec);
        const auto gr = orthogonality_matrix(fspec, n_max);
        CertificateCheck c{"gram-quadrature", true, CheckMode::floating, std::nullopt, 0.0, 1e-10};
        for (int a = 0; a <= n_max; ++a)
            for (int b = 0; b <= n_max; ++b) {
                const double ref = std::sqrt(squared_norm(fspec, a) * squared_norm(fspec, b));
                const double want = a == b ? 1.0 : 0.0;
                const double err = std::fabs(gr.gram(a, b) / ref - want);
                if (err > c.max_error)
                    c.max_error = err;
                if (err > c.tolerance && c.passed) {
                    c.passed = false;
                    c.first_failure = "n=" + std::to_string(std::max(a, b));
                }
            }
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

/// Float-only certification for parameters without an exact rational reading.
/// Polynomial identities are compared coefficient-wise relative to the largest
/// coefficient involved.
inline CertificateReport certify_family_float(const FamilySpec<double>& spec, int n_max, double tol = 1e-9)
{
    if (n_max < 1)
        throw std::invalid_argument("certify: n_max must be >= 1");
    if (spec.family == Family::kravchuk && n_max > spec.params.N)
        throw std::invalid_argument("certify: kravchuk n_max exceeds N");
    CertificateReport rep{spec.family, describe_parameters(spec), n_max, {}};
    const auto raised = build_by_raising(spec, n_max);
    const auto recurred = build_by_recurrence(spec, n_max);

    auto run = [&](std::string name, int from, int to, auto&& measure) {
        CertificateCheck c{std::move(name), true, CheckMode::floating, std::nullopt, 0.0, tol};
        for (int n = from; n <= to; ++n) {
            const double e = measure(n);
            c.max_error = std::max(c.max_error, e);
            if (!(e <= tol) && c.passed) {
                c.passed = false;
                c.first_failure = "n=" + std::to_string(n);
            }
        }
        rep.checks.push_back(std::move(c));
    };
    auto rel = [](const Polynomial<double>& diff, const Polynomial<double>& ref) {
        return detail::max_abs_coefficient(diff) / std::max(detail::max_abs_coefficient(ref), 1e-300);
    };
    run("equation", 0, n_max, [&](int n) {
        const auto r = equation_residual_polynomial(spec, raised[n], n);
        return rel(r, raised[n]) / std::max(1.0, std::fabs(lambda_n(spec, n)));
    });
    run("recurrence", 0, n_max - 1, [&](int n) {
        return rel(recurrence_residual_polynomial(spec, raised, n), Polynomial<double>::identity() * raised[n]);
    });
    run("raising-route", 0, n_max, [&](int n) { return rel(recurred[n] - raised[n], raised[n]); });
    run("lowering-backward", 1, n_max, [&](int n) {
        return rel(lower(spec, raised, n, LoweringForm::backward) - raised[n - 1], raised[n - 1]);
    });
    if (spec.discrete())
        run("lowering-forward", 1, n_max, [&](int n) {
            return rel(lower(spec, raised, n, LoweringForm::forward) - raised[n - 1], raised[n - 1]);
        });
    const auto gr = orthogonality_matrix(spec, n_max);
    run("gram", 0, n_max, [&](int a) {
        double worst = 0.0;
        for (int b = 0; b <= n_max; ++b) {
            const double ref = std::sqrt(squared_norm(spec, a) * squared_norm(spec, b));
            worst = std::max(worst, std::fabs(gr.gram(a, b) / ref - (a == b ? 1.0 : 0.0)));
        }
        return worst;
    });
    return rep;
}

struct DriftReport
{
    double max_drift = 0.0;
    int worst_n = 0;
    double worst_point = 0.0;
    int evaluations = 0;
};

/// Float recurrence values against exact ones on a grid: for each n the sup of
/// |float - exact| divided by the sup of |exact| over the grid; the maximum over n.
inline DriftReport float_drift(const FamilySpec<Rational>& spec, int n_max, const std::vector<Rational>& grid)
{
    const auto fspec = convert_family<double>(spec);
    std::vector<double> err(static_cast<std::size_t>(n_max + 1), 0.0), size(err.size(), 0.0),
        where(err.size(), 0.0);
    DriftReport rep;
    for (const auto& x : grid) {
        const auto exact = evaluate_by_recurrence(spec, n_max, x);
        const double xd = to_double(x);
        const auto approx = evaluate_by_recurrence(fspec, n_max, xd);
        for (int n = 0; n <= n_max; ++n) {
            const double e = to_double(exact[n]);
            const double d = std::fabs(approx[n] - e);
            size[n] = std::max(size[n], std::fabs(e));
            if (d > err[n]) {
                err[n] = d;
                where[n] = xd;
            }
            ++rep.evaluations;
        }
    }
    for (int n = 0; n <= n_max; ++n) {
        const double drift = size[n] > 0.0 ? err[n] / size[n] : err[n];
        if (drift > rep.max_drift) {
            rep.max_drift = drift;
            rep.worst_n = n;
            rep.worst_point = where[n];
        }
    }
    return rep;
}

/// Support points 0..min(upper, horizon) for discrete families, k/2 over [-10, 10]
/// (or (0, 10]) for continuous ones.
inline std::vector<Rational> default_drift_grid(const FamilySpec<Rational>& spec, int horizon = 40)
{
    std::vector<Rational> g;
    if (spec.discrete()) {
        const int hi = spec.support.finite() ? std::min(static_cast<int>(spec.support.upper), horizon) : horizon;
        for (int x = 0; x <= hi; ++x)
            g.emplace_back(x);
        return g;
    }
    for (int k = spec.family == Family::hermite ? -20 : 1; k <= 20; ++k)
        g.push_back(scalar_from<Rational>(k, 2));
    return g;
}

} // namespace ladderpoly
