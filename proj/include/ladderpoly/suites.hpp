#pragma once

// Check suites over declared parameter boxes: residuals, orthogonality,
// commutators, the Wigner d-function properties and the hydrogen equation.
// Each check records its worst value against a tolerance.

#include "ladderpoly/io.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace ladderpoly {

struct SuiteCheck
{
    std::string name;
    double value = 0.0; ///< worst measured quantity
    double tolerance = 0.0;
    double default_tolerance = 0.0;
    std::string worst; ///< where the worst value occurred
    bool informational = false;
    Json detail;

    bool passed() const { return informational || value <= tolerance; }
};

struct SuiteReport
{
    std::string suite;
    std::string family;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<SuiteCheck> checks;

    bool passed() const
    {
        for (const auto& c : checks)
            if (!c.passed())
                return false;
        return true;
    }

    void override_tolerance(double tol)
    {
        for (auto& c : checks)
            if (!c.informational)
                c.tolerance = tol;
    }
};

inline Json to_json(const SuiteCheck& c)
{
    Json j{{"name", c.name},
           {"status", c.informational ? "info" : (c.passed() ? "pass" : "fail")},
           {"max_value", c.value},
           {"tolerance", c.tolerance},
           {"default_tolerance", c.default_tolerance},
           {"worst", c.worst}};
    if (!c.detail.is_null())
        j["detail"] = c.detail;
    return j;
}

inline Json to_json(const SuiteReport& r)
{
    Json checks = Json::array();
    for (const auto& c : r.checks)
        checks.push_back(to_json(c));
    return Json{{"suite", r.suite},
                {"family", r.family},
                {"params", params_json(r.params)},
                {"status", r.passed() ? "pass" : "fail"},
                {"checks", checks}};
}

namespace detail {

/// Running maximum with the location of the worst value.
class Worst
{
public:
    Worst(std::string name, double tol, bool informational = false)
        : check_{std::move(name), 0.0, tol, tol, "", informational, Json()}
    {
    }

    template <class Where>
    void see(double v, Where&& where)
    {
        if (!(v <= check_.value)) { // NaN is always recorded
            check_.value = v;
            std::ostringstream os;
            where(os);
            check_.worst = os.str();
        }
    }

    SuiteCheck take() { return std::move(check_); }

private:
    SuiteCheck check_;
};

inline double mixed(const Residual<double>& r) { return std::fabs(r.value) / (1.0 + r.scale); }

} // namespace detail

constexpr double residual_tolerance = 1e-10;
constexpr double discrete_orthonormality_tolerance = 1e-10;
constexpr double continuous_orthonormality_tolerance = 1e-8;
constexpr double commutator_tolerance = 1e-12;
constexpr double duality_tolerance = 1e-12;
constexpr double unitarity_tolerance = 1e-10;
constexpr double spin_half_tolerance = 1e-14;
constexpr double overlap_tolerance = 1e-8;

/// |s| <= 8 for Hermite, (0, 30] for Laguerre, in steps of 1/4.
inline std::vector<double> residual_grid(Family f)
{
    std::vector<double> g;
    if (f == Family::hermite)
        for (int i = -32; i <= 32; ++i)
            g.push_back(0.25 * i);
    else
        for (int i = 1; i <= 120; ++i)
            g.push_back(0.25 * i);
    return g;
}

/// Hermite/Laguerre: the polynomial equation, the self-adjoint function equation,
/// recurrence, raising and lowering as relative residuals; Laguerre adds the alternate bracket
/// as an informational entry. Meixner/Kravchuk: the difference equation on
/// recurrence lattice values and the normalized relations with |value| / (1 + sum |terms|), since symmetric lattice
/// points give exact zeros.
inline SuiteReport residual_suite(const FamilySpec<double>& spec, int n_max = 10, int x_max = 30)
{
    SuiteReport rep{"residuals", to_string(spec.family), describe_parameters(spec), {}};
    const auto seq = build_by_recurrence(spec, n_max);
    auto at = [](int n, double s) { return [=](std::ostream& os) { os << "n=" << n << " point=" << s; }; };

    if (!spec.discrete()) {
        const auto grid = residual_grid(spec.family);
        detail::Worst eq("polynomial-equation", residual_tolerance), fe("function-equation", residual_tolerance),
            rec("recurrence", residual_tolerance), up("raising", residual_tolerance), down("lowering", residual_tolerance),
            shown("alternate-bracket", residual_tolerance, true);
        for (int n = 0; n <= n_max; ++n)
            for (double s : grid) {
                eq.see(equation_residual(spec, seq, n, s).relative(), at(n, s));
                fe.see(function_residual(spec, FunctionRelation::equation, n, s).relative(), at(n, s));
                rec.see(function_residual(spec, FunctionRelation::recurrence, n, s).relative(), at(n, s));
                up.see(function_residual(spec, FunctionRelation::raising, n, s).relative(), at(n, s));
                down.see(function_residual(spec, FunctionRelation::lowering, n, s).relative(), at(n, s));
                if (spec.family == Family::laguerre)
                    shown.see(laguerre_alternate_bracket_residual(spec, n, s).relative(), at(n, s));
            }
        for (auto* w : {&eq, &fe, &rec, &up, &down})
            rep.checks.push_back(w->take());
        if (spec.family == Family::laguerre)
            rep.checks.push_back(shown.take());
        return rep;
    }

    const int top = spec.support.finite() ? static_cast<int>(spec.support.upper) : x_max;
    const int n_top = spec.family == Family::kravchuk ? std::min(n_max, spec.params.N) : n_max;
    detail::Worst eq("equation", residual_tolerance);
    for (int n = 0; n <= n_top; ++n)
        for (int x = 0; x <= top; ++x)
            eq.see(detail::mixed(lattice_equation_residual(spec, n, static_cast<double>(x))), at(n, x));
    rep.checks.push_back(eq.take());
    if (spec.family == Family::meixner) {
        const char* names[] = {"difference-equation", "recurrence", "raising", "lowering"};
        const LatticeRelation rels[] = {LatticeRelation::difference, LatticeRelation::recurrence, LatticeRelation::raising, LatticeRelation::lowering};
        for (int r = 0; r < 4; ++r) {
            detail::Worst w(names[r], residual_tolerance);
            for (int n = 0; n <= n_max; ++n)
                for (int x = 0; x <= top; ++x)
                    w.see(detail::mixed(meixner_relation_residual(spec, rels[r], n, x)), at(n, x));
            rep.checks.push_back(w.take());
        }
    } else {
        detail::Worst up("raising", residual_tolerance), down("lowering", residual_tolerance);
        for (int n = 0; n <= n_top; ++n)
            for (int x = 0; x <= top; ++x) {
                up.see(detail::mixed(kravchuk_ladder_residual(spec, LatticeRelation::raising, n, x)), at(n, x));
                down.see(detail::mixed(kravchuk_ladder_residual(spec, LatticeRelation::lowering, n, x)), at(n, x));
            }
        rep.checks.push_back(up.take());
        rep.checks.push_back(down.take());
    }
    return rep;
}

/// max |<psi_a, psi_b> - delta_ab|, a, b <= n_max.
inline SuiteReport orthogonality_suite(const FamilySpec<double>& spec, int n_max = 10)
{
    SuiteReport rep{"orthogonality", to_string(spec.family), describe_parameters(spec), {}};
    if (spec.family == Family::kravchuk)
        n_max = std::min(n_max, spec.params.N);
    const double tol = spec.discrete() ? discrete_orthonormality_tolerance : continuous_orthonormality_tolerance;
    detail::Worst w("orthonormality", tol);
    const auto g = orthonormality_matrix(spec, n_max);
    for (int a = 0; a <= n_max; ++a)
        for (int b = 0; b <= n_max; ++b)
            w.see(std::fabs(g(a, b) - (a == b ? 1.0 : 0.0)),
                  [&](std::ostream& os) { os << "entry " << a << "," << b; });
    rep.checks.push_back(w.take());
    return rep;
}

inline SuiteCheck algebra_check(const AlgebraCheck& c)
{
    SuiteCheck s{c.relation, c.max_deviation, commutator_tolerance, commutator_tolerance, "", false, to_json(c, commutator_tolerance)};
    std::ostringstream os;
    os << "measured coefficient " << format_double(c.fitted) << " (expected " << format_double(c.expected) << ")";
    s.worst = os.str();
    return s;
}

inline SuiteReport commutator_suite(const FamilySpec<double>& spec, int dim = 12)
{
    SuiteReport rep{"commutators", to_string(spec.family), describe_parameters(spec), {}};
    rep.params.emplace_back("dim", std::to_string(dim));
    for (const auto& c : ladder_algebra(spec, dim))
        rep.checks.push_back(algebra_check(c));
    return rep;
}

inline SuiteReport wigner_commutator_suite(int two_j)
{
    SuiteReport rep{"commutators", "wigner", {{"two_j", std::to_string(two_j)}}, {}};
    for (const auto& c : wigner_algebra(two_j))
        rep.checks.push_back(algebra_check(c));
    return rep;
}

/// beta = 0.3, 0.7, ..., 2.7.
inline std::vector<double> wigner_beta_grid()
{
    std::vector<double> g;
    for (int i = 0; i <= 6; ++i)
        g.push_back(0.3 + 0.4 * i);
    return g;
}

/// Duality, row unitarity and the four d-function relations over every (m, m') for each listed 2j and beta;
/// the spin-1/2 closed form when 2j = 1 is listed; the swapped recurrence reading as information.
inline SuiteReport wigner_suite(const std::vector<int>& two_js, const std::vector<double>& betas)
{
    SuiteReport rep{"wigner", "wigner", {}, {}};
    std::string js;
    for (int t : two_js)
        js += (js.empty() ? "" : ",") + std::to_string(t);
    rep.params.emplace_back("two_j", js);
    std::string bs;
    for (double b : betas)
        bs += (bs.empty() ? "" : ",") + format_double(b);
    rep.params.emplace_back("beta", bs);

    detail::Worst dual("duality", duality_tolerance), unit("row-unitarity", unitarity_tolerance),
        half("spin-half-closed-form", spin_half_tolerance), shown("swapped-recurrence", residual_tolerance, true);
    detail::Worst nd[] = {{"difference-equation", residual_tolerance}, {"recurrence", residual_tolerance},
                          {"raising", residual_tolerance}, {"lowering", residual_tolerance}};
    const LatticeRelation rels[] = {LatticeRelation::difference, LatticeRelation::recurrence, LatticeRelation::raising, LatticeRelation::lowering};
    bool has_half = false;
    for (int J : two_js)
        for (double b : betas) {
            for (int M = -J; M <= J; M += 2) {
                double row = 0.0;
                for (int MP = -J; MP <= J; MP += 2) {
                    const double v = wigner_d(J, M, MP, b);
                    row += v * v;
                    const double sign = ((M - MP) / 2) % 2 == 0 ? 1.0 : -1.0;
                    auto where = [&](std::ostream& os) { os << "2j=" << J << " 2m=" << M << " 2m'=" << MP << " beta=" << b; };
                    dual.see(std::fabs(v - sign * wigner_d(J, MP, M, b)), where);
                    const WignerIndex idx{J, M, MP, b};
                    for (int r = 0; r < 4; ++r)
                        nd[r].see(std::fabs(wigner_relation_residual(rels[r], idx).value), where);
                    shown.see(std::fabs(wigner_relation_residual(LatticeRelation::recurrence, idx, RecurrenceReading::swapped).value), where);
                }
                unit.see(std::fabs(row - 1.0), [&](std::ostream& os) { os << "2j=" << J << " row 2m=" << M << " beta=" << b; });
            }
            if (J == 1) {
                has_half = true;
                const double c = std::cos(0.5 * b), s = std::sin(0.5 * b);
                const double want[2][2] = {{c, -s}, {s, c}}; // rows m = 1/2, -1/2; columns m' = 1/2, -1/2
                for (int r = 0; r < 2; ++r)
                    for (int k = 0; k < 2; ++k)
                        half.see(std::fabs(wigner_d(1, 1 - 2 * r, 1 - 2 * k, b) - want[r][k]),
                                 [&](std::ostream& os) { os << "2m=" << 1 - 2 * r << " 2m'=" << 1 - 2 * k << " beta=" << b; });
            }
        }
    rep.checks.push_back(dual.take());
    rep.checks.push_back(unit.take());
    for (auto& w : nd)
        rep.checks.push_back(w.take());
    if (has_half)
        rep.checks.push_back(half.take());
    rep.checks.push_back(shown.take());
    return rep;
}

/// Radial hydrogen equation on s in [0.1, 30] and the s^-1 weighted overlaps.
inline SuiteReport hydrogen_suite(const std::vector<std::pair<int, int>>& states)
{
    SuiteReport rep{"residuals", "hydrogen", {}, {}};
    detail::Worst res("radial-equation", residual_tolerance), ovl("weighted-overlap", overlap_tolerance);
    for (auto [n, l] : states)
        for (int i = 0; i <= 299; ++i) {
            const double s = 0.1 + 0.1 * i;
            res.see(hydrogen_residual(n, l, s).relative(),
                    [&](std::ostream& os) { os << "n=" << n << " l=" << l << " s=" << s; });
        }
    for (auto [na, la] : states)
        for (auto [nb, lb] : states)
            if (la == lb && na < nb)
                ovl.see(std::fabs(hydrogen_overlap(na, nb, la)),
                        [&](std::ostream& os) { os << "n=" << na << "," << nb << " l=" << la; });
    rep.checks.push_back(res.take());
    rep.checks.push_back(ovl.take());
    return rep;
}

} // namespace ladderpoly
