// Acceptance gate: one PASS/FAIL line per criterion.
//   acceptance            run every criterion
//   acceptance 3 6        run the listed ones
// Exit status is 0 only when every selected criterion passes.

#include "ladderpoly/ladderpoly.hpp"
#include "ladderpoly/suites.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace ladderpoly;

namespace {

struct Outcome
{
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            pass = false;
            notes.push_back("violated: " + what);
        }
    }
    void note(const std::string& s) { notes.push_back(s); }
};

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

Rational q(long n, long d) { return scalar_from<Rational>(n, d); }

// independent closed forms for the squared norms, written out from factorials
Rational binomial(int n, int k)
{
    Rational r(1);
    for (int i = 1; i <= k; ++i)
        r = Rational(r * Rational(n - k + i) / Rational(i));
    return r;
}

Rational kravchuk_norm(Rational p, int N, int n)
{
    Rational pq = p * (Rational(1) - p), r = binomial(N, n);
    for (int i = 0; i < n; ++i)
        r = Rational(r * pq);
    return r;
}

Rational meixner_norm(Rational g, Rational mu, int n)
{
    Rational r(1);
    for (int i = 0; i < n; ++i)
        r = Rational(r * Rational(i + 1) * (g + Rational(i)) / mu);
    return r;
}

/// sum_x rho(x) P_n(x)^2 / sum_x rho(x) over 0..x_max with rho(x) = (g)_x mu^x / x!, exact partial sums.
double meixner_norm_by_series(const FamilySpec<Rational>& spec, const Polynomial<Rational>& p, int x_max)
{
    const Rational g = spec.params.gamma, mu = spec.params.mu;
    Rational w(1), num(0), den(0);
    for (int x = 0; x <= x_max; ++x) {
        const Rational v = p(Rational(x));
        num += w * v * v;
        den += w;
        w = Rational(w * (g + Rational(x)) * mu / Rational(x + 1));
    }
    return to_double(Rational(num / den));
}

bool failing(const SuiteReport& r, Outcome& out)
{
    bool ok = true;
    for (const auto& c : r.checks)
        if (!c.passed()) {
            ok = false;
            out.note(r.family + " " + c.name + " = " + sci(c.value) + " > " + sci(c.tolerance) + " (" + c.worst + ")");
        }
    return !ok;
}

// 1 ------------------------------------------------------------------------------
Outcome exact_certification()
{
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    for (int N : {4, 8, 16}) {
        const auto spec = make_kravchuk<Rational>(q(1, 2), N);
        const auto rep = certify_family(spec, N);
        out.require(rep.passed(), "kravchuk N=" + std::to_string(N) + ": " + rep.first_failure().value_or(""));
        // direct lattice sum against the factorial closed form
        const auto g = relative_gram_matrix(spec, build_by_raising(spec, N));
        for (int n = 0; n <= N; ++n)
            out.require(g(n, n) == kravchuk_norm(q(1, 2), N, n),
                        "kravchuk N=" + std::to_string(N) + " d_" + std::to_string(n) + "^2 closed form");
    }
    for (int gm : {1, 2, 3})
        for (long d : {4, 2}) {
            const auto spec = make_meixner<Rational>(Rational(gm), q(1, d));
            const std::string tag = "meixner gamma=" + std::to_string(gm) + " mu=1/" + std::to_string(d);
            const auto rep = certify_family(spec, 10);
            out.require(rep.passed(), tag + ": " + rep.first_failure().value_or(""));
            const auto raised = build_by_raising(spec, 10);
            const auto g = relative_gram_matrix(spec, raised);
            for (int n = 0; n <= 10; ++n) {
                const Rational want = meixner_norm(Rational(gm), q(1, d), n);
                out.require(g(n, n) == want, tag + " d_" + std::to_string(n) + "^2 closed form");
                // truncated series: tail below mu^400
                const double series = meixner_norm_by_series(spec, raised[n], 400);
                out.require(std::fabs(series / to_double(want) - 1.0) < 1e-12, tag + " series norm n=" + std::to_string(n));
            }
        }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.require(secs < 30.0, "runtime < 30 s");
    out.note("9 configurations, " + sci(secs) + " s");
    return out;
}

// 2 ------------------------------------------------------------------------------
Outcome continuous_residuals()
{
    Outcome out;
    double worst = 0.0;
    std::vector<FamilySpec<double>> specs{make_hermite<double>(), make_laguerre<double>(0.0),
                                          make_laguerre<double>(0.5), make_laguerre<double>(2.0)};
    for (const auto& spec : specs) {
        const auto rep = residual_suite(spec, 10);
        for (const auto& c : rep.checks)
            if (c.name == "polynomial-equation" || c.name == "function-equation") {
                worst = std::max(worst, c.value);
                out.require(c.value < 1e-10, rep.family + " " + c.name + " = " + sci(c.value) + " at " + c.worst);
            }
    }
    out.note("worst relative residual " + sci(worst));
    return out;
}

// 3 ------------------------------------------------------------------------------
Outcome wigner_properties()
{
    Outcome out;
    std::vector<int> js;
    for (int t = 1; t <= 12; ++t)
        js.push_back(t);
    const auto rep = wigner_suite(js, wigner_beta_grid());
    out.require(!failing(rep, out), "all Wigner checks within tolerance");
    for (const auto& c : rep.checks)
        if (!c.informational)
            out.note(c.name + " " + sci(c.value));
    return out;
}

// 4 ------------------------------------------------------------------------------
Outcome algebra_closure()
{
    Outcome out;
    int held = 0, total = 0;
    auto see = [&](const std::string& where, const AlgebraCheck& c) {
        const bool ok = c.holds(commutator_tolerance);
        held += ok;
        ++total;
        out.require(ok, where + " " + c.relation + ": max deviation " + sci(c.max_deviation) +
                            ", measured coefficient " + format_double(c.fitted) + " vs " + format_double(c.expected));
    };
    for (int t = 1; t <= 12; ++t)
        for (const auto& c : wigner_algebra(t))
            see("wigner 2j=" + std::to_string(t), c);
    for (const auto& c : ladder_algebra(make_hermite<double>(), 12))
        see("hermite", c);
    for (double a : {0.0, 0.5, 2.0})
        for (const auto& c : ladder_algebra(make_laguerre<double>(a), 12))
            see("laguerre alpha=" + format_double(a), c);
    for (double g : {1.0, 2.0, 3.0})
        for (double m : {0.25, 0.5})
            for (const auto& c : ladder_algebra(make_meixner<double>(g, m), 12))
                see("meixner gamma=" + format_double(g) + " mu=" + format_double(m), c);
    out.note(std::to_string(held) + " of " + std::to_string(total) + " relations hold");
    return out;
}

// 5 ------------------------------------------------------------------------------
Outcome ladder_construction()
{
    Outcome out;
    double worst = 0.0;
    auto compare = [&](const FamilySpec<double>& spec, const std::vector<double>& pts, const std::string& tag) {
        for (int n = 0; n <= 10; ++n) {
            const auto ladder = build_by_ladder(spec, n, pts);
            const auto direct = tabulate_state(spec, n, pts);
            double sup = 0.0;
            for (std::size_t i = 0; i < pts.size(); ++i)
                sup = std::max(sup, std::fabs(ladder.values[i] - direct.values[i]));
            worst = std::max(worst, sup);
            out.require(sup < 1e-9, tag + " n=" + std::to_string(n) + " sup " + sci(sup));
        }
    };
    compare(make_hermite<double>(), residual_grid(Family::hermite), "hermite");
    for (double a : {0.0, 1.0})
        compare(make_laguerre<double>(a), residual_grid(Family::laguerre), "laguerre alpha=" + format_double(a));
    std::vector<double> lattice;
    for (int x = 0; x <= 40; ++x)
        lattice.push_back(x);
    compare(make_meixner<double>(1.0, 0.5), lattice, "meixner");
    out.note("worst sup difference " + sci(worst));
    return out;
}

// 6 ------------------------------------------------------------------------------
Outcome limits()
{
    Outcome out;
    const auto grid = default_meixner_grid();
    const auto hs = halving_schedule(0.1, 5);
    double closed = 0.0;
    for (double h : hs)
        for (double s : grid)
            closed = std::max(closed, std::fabs(meixner_to_laguerre_error(1, 0.0, h, {s}).raw.sup - s * h / (1.0 - h)));
    out.require(closed < 1e-12, "n=1 closed form s h/(1-h), deviation " + sci(closed));

    std::string orders;
    for (int n = 0; n <= 4; ++n) {
        std::vector<double> raw, norm;
        for (double h : hs) {
            const auto e = meixner_to_laguerre_error(n, 0.0, h, grid);
            raw.push_back(e.raw.sup);
            norm.push_back(e.normalized.sup);
        }
        const auto on = fit_order(hs, norm);
        out.require(monotone_decreasing(norm) && !std::count(norm.begin(), norm.end(), 0.0),
                    "meixner normalized n=" + std::to_string(n) + " strictly decreasing");
        out.require(on && *on >= 0.8 && *on <= 1.2, "meixner normalized n=" + std::to_string(n) + " order in [0.8, 1.2]");
        orders += " " + (on ? sci(*on) : std::string("-"));
        if (n > 0) {
            const auto orw = fit_order(hs, raw);
            out.require(monotone_decreasing(raw) && !std::count(raw.begin(), raw.end(), 0.0),
                        "meixner raw n=" + std::to_string(n) + " strictly decreasing");
            out.require(orw && *orw >= 0.8 && *orw <= 1.2, "meixner raw n=" + std::to_string(n) + " order in [0.8, 1.2]");
        }
    }
    out.note("meixner normalized orders n=0..4:" + orders);

    double peak = 0.0;
    for (int n = 0; n <= 2; ++n) {
        std::vector<double> f, up, down;
        for (int N : {16, 64, 256, 1024}) {
            const auto e = kravchuk_to_hermite_error(n, N);
            f.push_back(e.function.sup);
            up.push_back(e.raising.sup);
            down.push_back(e.lowering.sup);
            if (n == 0 && N == 1024)
                peak = e.peak;
        }
        const std::string tag = "kravchuk n=" + std::to_string(n);
        out.require(monotone_decreasing(f) && f.back() > 0.0, tag + " function error strictly decreasing");
        out.require(monotone_decreasing(up) && monotone_decreasing(down), tag + " ladder residuals decreasing");
    }
    const double target = std::pow(std::numbers::pi, -0.25);
    out.require(std::fabs(peak / target - 1.0) < 0.01, "N=1024 peak within 1% of pi^-1/4");
    out.note("N=1024 peak " + format_double(peak) + " vs " + format_double(target));
    return out;
}

// 7 ------------------------------------------------------------------------------
Outcome hydrogen()
{
    Outcome out;
    const auto rep = hydrogen_suite({{1, 0}, {2, 0}, {2, 1}, {3, 1}});
    out.require(!failing(rep, out), "radial equation < 1e-10 and weighted overlaps < 1e-8");
    for (const auto& c : rep.checks)
        out.note(c.name + " " + sci(c.value));
    return out;
}

// 8 ------------------------------------------------------------------------------
Outcome float_drift_bound()
{
    Outcome out;
    double worst = 0.0;
    auto run = [&](const FamilySpec<Rational>& spec, int n_max, const std::string& tag) {
        const auto d = float_drift(spec, n_max, default_drift_grid(spec));
        worst = std::max(worst, d.max_drift);
        out.require(d.max_drift < 1e-12, tag + " drift " + sci(d.max_drift));
    };
    for (int N : {4, 8, 16})
        run(make_kravchuk<Rational>(q(1, 2), N), N, "kravchuk N=" + std::to_string(N));
    for (int g : {1, 2, 3})
        for (long d : {4, 2})
            run(make_meixner<Rational>(Rational(g), q(1, d)), 10,
                "meixner gamma=" + std::to_string(g) + " mu=1/" + std::to_string(d));
    out.note("worst drift " + sci(worst));
    return out;
}

// 9 ------------------------------------------------------------------------------
std::pair<int, std::string> capture(const std::string& args)
{
    const std::string cmd = std::string(LADDERPOLY_CLI) + " " + args + " 2>&1";
    std::string text;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return {-1, text};
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
        text.append(buf, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text};
}

Outcome determinism()
{
    Outcome out;
    const char* commands[] = {
        "tabulate --family kravchuk --p 1/2 --N 4 --nmax 4",
        "tabulate --family hermite --grid -4:4:0.5 --nmax 3",
        "tabulate --family laguerre --alpha 1/2 --format json",
        "tabulate --family meixner --gamma 2 --mu 1/3",
        "tabulate --family wigner --j 3/2 --beta 0.3,1.1,2.7",
        "check certify --family all",
        "check residuals --family all",
        "check orthogonality --family all",
        "check commutators --family all",
        "check residuals --family hydrogen",
        "limits meixner-laguerre --n 2 --alpha 0",
        "limits kravchuk-hermite --n 1",
    };
    for (const char* c : commands) {
        const auto a = capture(c), b = capture(c);
        out.require(a.first == b.first && a.second == b.second && !a.second.empty(), std::string("byte-identical: ") + c);
    }
    out.note(std::to_string(std::size(commands)) + " commands run twice");
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"exact certification", exact_certification},
        {"continuous residuals", continuous_residuals},
        {"wigner suite", wigner_properties},
        {"algebra closure", algebra_closure},
        {"ladder construction", ladder_construction},
        {"limits", limits},
        {"hydrogen", hydrogen},
        {"float drift", float_drift_bound},
        {"determinism", determinism},
    };
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        const int k = std::atoi(argv[i]);
        if (k < 1 || k > static_cast<int>(criteria.size())) {
            std::cerr << "unknown criterion: " << argv[i] << '\n';
            return 2;
        }
        selected.push_back(k);
    }
    if (selected.empty())
        for (int k = 1; k <= static_cast<int>(criteria.size()); ++k)
            selected.push_back(k);

    bool all = true;
    for (int k : selected) {
        Outcome o;
        try {
            o = criteria[k - 1].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.note(std::string("exception: ") + e.what());
        }
        all = all && o.pass;
        std::cout << "criterion " << k << " (" << criteria[k - 1].first << "): " << (o.pass ? "PASS" : "FAIL") << '\n';
        for (const auto& n : o.notes)
            std::cout << "    " << n << '\n';
    }
    return all ? 0 : 1;
}
