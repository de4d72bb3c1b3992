// ladderpoly: tabulate, check, limits and export front end.
// Exit codes: 0 success, 1 check failure, 2 usage error, 3 I/O error.

#include "ladderpoly/ladderpoly.hpp"
#include "ladderpoly/suites.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace ladderpoly;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_io = 3;

struct io_error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct Options
{
    std::string family = "hermite";
    std::string alpha = "0";
    std::string p = "1/2";
    int N = 4;
    std::string gamma = "1";
    std::string mu = "1/2";
    std::string j;
    std::string beta;
    std::optional<int> nmax;
    std::string grid;
    std::string format = "csv";
    std::string out;
    std::optional<double> tolerance;
    int dim = 12;
    std::string op = "raise";
    // limits
    int n = 0;
    std::string h = "0.1,0.05,0.025,0.0125,0.00625";
    std::string sizes = "16,64,256,1024";
    double window = 3.0;
};

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty())
            out.push_back(item);
    return out;
}

std::vector<double> parse_list(const std::string& text)
{
    std::vector<double> out;
    for (const auto& s : split(text, ','))
        out.push_back(parse_double(s));
    return out;
}

/// "a:b:step" or a comma list.
std::vector<double> parse_grid(const std::string& text)
{
    const auto parts = split(text, ':');
    if (parts.size() == 3 && text.find(',') == std::string::npos) {
        const double a = parse_double(parts[0]), b = parse_double(parts[1]), step = parse_double(parts[2]);
        if (!(step > 0.0) || b < a)
            throw std::invalid_argument("grid: need a <= b and step > 0");
        std::vector<double> g;
        const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9));
        for (long i = 0; i <= count; ++i)
            g.push_back(a + static_cast<double>(i) * step);
        return g;
    }
    return parse_list(text);
}

bool is_wigner(const Options& o) { return o.family == "wigner"; }

bool exact_parameters(const Options& o)
{
    switch (family_from_string(o.family)) {
    case Family::hermite: return true;
    case Family::laguerre: return looks_rational(o.alpha);
    case Family::kravchuk: return looks_rational(o.p);
    case Family::meixner: return looks_rational(o.gamma) && looks_rational(o.mu);
    }
    return false;
}

template <Scalar T>
FamilySpec<T> make_spec(const Options& o)
{
    auto num = [](const std::string& s) -> T {
        if constexpr (is_exact_v<T>)
            return parse_rational(s);
        else
            return parse_double(s);
    };
    switch (family_from_string(o.family)) {
    case Family::hermite: return make_hermite<T>();
    case Family::laguerre: return make_laguerre<T>(num(o.alpha));
    case Family::kravchuk: return make_kravchuk<T>(num(o.p), o.N);
    case Family::meixner: return make_meixner<T>(num(o.gamma), num(o.mu));
    }
    throw invalid_parameter("unknown family: " + o.family);
}

std::vector<double> default_grid(const FamilySpec<double>& spec)
{
    switch (spec.family) {
    case Family::hermite: return parse_grid("-4:4:0.5");
    case Family::laguerre: return parse_grid("0.5:10:0.5");
    case Family::kravchuk: return parse_grid("0:" + std::to_string(spec.params.N) + ":1");
    case Family::meixner: return parse_grid("0:20:1");
    }
    return {};
}

std::string spin_text(int twice)
{
    return twice % 2 == 0 ? std::to_string(twice / 2) : std::to_string(twice) + "/2";
}

void emit(const Options& o, const std::string& text)
{
    if (o.out.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
    if (!f)
        throw io_error("cannot open output file: " + o.out);
    f << text;
    f.close();
    if (!f)
        throw io_error("cannot write output file: " + o.out);
}

void emit_table(const Options& o, const CsvWriter& table, Json meta)
{
    if (o.format == "json") {
        meta["table"] = table.to_json();
        emit(o, meta.dump(2) + "\n");
        return;
    }
    std::ostringstream os;
    table.write(os);
    emit(o, os.str());
}

// --- tabulate -------------------------------------------------------------------

int run_tabulate(const Options& o)
{
    if (is_wigner(o)) {
        const int two_j = parse_twice_spin(o.j.empty() ? "1" : o.j);
        const auto betas = o.beta.empty() ? std::vector<double>{1.0} : parse_list(o.beta);
        CsvWriter t({"j", "m", "m'", "beta", "value"});
        t.comment("Wigner d^j_{m,m'}(beta), rows m = j..-j, columns m' = j..-j");
        for (double b : betas)
            for (int M = two_j; M >= -two_j; M -= 2)
                for (int MP = two_j; MP >= -two_j; MP -= 2)
                    t.row().cell(spin_text(two_j)).cell(spin_text(M)).cell(spin_text(MP)).cell(b).cell(wigner_d(two_j, M, MP, b));
        emit_table(o, t, Json{{"command", "tabulate"}, {"family", "wigner"}, {"two_j", two_j}});
        return exit_ok;
    }
    const auto spec = make_spec<double>(o);
    int n_max = o.nmax.value_or(4);
    if (n_max < 0)
        throw std::invalid_argument("--nmax must be >= 0");
    if (spec.family == Family::kravchuk && n_max > spec.params.N)
        throw invalid_parameter("--nmax exceeds N for kravchuk");
    const auto grid = o.grid.empty() ? default_grid(spec) : parse_grid(o.grid);
    for (double x : grid)
        weight(spec, x); // rejects points outside the support
    CsvWriter t({"family", "n", "point", "P_value", "psi_value"});
    t.comment("P_n by three-term recurrence (P_0 = 1); psi_n = sqrt(rho) P_n / d_n");
    for (int n = 0; n <= n_max; ++n)
        for (double x : grid) {
            const auto pv = evaluate_by_recurrence(spec, n, x);
            t.row().cell(to_string(spec.family)).cell(n).cell(x).cell(pv[n]).cell(psi(spec, n, x));
        }
    const auto params = exact_parameters(o) ? describe_parameters(make_spec<Rational>(o)) : describe_parameters(spec);
    emit_table(o, t, Json{{"command", "tabulate"}, {"family", to_string(spec.family)}, {"params", params_json(params)}});
    return exit_ok;
}

// --- check ----------------------------------------------------------------------

std::vector<Options> expand_families(const Options& o, bool with_wigner)
{
    if (o.family != "all")
        return {o};
    std::vector<Options> out;
    Options h = o;
    h.family = "hermite";
    out.push_back(h);
    for (const char* a : {"0", "1/2", "2"}) {
        Options l = o;
        l.family = "laguerre";
        l.alpha = a;
        out.push_back(l);
    }
    for (int N : {4, 8, 16}) {
        Options k = o;
        k.family = "kravchuk";
        k.p = "1/2";
        k.N = N;
        out.push_back(k);
    }
    for (const char* g : {"1", "2", "3"})
        for (const char* m : {"1/4", "1/2"}) {
            Options x = o;
            x.family = "meixner";
            x.gamma = g;
            x.mu = m;
            out.push_back(x);
        }
    if (with_wigner) {
        Options w = o;
        w.family = "wigner";
        out.push_back(w);
    }
    return out;
}

std::vector<int> wigner_spins(const Options& o)
{
    if (!o.j.empty())
        return {parse_twice_spin(o.j)};
    std::vector<int> all;
    for (int t = 1; t <= 12; ++t)
        all.push_back(t);
    return all;
}

int finish_suites(const Options& o, const std::string& suite, std::vector<SuiteReport> reports)
{
    bool ok = true;
    Json arr = Json::array();
    for (auto& r : reports) {
        if (o.tolerance)
            r.override_tolerance(*o.tolerance);
        ok = ok && r.passed();
        arr.push_back(to_json(r));
    }
    Json j{{"command", "check"}, {"suite", suite}, {"status", ok ? "pass" : "fail"}, {"reports", arr}};
    emit(o, j.dump(2) + "\n");
    return ok ? exit_ok : exit_check_failed;
}

int run_check_certify(const Options& o)
{
    bool ok = true;
    Json arr = Json::array();
    for (const auto& f : expand_families(o, false)) {
        if (is_wigner(f) || f.family == "hydrogen")
            throw invalid_parameter("certify applies to polynomial families");
        Json entry;
        if (exact_parameters(f)) {
            const auto spec = make_spec<Rational>(f);
            const int n_max = f.nmax.value_or(spec.family == Family::kravchuk ? spec.params.N : 10);
            auto rep = certify_family(spec, n_max);
            const auto drift = float_drift(spec, n_max, default_drift_grid(spec));
            CertificateCheck d{"float-drift", drift.max_drift < 1e-12, CheckMode::floating, std::nullopt,
                               drift.max_drift, 1e-12};
            if (o.tolerance)
                d.passed = drift.max_drift <= *o.tolerance;
            if (!d.passed)
                d.first_failure = "n=" + std::to_string(drift.worst_n);
            rep.checks.push_back(d);
            entry = to_json(rep);
            entry["drift"] = to_json(drift);
            ok = ok && rep.passed();
        } else {
            const auto spec = make_spec<double>(f);
            const int n_max = f.nmax.value_or(spec.family == Family::kravchuk ? spec.params.N : 10);
            auto rep = certify_family_float(spec, n_max, o.tolerance.value_or(1e-9));
            entry = to_json(rep);
            entry["note"] = "decimal parameters: float-only certification; give num/den for exact";
            ok = ok && rep.passed();
        }
        arr.push_back(entry);
    }
    Json j{{"command", "check"}, {"suite", "certify"}, {"status", ok ? "pass" : "fail"}, {"reports", arr}};
    emit(o, j.dump(2) + "\n");
    return ok ? exit_ok : exit_check_failed;
}

int run_check(const std::string& suite, const Options& o)
{
    if (suite == "certify")
        return run_check_certify(o);
    std::vector<SuiteReport> reports;
    const auto betas = o.beta.empty() ? wigner_beta_grid() : parse_list(o.beta);
    for (const auto& f : expand_families(o, true)) {
        if (f.family == "hydrogen") {
            if (suite != "residuals")
                throw invalid_parameter("hydrogen supports the residuals suite only");
            reports.push_back(hydrogen_suite({{1, 0}, {2, 0}, {2, 1}, {3, 1}}));
            continue;
        }
        if (is_wigner(f)) {
            const auto spins = wigner_spins(f);
            if (suite == "commutators")
                for (int t : spins)
                    reports.push_back(wigner_commutator_suite(t));
            else
                reports.push_back(wigner_suite(spins, betas));
            continue;
        }
        const auto spec = make_spec<double>(f);
        if (suite == "residuals")
            reports.push_back(residual_suite(spec, f.nmax.value_or(10)));
        else if (suite == "orthogonality")
            reports.push_back(orthogonality_suite(spec, f.nmax.value_or(10)));
        else if (suite == "commutators")
            reports.push_back(spec.family == Family::kravchuk ? wigner_commutator_suite(spec.params.N)
                                                               : commutator_suite(spec, f.dim));
        else
            throw invalid_parameter("unknown check suite: " + suite);
    }
    return finish_suites(o, suite, std::move(reports));
}

// --- limits ---------------------------------------------------------------------

std::string order_text(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

int run_limits(const std::string& which, const Options& o)
{
    if (o.n < 0)
        throw std::invalid_argument("--n must be >= 0");
    CsvWriter t({"variant", "schedule_param", "n", "sup_error", "rms_error", "fitted_order_so_far"});
    bool monotone = true;
    Json meta{{"command", "limits"}, {"which", which}, {"n", o.n}};
    if (which == "meixner-laguerre") {
        const auto hs = parse_list(o.h);
        if (hs.size() < 4)
            throw std::invalid_argument("schedule needs at least 4 entries");
        const double alpha = parse_double(o.alpha);
        const auto grid = o.grid.empty() ? default_meixner_grid() : parse_grid(o.grid);
        t.comment("Meixner(alpha+1, 1-h) at x = s/h against Laguerre alpha; order = slope of log error vs log h");
        t.comment("raw: m_n(s/h)/n! - L_n(s) exact; normalized: h^-1/2 M_n(s/h) - psi_n(s); recurrence: normalized Meixner three-term relation on Laguerre functions");
        std::vector<MeixnerLaguerreError> rows;
        for (double h : hs)
            rows.push_back(meixner_to_laguerre_error(o.n, alpha, h, grid));
        const char* names[] = {"raw", "normalized", "recurrence"};
        for (int v = 0; v < 3; ++v) {
            std::vector<double> ps, es;
            for (const auto& r : rows) {
                const ErrorMetrics& m = v == 0 ? r.raw : v == 1 ? r.normalized : r.recurrence;
                ps.push_back(r.h);
                es.push_back(m.sup);
                t.row().cell(names[v]).cell(r.h).cell(o.n).cell(m.sup).cell(m.rms).cell(order_text(fit_order(ps, es)));
            }
            monotone = monotone && monotone_decreasing(es);
        }
        meta["alpha"] = alpha;
    } else if (which == "kravchuk-hermite") {
        std::vector<int> sizes;
        for (double v : parse_list(o.sizes))
            sizes.push_back(static_cast<int>(v));
        if (sizes.size() < 4)
            throw std::invalid_argument("schedule needs at least 4 entries");
        KravchukScaling sc;
        sc.p = parse_double(o.p);
        sc.window = o.window;
        t.comment("Kravchuk(p, N) at s = (x - Np)/sqrt(2Npq), |s| <= window, amplitude (2Npq)^(1/4); order = slope of log error vs log(1/N)");
        t.comment("function: amplitude psi^K_n(x) - psi^H_n(s); raising/lowering: normalized Kravchuk ladder relations on Hermite functions");
        std::vector<KravchukHermiteError> rows;
        for (int N : sizes)
            rows.push_back(kravchuk_to_hermite_error(o.n, N, sc));
        const char* names[] = {"function", "raising", "lowering"};
        for (int v = 0; v < 3; ++v) {
            std::vector<double> ps, es;
            for (const auto& r : rows) {
                const ErrorMetrics& m = v == 0 ? r.function : v == 1 ? r.raising : r.lowering;
                ps.push_back(1.0 / r.N);
                es.push_back(m.sup);
                t.row().cell(names[v]).cell(r.N).cell(o.n).cell(m.sup).cell(m.rms).cell(order_text(fit_order(ps, es)));
            }
            monotone = monotone && monotone_decreasing(es);
        }
        Json peaks = Json::array();
        for (const auto& r : rows)
            peaks.push_back(Json{{"N", r.N}, {"peak", r.peak}});
        meta["peaks"] = peaks;
        for (const auto& r : rows)
            t.comment("N=" + std::to_string(r.N) + " rescaled value nearest s=0: " + format_double(r.peak));
    } else {
        throw invalid_parameter("unknown limit: " + which);
    }
    meta["monotone"] = monotone;
    emit_table(o, t, meta);
    return monotone ? exit_ok : exit_check_failed;
}

// --- export ---------------------------------------------------------------------

int run_export(const Options& o)
{
    const LadderOp op = ladder_op_from_string(o.op);
    LadderMatrix m;
    if (is_wigner(o))
        m = wigner_ladder_matrix(parse_twice_spin(o.j.empty() ? "1" : o.j), op);
    else {
        const auto spec = make_spec<double>(o);
        m = ladder_matrix(spec, op, spec.family == Family::kravchuk ? spec.params.N + 1 : o.dim);
    }
    emit(o, to_json(m).dump(2) + "\n");
    return exit_ok;
}

void add_family_options(CLI::App* cmd, Options& o)
{
    cmd->add_option("--family", o.family, "hermite, laguerre, kravchuk, meixner, wigner (check also: all, hydrogen)");
    cmd->add_option("--alpha", o.alpha, "Laguerre alpha (num/den selects exact arithmetic)");
    cmd->add_option("--p", o.p, "Kravchuk p");
    cmd->add_option("--N", o.N, "Kravchuk N");
    cmd->add_option("--gamma", o.gamma, "Meixner gamma");
    cmd->add_option("--mu", o.mu, "Meixner mu");
    cmd->add_option("--j", o.j, "Wigner j, e.g. 1, 3/2");
    cmd->add_option("--beta", o.beta, "Wigner beta list, comma separated");
    cmd->add_option("--nmax", o.nmax, "largest index");
    cmd->add_option("--out", o.out, "output path (default stdout)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Ladder operators of hypergeometric orthogonal polynomials"};
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);
    Options o;
    std::string suite, which;

    auto* tab = app.add_subcommand("tabulate", "value table of P_n and psi_n, or a Wigner d-matrix");
    add_family_options(tab, o);
    tab->add_option("--grid", o.grid, "a:b:step or comma list");
    tab->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* chk = app.add_subcommand("check", "residuals, orthogonality, commutators or certify");
    chk->add_option("suite", suite, "check suite")->required()->check(
        CLI::IsMember({"residuals", "orthogonality", "commutators", "certify"}));
    add_family_options(chk, o);
    chk->add_option("--dim", o.dim, "truncation size for commutators");
    chk->add_option("--tolerance", o.tolerance, "override the default tolerances (defaults stay in the report)");

    auto* lim = app.add_subcommand("limits", "discrete to continuous limit schedules");
    lim->add_option("which", which, "meixner-laguerre or kravchuk-hermite")->required()->check(
        CLI::IsMember({"meixner-laguerre", "kravchuk-hermite"}));
    lim->add_option("--n", o.n, "polynomial index");
    lim->add_option("--alpha", o.alpha, "Laguerre alpha");
    lim->add_option("--h", o.h, "step schedule, comma separated");
    lim->add_option("--N", o.sizes, "size schedule, comma separated");
    lim->add_option("--p", o.p, "Kravchuk p");
    lim->add_option("--window", o.window, "|s| window for kravchuk-hermite");
    lim->add_option("--grid", o.grid, "s grid for meixner-laguerre");
    lim->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    lim->add_option("--out", o.out, "output path (default stdout)");

    auto* exp = app.add_subcommand("export", "truncated ladder matrix as JSON triplets");
    add_family_options(exp, o);
    exp->add_option("--operator", o.op, "raise, lower or diagonal");
    exp->add_option("--dim", o.dim, "truncation size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        if (tab->parsed())
            return run_tabulate(o);
        if (chk->parsed())
            return run_check(suite, o);
        if (lim->parsed())
            return run_limits(which, o);
        if (exp->parsed())
            return run_export(o);
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_check_failed;
    }
    return exit_usage;
}
