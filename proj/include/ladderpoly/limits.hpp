#pragma once

// Discrete -> continuous limits: Meixner(alpha+1, 1-h) at x = s/h against Laguerre,
// and Kravchuk(p, N) at x = Np + sqrt(2Npq) s against Hermite.

#include "ladderpoly/normalized.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ladderpoly {

struct ErrorMetrics
{
    double sup = 0.0;
    double rms = 0.0;
};

inline ErrorMetrics error_metrics(const std::vector<double>& errors)
{
    ErrorMetrics m;
    if (errors.empty())
        return m;
    double sq = 0.0;
    for (double e : errors) {
        m.sup = std::max(m.sup, std::fabs(e));
        sq += e * e;
    }
    m.rms = std::sqrt(sq / static_cast<double>(errors.size()));
    return m;
}

/// Meixner -> Laguerre at one step h.
///   raw         m_n(s/h)/n! - L_n^alpha(s), exact rational evaluation
///   normalized  h^amplitude_power M_n(s/h) - psi_n^alpha(s), M_n interpolated between lattice points
///   recurrence  the normalized three-term relation of Meixner (mu = 1-h, x = s/h)
///               applied to the Laguerre functions; tends to the Laguerre relation
struct MeixnerLaguerreError
{
    double h = 0.0;
    int n = 0;
    ErrorMetrics raw;
    ErrorMetrics normalized;
    ErrorMetrics recurrence;
};

struct MeixnerScaling
{
    double amplitude_power = -0.5;
    /// largest lattice point reachable before the float tail-summation limit
    double horizon = 2.0e6;
};

inline std::vector<double> default_meixner_grid()
{
    std::vector<double> g;
    for (int i = 1; i <= 20; ++i)
        g.push_back(0.5 * i);
    return g;
}

inline MeixnerLaguerreError meixner_to_laguerre_error(int n, double alpha, double h, const std::vector<double>& s_grid,
                                                      const MeixnerScaling& scaling = {})
{
    if (!(h > 0.0 && h < 1.0))
        throw invalid_parameter("meixner->laguerre: h must lie in (0,1)");
    if (n < 0)
        throw std::invalid_argument("meixner->laguerre: n must be >= 0");
    for (double s : s_grid) {
        if (!(s > 0.0))
            throw outside_support("meixner->laguerre: grid points must be > 0");
        if (s / h > scaling.horizon)
            throw degenerate_parameter("meixner->laguerre: s/h exceeds the tail-truncation horizon");
    }
    const Rational hq = exact_rational(h);
    const Rational aq = exact_rational(alpha);
    const auto mq = make_meixner<Rational>(aq + Rational(1), Rational(1) - hq);
    const auto lq = make_laguerre<Rational>(aq);
    const auto mseq = build_by_recurrence(mq, n);
    const auto lseq = build_by_recurrence(lq, n);
    Rational fact(1);
    for (int k = 2; k <= n; ++k)
        fact *= Rational(k);

    const auto md = make_meixner<double>(alpha + 1.0, 1.0 - h);
    const auto ld = make_laguerre<double>(alpha);
    const double amp = std::pow(h, scaling.amplitude_power);
    const double mu = 1.0 - h, g = alpha + 1.0, nn = n;

    std::vector<double> raw, norm, rec;
    for (double s : s_grid) {
        const Rational sq = exact_rational(s);
        raw.push_back(to_double(Rational(mseq[n](sq / hq) / fact - lseq[n](sq))));

        const double x = s / h;
        const double x0 = std::floor(x), t = x - x0;
        const double mval = (1.0 - t) * psi(md, n, x0) + (t == 0.0 ? 0.0 : t * psi(md, n, x0 + 1.0));
        const auto lv = psi_all(ld, n + 1, s);
        norm.push_back(amp * mval - lv[n]);

        const double below = n > 0 ? lv[n - 1] : 0.0;
        rec.push_back(std::sqrt(mu * (g + nn) * (nn + 1.0)) * lv[n + 1] + std::sqrt(mu * nn * (nn + g - 1.0)) * below -
                      (mu * (x + nn + g) - x + nn) * lv[n]);
    }
    return {h, n, error_metrics(raw), error_metrics(norm), error_metrics(rec)};
}

/// Kravchuk -> Hermite at one N. s_x = (x - Np)/sqrt(2Npq) over lattice points with
/// |s_x| <= window; function error is amplitude * psi^K_n(x) - psi^H_n(s_x).
/// raising/lowering plug the Hermite functions into the normalized Kravchuk ladder
/// relations (neighbors at s -+ 1/sqrt(2Npq)) divided by sqrt(Npq); they tend to
/// the Hermite raising/lowering relations.
struct KravchukHermiteError
{
    int N = 0;
    int n = 0;
    ErrorMetrics function;
    ErrorMetrics raising;
    ErrorMetrics lowering;
    double peak = 0.0; ///< amplitude * psi^K_n at the lattice point closest to s = 0
    int points = 0;
};

struct KravchukScaling
{
    double p = 0.5;
    double window = 3.0;
    double amplitude_power = 0.25; ///< amplitude = (2Npq)^power
};

inline KravchukHermiteError kravchuk_to_hermite_error(int n, int N, const KravchukScaling& scaling = {})
{
    if (n < 0 || n >= N)
        throw std::invalid_argument("kravchuk->hermite: n must satisfy 0 <= n < N");
    const double p = scaling.p, q = 1.0 - p;
    const auto kd = make_kravchuk<double>(p, N);
    const auto hd = make_hermite<double>();
    const double var = 2.0 * N * p * q;
    const double width = std::sqrt(var);
    const double amp = std::pow(var, scaling.amplitude_power);
    const double norm = std::sqrt(N * p * q);
    const double center = N * p;
    const double nn = n, NN = N;

    KravchukHermiteError out;
    out.N = N;
    out.n = n;
    std::vector<double> fe, re, le;
    double best = std::numeric_limits<double>::infinity();
    const int lo = std::max(0, static_cast<int>(std::ceil(center - scaling.window * width)));
    const int hi = std::min(N, static_cast<int>(std::floor(center + scaling.window * width)));
    for (int x = lo; x <= hi; ++x) {
        const double s = (x - center) / width;
        if (std::fabs(s) > scaling.window)
            continue;
        const double kv = amp * psi(kd, n, x);
        const auto hv = psi_all(hd, n + 1, s);
        fe.push_back(kv - hv[n]);
        if (std::fabs(s) < best) {
            best = std::fabs(s);
            out.peak = kv;
        }
        const double xx = x;
        const double left = psi(hd, n, s - 1.0 / width);
        const double right = psi(hd, n, s + 1.0 / width);
        const double below = n > 0 ? hv[n - 1] : 0.0;
        re.push_back((std::sqrt(p * q * (nn + 1.0) * (NN - nn)) * hv[n + 1] - p * (xx + nn - NN) * hv[n] -
                      std::sqrt(p * q * xx * (NN - xx + 1.0)) * left) /
                     norm);
        le.push_back((std::sqrt(p * q * nn * (NN - nn + 1.0)) * below - p * (xx + nn - NN) * hv[n] -
                      std::sqrt(p * q * (NN - xx) * (xx + 1.0)) * right) /
                     norm);
    }
    out.points = static_cast<int>(fe.size());
    out.function = error_metrics(fe);
    out.raising = error_metrics(re);
    out.lowering = error_metrics(le);
    return out;
}

/// Slope of log(error) against log(param) by least squares; nullopt when fewer than
/// two positive errors. Pass h for step schedules and 1/N for size schedules.
inline std::optional<double> fit_order(const std::vector<double>& params, const std::vector<double>& errors)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int k = 0;
    for (std::size_t i = 0; i < params.size() && i < errors.size(); ++i) {
        if (!(errors[i] > 0.0) || !(params[i] > 0.0))
            continue;
        const double lx = std::log(params[i]), ly = std::log(errors[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++k;
    }
    if (k < 2)
        return std::nullopt;
    const double den = k * sxx - sx * sx;
    if (den == 0.0)
        return std::nullopt;
    return (k * sxy - sx * sy) / den;
}

/// Strictly decreasing, or identically zero (an exact limit at every step).
inline bool monotone_decreasing(const std::vector<double>& errors)
{
    bool all_zero = true;
    for (double e : errors)
        all_zero = all_zero && e == 0.0;
    if (all_zero)
        return true;
    for (std::size_t i = 1; i < errors.size(); ++i)
        if (!(errors[i] < errors[i - 1]))
            return false;
    return true;
}

/// h_k = h0 * 2^-k, k = 0..count-1.
inline std::vector<double> halving_schedule(double h0, int count)
{
    std::vector<double> out;
    for (int k = 0; k < count; ++k)
        out.push_back(std::ldexp(h0, -k));
    return out;
}

} // namespace ladderpoly
