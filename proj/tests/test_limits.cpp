#include "ladderpoly/limits.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace ladderpoly;

namespace {

std::vector<double> sup_raw(int n, double alpha, const std::vector<double>& hs)
{
    std::vector<double> out;
    for (double h : hs)
        out.push_back(meixner_to_laguerre_error(n, alpha, h, default_meixner_grid()).raw.sup);
    return out;
}

} // namespace

TEST(MeixnerLaguerre, ConstantCaseIsExact)
{
    for (double h : halving_schedule(0.1, 5))
        EXPECT_EQ(meixner_to_laguerre_error(0, 0.0, h, default_meixner_grid()).raw.sup, 0.0);
}

TEST(MeixnerLaguerre, DegreeOneClosedForm)
{
    // m_1(s/h)/1! - L_1^a(s) = s - s/(1-h), whatever a is
    for (double a : {0.0, 1.5})
        for (double h : halving_schedule(0.1, 5))
            for (double s : default_meixner_grid()) {
                const double e = meixner_to_laguerre_error(1, a, h, {s}).raw.sup;
                EXPECT_NEAR(e, s * h / (1.0 - h), 1e-12) << "a=" << a << " h=" << h << " s=" << s;
            }
}

TEST(MeixnerLaguerre, HalvingStepHalvesDegreeTwoError)
{
    const auto hs = halving_schedule(0.1, 5);
    const auto e = sup_raw(2, 0.0, hs);
    for (std::size_t i = 1; i < e.size(); ++i) {
        EXPECT_GE(e[i - 1] / e[i], 1.8);
        EXPECT_LE(e[i - 1] / e[i], 2.2);
    }
}

TEST(MeixnerLaguerre, FirstOrderConvergenceUpToDegreeFour)
{
    const auto hs = halving_schedule(0.1, 5);
    for (int n = 1; n <= 4; ++n) {
        std::vector<double> raw, norm, rec;
        for (double h : hs) {
            auto e = meixner_to_laguerre_error(n, 0.0, h, default_meixner_grid());
            raw.push_back(e.raw.sup);
            norm.push_back(e.normalized.sup);
            rec.push_back(e.recurrence.sup);
        }
        for (const auto* series : {&raw, &norm, &rec}) {
            EXPECT_TRUE(monotone_decreasing(*series)) << "n=" << n;
            auto order = fit_order(hs, *series);
            ASSERT_TRUE(order.has_value());
            EXPECT_GT(*order, 0.8) << "n=" << n;
            EXPECT_LT(*order, 1.2) << "n=" << n;
        }
        // the relation limit vanishes at the rate of the function limit
        EXPECT_NEAR(*fit_order(hs, rec), *fit_order(hs, norm), 0.2);
    }
}

TEST(MeixnerLaguerre, NormalizedGroundStateAgainstClosedForm)
{
    // h^-1/2 sqrt((1-mu)^g mu^x Gamma(g+x)/(Gamma(x+1)Gamma(g))) at a lattice point, against e^{-s/2} s^{a/2}/sqrt(Gamma(a+1))
    const double a = 1.0, h = 0.0625, s = 2.0;
    const double g = a + 1.0, mu = 1.0 - h, x = s / h;
    const double m0 = std::exp(0.5 * (g * std::log(h) + x * std::log(mu) + std::lgamma(g + x) - std::lgamma(x + 1.0) -
                                      std::lgamma(g)));
    const double l0 = std::exp(-0.5 * s + 0.5 * a * std::log(s) - 0.5 * std::lgamma(a + 1.0));
    const auto e = meixner_to_laguerre_error(0, a, h, {s});
    EXPECT_NEAR(e.normalized.sup, std::fabs(m0 / std::sqrt(h) - l0), 1e-12);
}

TEST(MeixnerLaguerre, InvalidInputs)
{
    EXPECT_THROW(meixner_to_laguerre_error(1, 0.0, 0.0, {1.0}), invalid_parameter);
    EXPECT_THROW(meixner_to_laguerre_error(1, 0.0, 1.0, {1.0}), invalid_parameter);
    EXPECT_THROW(meixner_to_laguerre_error(1, 0.0, 0.1, {0.0}), outside_support);
    EXPECT_THROW(meixner_to_laguerre_error(1, 0.0, 1e-7, {1.0}), degenerate_parameter);
}

TEST(KravchukHermite, MonotoneAlongSizeSchedule)
{
    const std::vector<int> sizes{16, 64, 256, 1024};
    for (int n = 0; n <= 4; ++n) {
        std::vector<double> inv, f, r, l;
        for (int N : sizes) {
            auto e = kravchuk_to_hermite_error(n, N);
            inv.push_back(1.0 / N);
            f.push_back(e.function.sup);
            r.push_back(e.raising.sup);
            l.push_back(e.lowering.sup);
        }
        EXPECT_TRUE(monotone_decreasing(f)) << n;
        EXPECT_TRUE(monotone_decreasing(r)) << n;
        EXPECT_TRUE(monotone_decreasing(l)) << n;
        if (n == 2) {
            auto order = fit_order(inv, f);
            ASSERT_TRUE(order.has_value());
            EXPECT_GT(*order, 0.4);
        }
    }
}

TEST(KravchukHermite, PeakAgainstBinomialWeight)
{
    for (int N : {256, 1024}) {
        auto e = kravchuk_to_hermite_error(0, N);
        // (2Npq)^{1/4} sqrt(C(N, N/2) 2^-N), from exact binomial log-weights
        const double log_w = std::lgamma(N + 1.0) - 2.0 * std::lgamma(N / 2.0 + 1.0) - N * std::log(2.0);
        const double oracle = std::pow(N / 2.0, 0.25) * std::exp(0.5 * log_w);
        EXPECT_NEAR(e.peak, oracle, 1e-12);
        EXPECT_NEAR(e.peak, std::pow(std::numbers::pi, -0.25), 0.02 * std::pow(std::numbers::pi, -0.25));
    }
    EXPECT_NEAR(kravchuk_to_hermite_error(0, 1024).peak, std::pow(std::numbers::pi, -0.25),
                0.01 * std::pow(std::numbers::pi, -0.25));
}

TEST(KravchukHermite, WindowCoversSymmetricLattice)
{
    auto e = kravchuk_to_hermite_error(0, 64);
    // x = 32 +- 3*sqrt(32) -> 15..49
    EXPECT_EQ(e.points, 33);
    EXPECT_THROW(kravchuk_to_hermite_error(16, 16), std::invalid_argument);
}

TEST(OrderFit, RecoversPowerLaw)
{
    const auto hs = halving_schedule(0.1, 6);
    std::vector<double> e;
    for (double h : hs)
        e.push_back(3.0 * h * h);
    EXPECT_NEAR(*fit_order(hs, e), 2.0, 1e-12);
    EXPECT_FALSE(fit_order({0.1}, {1.0}).has_value());
    EXPECT_FALSE(fit_order(hs, std::vector<double>(hs.size(), 0.0)).has_value());
}

TEST(OrderFit, Monotonicity)
{
    EXPECT_TRUE(monotone_decreasing({3.0, 2.0, 1.0}));
    EXPECT_FALSE(monotone_decreasing({3.0, 3.0, 1.0}));
    EXPECT_TRUE(monotone_decreasing({0.0, 0.0}));
    EXPECT_FALSE(monotone_decreasing({0.0, 1.0}));
}
