#include "ladderpoly/family.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace ladderpoly;
using QP = Polynomial<Rational>;

namespace {

FamilySpec<Rational> kravchuk_half_4() { return make_kravchuk<Rational>(Q(1, 2), 4); }
FamilySpec<Rational> meixner_1_half() { return make_meixner<Rational>(Rational(1), Q(1, 2)); }

} // namespace

TEST(FamilyCatalog, KravchukData)
{
    auto k = kravchuk_half_4();
    EXPECT_EQ(k.sigma, (QP{Rational(0), Rational(1)}));
    EXPECT_EQ(k.tau, (QP{Rational(4), Rational(-2)}));
    for (int n = 0; n <= 5; ++n)
        EXPECT_EQ(lambda_n(k, n), Rational(2 * n));
    EXPECT_EQ(lambda_n(k, 3), Rational(6));
}

TEST(FamilyCatalog, HermiteData)
{
    auto h = make_hermite<Rational>();
    EXPECT_EQ(h.sigma, QP{Rational(1)});
    EXPECT_EQ(h.tau, (QP{Rational(0), Rational(-2)}));
    for (int n = 0; n <= 5; ++n)
        EXPECT_EQ(lambda_n(h, n), Rational(2 * n));
}

TEST(FamilyCatalog, MeixnerReconstructedFromDifferenceEquation)
{
    auto m = meixner_1_half();
    EXPECT_EQ(m.sigma, (QP{Rational(0), Rational(1)}));
    EXPECT_EQ(m.tau, (QP{Q(1, 2), Q(-1, 2)}));
    for (int n = 0; n <= 6; ++n)
        EXPECT_EQ(lambda_n(m, n), Q(n, 2));
}

TEST(FamilyCatalog, MeixnerShiftedBackwardCoefficientDisagrees)
{
    // sigma Delta nabla P has backward coefficient sigma(x) = x; the written (x - 1) is not it.
    auto eq = meixner_shifted_backward_equation<Rational>(Rational(2), Q(1, 3));
    auto [sigma, tau] = match_difference_equation(eq);
    EXPECT_NE(eq.backward, sigma);
    EXPECT_EQ(sigma, (QP{Rational(0), Rational(1)}));
    // center(n) = -2 sigma - tau + lambda_n holds for every n
    auto m = make_meixner<Rational>(Rational(2), Q(1, 3));
    for (int n = 0; n <= 5; ++n)
        EXPECT_EQ(eq.center(n), QP::constant(lambda_n(m, n)) - sigma * Rational(2) - tau);
}

TEST(FamilyCatalog, LambdaZeroIsZero)
{
    EXPECT_EQ(lambda_n(make_laguerre<Rational>(Q(3, 2)), 0), Rational(0));
    EXPECT_EQ(lambda_n(meixner_1_half(), 0), Rational(0));
}

TEST(FamilyCatalog, LambdaOverIndexMatchesQuotient)
{
    auto m = make_meixner<Rational>(Rational(3), Q(1, 4));
    for (int k = 1; k <= 10; ++k)
        EXPECT_EQ(lambda_over_index(m, k) * Rational(k), lambda_n(m, k));
}

TEST(FamilyCatalog, TauNKravchuk)
{
    auto k = make_kravchuk<Rational>(Q(1, 3), 7);
    const Rational p(1, 3), q(2, 3);
    for (int n = 0; n <= 4; ++n)
        for (int x = 0; x <= 7; ++x) {
            Rational expected = (Rational(7) * p - Rational(x) - Rational(n)) / q + Rational(n);
            EXPECT_EQ(tau_n(k, n, Rational(x)), expected);
        }
}

TEST(FamilyCatalog, TauNHermiteIndependentOfN)
{
    auto h = make_hermite<Rational>();
    for (int n = 0; n <= 4; ++n)
        EXPECT_EQ(tau_n_polynomial(h, n), h.tau);
}

TEST(FamilyCatalog, TauNSlopeIsEigenvalueRatio)
{
    // forward difference of tau_n over the lattice equals -lambda_{2n+1}/(2n+1)
    for (auto spec : {kravchuk_half_4(), meixner_1_half(), make_meixner<Rational>(Q(5, 2), Q(2, 7))})
        for (int n = 0; n <= 6; ++n) {
            auto tn = tau_n_polynomial(spec, n);
            Rational slope = tn(Rational(1)) - tn(Rational(0));
            EXPECT_EQ(slope, -lambda_n(spec, 2 * n + 1) / Rational(2 * n + 1));
        }
}

TEST(FamilyCatalog, Weights)
{
    EXPECT_EQ(weight(meixner_1_half(), Rational(2)), Q(1, 4));
    EXPECT_EQ(weight(kravchuk_half_4(), Rational(1)), Q(1, 4));
    EXPECT_DOUBLE_EQ(weight(make_hermite<double>(), 0.0), 1.0);
    EXPECT_THROW(weight(kravchuk_half_4(), Rational(5)), outside_support);
    EXPECT_THROW(weight(make_laguerre<double>(0.5), -1.0), outside_support);
}

TEST(FamilyCatalog, KravchukWeightSolvesPearsonFromRhoZero)
{
    // Delta(sigma rho) = tau rho forward from rho(0) = q^N, independent of the binomial formula
    auto k = make_kravchuk<Rational>(Q(2, 5), 6);
    Rational rho = ipow(Q(3, 5), 6);
    for (int x = 0; x < 6; ++x) {
        EXPECT_EQ(weight(k, Rational(x)), rho);
        const Rational s1 = k.sigma(Rational(x + 1));
        rho = (k.sigma(Rational(x)) + k.tau(Rational(x))) * rho / s1;
    }
    EXPECT_EQ(weight(k, Rational(6)), rho);
}

TEST(FamilyCatalog, PearsonResidualExact)
{
    for (auto spec : {kravchuk_half_4(), make_kravchuk<Rational>(Q(1, 5), 9), meixner_1_half(),
                      make_meixner<Rational>(Q(7, 3), Q(3, 4))}) {
        const int top = spec.support.finite() ? static_cast<int>(spec.support.upper) : 30;
        for (int x = 0; x <= top; ++x)
            EXPECT_EQ(pearson_residual(spec, Rational(x)), Rational(0)) << to_string(spec.family) << " x=" << x;
    }
    for (auto spec : {make_hermite<Rational>(), make_laguerre<Rational>(Q(1, 2))})
        for (int i = 1; i <= 10; ++i)
            EXPECT_EQ(pearson_residual(spec, Q(i, 3)), Rational(0));
}

TEST(FamilyCatalog, PearsonResidualFloat)
{
    auto h = make_hermite<double>();
    auto l = make_laguerre<double>(2.0);
    for (double s = -4.0; s <= 4.0; s += 0.25)
        EXPECT_LE(std::fabs(pearson_residual(h, s)), 1e-12 * (std::fabs(h.tau(s)) * weight(h, s) + 1e-300));
    for (double s = 0.25; s <= 20.0; s += 0.25)
        EXPECT_LE(std::fabs(pearson_residual(l, s)), 1e-12 * (1.0 + s) * weight(l, s));
}

TEST(FamilyCatalog, Norms)
{
    auto h = make_hermite<double>();
    EXPECT_NEAR(squared_norm(h, 2), 8.0 * std::sqrt(std::numbers::pi), 1e-12);
    auto k = kravchuk_half_4();
    EXPECT_EQ(*exact_squared_norm(k, 1), Rational(1));
    EXPECT_THROW(relative_squared_norm(k, 5), outside_support);
    auto m = make_meixner<Rational>(Rational(2), Q(1, 3));
    // n! (gamma)_n mu^-n (1-mu)^-gamma at n=2: 2 * 6 * 9 * 9/4
    EXPECT_EQ(*exact_squared_norm(m, 2), Rational(243));
    EXPECT_FALSE(exact_squared_norm(make_meixner<Rational>(Q(1, 2), Q(1, 3)), 1).has_value());
}

TEST(FamilyCatalog, InvalidParameters)
{
    EXPECT_THROW(make_kravchuk<Rational>(Rational(0), 4), invalid_parameter);
    EXPECT_THROW(make_kravchuk<Rational>(Rational(1), 4), invalid_parameter);
    EXPECT_THROW(make_kravchuk<Rational>(Q(1, 2), 0), invalid_parameter);
    EXPECT_THROW(make_meixner<Rational>(Rational(0), Q(1, 2)), invalid_parameter);
    EXPECT_THROW(make_meixner<Rational>(Rational(1), Rational(1)), invalid_parameter);
    EXPECT_THROW(make_laguerre<Rational>(Rational(-1)), invalid_parameter);
    EXPECT_THROW(family_from_string("charlier"), invalid_parameter);
}

TEST(FamilyCatalog, ConvertFamilyKeepsParameters)
{
    auto m = make_meixner<Rational>(Rational(3), Q(1, 4));
    auto d = convert_family<double>(m);
    EXPECT_DOUBLE_EQ(d.params.mu, 0.25);
    EXPECT_DOUBLE_EQ(d.tau[1], -0.75);
    auto back = convert_family<Rational>(d);
    EXPECT_EQ(back.tau, m.tau);
}
