#include "ladderpoly/polynomial.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace ladderpoly;
using QP = Polynomial<Rational>;

TEST(Polynomial, ZeroHasDegreeMinusOne)
{
    QP z;
    EXPECT_EQ(z.degree(), -1);
    EXPECT_TRUE(z.is_zero());
    QP trimmed{Rational(0), Rational(0)};
    EXPECT_TRUE(trimmed.is_zero());
}

TEST(Polynomial, TrailingZerosAreDropped)
{
    QP p{Rational(1), Rational(2), Rational(0)};
    EXPECT_EQ(p.degree(), 1);
    EXPECT_EQ(p.leading(), Rational(2));
}

TEST(Polynomial, HornerEvaluation)
{
    QP p{Rational(-2), Rational(0), Rational(4)}; // 4x^2 - 2
    EXPECT_EQ(p(Rational(3)), Rational(34));
    EXPECT_EQ(p(Q(1, 2)), Rational(-1));
}

TEST(Polynomial, Derivative)
{
    QP p{Rational(5), Rational(-3), Rational(0), Rational(2)};
    EXPECT_EQ(p.derivative(), (QP{Rational(-3), Rational(0), Rational(6)}));
    EXPECT_TRUE(QP::constant(Rational(7)).derivative().is_zero());
}

TEST(Polynomial, ShiftMatchesPointwiseEvaluation)
{
    QP p{Rational(1), Rational(-4), Q(3, 2), Rational(2)};
    for (int k : {-3, -1, 1, 2}) {
        QP s = p.shifted(Rational(k));
        for (int x = -5; x <= 5; ++x)
            EXPECT_EQ(s(Rational(x)), p(Rational(x + k))) << "k=" << k << " x=" << x;
    }
}

TEST(Polynomial, ProductAndSum)
{
    QP a{Rational(1), Rational(1)};
    QP b{Rational(-1), Rational(1)};
    EXPECT_EQ(a * b, (QP{Rational(-1), Rational(0), Rational(1)}));
    EXPECT_EQ(a + b, (QP{Rational(0), Rational(2)}));
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(a * Q(1, 3), (QP{Q(1, 3), Q(1, 3)}));
}

TEST(Polynomial, CoefficientsStayReduced)
{
    QP p{Q(2, 4), Q(6, 3)};
    EXPECT_EQ(p[0].get_den(), 2);
    EXPECT_EQ(p[1].get_den(), 1);
}

TEST(Polynomial, CastRoundTrip)
{
    QP p{Q(1, 4), Q(-3, 8)};
    Polynomial<double> d = p.cast<double>();
    EXPECT_DOUBLE_EQ(d[0], 0.25);
    EXPECT_EQ(d.cast<Rational>(), p);
}

TEST(Polynomial, DoubleEvaluationOfRational)
{
    QP p{Rational(1), Q(1, 2), Q(1, 4)};
    EXPECT_DOUBLE_EQ(evaluate_as_double(p, 2.0), 3.0);
}

TEST(Rational, ParseForms)
{
    EXPECT_EQ(parse_rational("1/2"), Q(1, 2));
    EXPECT_EQ(parse_rational("-6/4"), Q(-3, 2));
    EXPECT_EQ(parse_rational("7"), Rational(7));
    EXPECT_EQ(parse_rational("0.5"), Q(1, 2));
    EXPECT_TRUE(looks_rational("3/4"));
    EXPECT_FALSE(looks_rational("0.75"));
    EXPECT_FALSE(looks_rational("1/"));
    EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
    EXPECT_EQ(to_fraction_string(Rational(4)), "4/1");
}
