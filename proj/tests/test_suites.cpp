#include "ladderpoly/suites.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace ladderpoly;

namespace {

const SuiteCheck& find(const SuiteReport& r, const std::string& name)
{
    for (const auto& c : r.checks)
        if (c.name == name)
            return c;
    throw std::out_of_range("no check " + name);
}

} // namespace

TEST(Csv, HeaderCommentsAndRows)
{
    CsvWriter t({"a", "b"});
    t.comment("note");
    t.row().cell("x").cell(0.1);
    t.row().cell(3).cell(-2.5);
    std::ostringstream os;
    t.write(os);
    EXPECT_EQ(os.str(), "# note\na,b\nx,0.1\n3,-2.5\n");
    EXPECT_EQ(t.size(), 2u);
}

TEST(Csv, RaggedRowRejected)
{
    CsvWriter t({"a", "b"});
    t.row().cell(1);
    std::ostringstream os;
    EXPECT_THROW(t.write(os), std::logic_error);
}

TEST(Csv, DoublesRoundTrip)
{
    for (double v : {0.1, 1.0 / 3.0, std::acos(-1.0), 1e-300, -7.25e12}) {
        const auto s = format_double(v);
        EXPECT_EQ(std::stod(s), v) << s;
    }
    EXPECT_EQ(format_double(0.75), "0.75");
}

TEST(Csv, JsonRows)
{
    CsvWriter t({"n", "v"});
    t.row().cell(1).cell(0.5);
    const auto j = t.to_json();
    EXPECT_EQ(j["columns"][1], "v");
    EXPECT_EQ(j["rows"][0]["v"], "0.5");
}

TEST(Json, LadderMatrixTriplets)
{
    const auto j = to_json(wigner_ladder_matrix(1, LadderOp::raise));
    EXPECT_EQ(j["family"], "wigner");
    EXPECT_EQ(j["two_j"], 1);
    ASSERT_EQ(j["triplets"].size(), 1u);
    EXPECT_EQ(j["triplets"][0][0], 1);
    EXPECT_EQ(j["triplets"][0][1], 0);
}

TEST(Json, CertificateStatus)
{
    CertificateReport r{Family::meixner, {{"gamma", "2"}}, 3, {}};
    r.checks.push_back({"pearson", true, CheckMode::exact, std::nullopt, 0.0, 0.0});
    r.checks.push_back({"recurrence", false, CheckMode::exact, std::string("n=2"), 0.0, 0.0});
    const auto j = to_json(r);
    EXPECT_EQ(j["status"], "fail");
    EXPECT_EQ(j["first_failure"], "recurrence at n=2");
    EXPECT_FALSE(j["checks"][0].contains("max_error"));
}

TEST(ResidualSuite, ContinuousFamiliesPass)
{
    for (const auto& spec : {make_hermite<double>(), make_laguerre<double>(0.0), make_laguerre<double>(0.5),
                             make_laguerre<double>(2.0)}) {
        const auto r = residual_suite(spec, 10);
        EXPECT_TRUE(r.passed()) << to_json(r).dump();
        EXPECT_LT(find(r, "polynomial-equation").value, 1e-10);
        EXPECT_LT(find(r, "function-equation").value, 1e-10);
    }
}

TEST(ResidualSuite, AlternateLaguerreBracketIsInformational)
{
    const auto r = residual_suite(make_laguerre<double>(0.5), 6);
    const auto& c = find(r, "alternate-bracket");
    EXPECT_TRUE(c.informational);
    EXPECT_GT(c.value, 1e-3);
    EXPECT_TRUE(c.passed());
}

TEST(ResidualSuite, DiscreteFamiliesPass)
{
    for (int N : {4, 8, 16})
        EXPECT_TRUE(residual_suite(make_kravchuk<double>(0.5, N), 10).passed()) << N;
    EXPECT_TRUE(residual_suite(make_kravchuk<double>(0.3, 20), 12).passed());
    for (double g : {1.0, 2.0, 3.0})
        for (double m : {0.25, 0.5})
            EXPECT_TRUE(residual_suite(make_meixner<double>(g, m), 10).passed()) << g << " " << m;
}

TEST(ResidualSuite, ToleranceOverrideKeepsDefault)
{
    auto r = residual_suite(make_hermite<double>(), 4);
    r.override_tolerance(0.0);
    const auto& c = find(r, "recurrence");
    EXPECT_EQ(c.tolerance, 0.0);
    EXPECT_EQ(c.default_tolerance, residual_tolerance);
}

TEST(OrthogonalitySuite, AllFamilies)
{
    EXPECT_TRUE(orthogonality_suite(make_hermite<double>()).passed());
    EXPECT_TRUE(orthogonality_suite(make_laguerre<double>(2.0)).passed());
    EXPECT_TRUE(orthogonality_suite(make_kravchuk<double>(0.5, 16)).passed());
    EXPECT_TRUE(orthogonality_suite(make_meixner<double>(3.0, 0.25)).passed());
}

TEST(CommutatorSuite, ReportsMeasuredCoefficient)
{
    const auto r = wigner_commutator_suite(4);
    const auto& c = find(r, "[A+,A-] = 2 A0");
    EXPECT_TRUE(c.passed());
    ASSERT_TRUE(c.detail.contains("measured_coefficient"));
    const auto& side = find(r, "[A+,A0] = A+");
    EXPECT_NEAR(side.detail["measured_coefficient"].get<double>(), -0.25, 1e-14);
}

TEST(WignerSuite, FullBoxPasses)
{
    std::vector<int> js;
    for (int t = 1; t <= 12; ++t)
        js.push_back(t);
    const auto r = wigner_suite(js, wigner_beta_grid());
    EXPECT_TRUE(r.passed()) << to_json(r).dump();
    EXPECT_LE(find(r, "spin-half-closed-form").value, 1e-14);
    EXPECT_TRUE(find(r, "swapped-recurrence").informational);
}

TEST(WignerSuite, BetaGrid)
{
    const auto g = wigner_beta_grid();
    ASSERT_EQ(g.size(), 7u);
    EXPECT_DOUBLE_EQ(g.front(), 0.3);
    EXPECT_DOUBLE_EQ(g.back(), 2.7);
}

TEST(HydrogenSuite, DeclaredStates)
{
    const auto r = hydrogen_suite({{1, 0}, {2, 0}, {2, 1}, {3, 1}});
    EXPECT_TRUE(r.passed()) << to_json(r).dump();
    EXPECT_LT(find(r, "radial-equation").value, 1e-10);
    EXPECT_LT(find(r, "weighted-overlap").value, 1e-8);
}
