#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <flagcert/fixtures.hpp>
#include <flagcert/report.hpp>

using namespace flagcert;

TEST(Report, JsonRoundTrip)
{
    CertificateReport r;
    r.certificate = "first";
    r.variant = "first3";
    r.pass = false;
    r.atoms.push_back({"a", "recipe", "alpha", Sense::ge, {"0", "1/2"}});
    r.coefficients = {{"a", "9/7"}};
    r.combined = {"0", "1/3"};
    r.target = {"0", "1/2"};
    r.bound = "none";
    CheckStep s;
    s.name = "combination";
    s.detail = "mismatch";
    s.coordinate = 2;
    s.residual = "-1/6";
    s.recomputed = {"x"};
    r.steps.push_back(s);
    r.findings = {"one"};
    CertificateReport sub = r;
    sub.variants.clear();
    r.variants.push_back(sub);

    const CertificateReport back = report_from_json(nlohmann::json::parse(report_text(r)));
    EXPECT_EQ(back, r);
    EXPECT_EQ(to_json(r)["schema"], report_schema);
    EXPECT_EQ(to_json(r)["status"], "fail");
}

TEST(Report, RejectsOtherSchema)
{
    auto j = nlohmann::json::parse(report_text(CertificateReport{}));
    j["schema"] = 99;
    EXPECT_THROW(report_from_json(j), std::invalid_argument);
}

TEST(Report, EmitWritesFile)
{
    const auto path = std::filesystem::temp_directory_path() / "flagcert_report_test.json";
    CertificateReport r;
    r.certificate = "example";
    r.pass = true;
    emit_report(r, path.string());
    std::ifstream in(path);
    const auto j = nlohmann::json::parse(in);
    EXPECT_EQ(j["status"], "pass");
    std::filesystem::remove(path);
    EXPECT_THROW(emit_report(r, "/nonexistent-dir/x/report.json"), std::runtime_error);
}

TEST(DensityJson, RoundTripAllRings)
{
    const auto v = fixture_vector<RatPoly>(fixture(default_fixtures(), "sec4"));
    const auto back = density_vector_from_json<RatPoly>(nlohmann::json::parse(to_json(v).dump()));
    EXPECT_EQ(back, v);
    const auto e = expand(named::complete(2), 4);
    EXPECT_EQ(density_vector_from_json<Rational>(nlohmann::json::parse(to_json(e).dump())), e);
    EXPECT_EQ(to_json(e)["type"], "unlabeled");
    DensityVector<SqrtExpr> s(TypeSigma::none(), 3, {SqrtExpr::root(), SqrtExpr(1), SqrtExpr::beta(), SqrtExpr()});
    EXPECT_EQ(density_vector_from_json<SqrtExpr>(nlohmann::json::parse(to_json(s).dump())), s);
}

TEST(DensityJson, BadTypeThrows)
{
    nlohmann::json j = {{"level", 3}, {"type", "weird"}, {"coords", {"0", "0", "0", "0"}}};
    EXPECT_THROW(density_vector_from_json<Rational>(j), std::invalid_argument);
    j["type"] = "unlabeled";
    j["coords"] = {"0"};
    EXPECT_THROW(density_vector_from_json<Rational>(j), std::invalid_argument);
}

TEST(Fixtures, JsonRoundTripAndFlips)
{
    const auto &set = default_fixtures();
    EXPECT_EQ(set.size(), 5U);
    const auto back = fixtures_from_json(nlohmann::json::parse(fixtures_to_json(set).dump()));
    EXPECT_EQ(fixtures_to_json(back), fixtures_to_json(set));
    std::size_t pairs = 0;
    for (const auto &[name, f] : set) {
        for (const auto &t : f.terms) {
            const int n = parse_graph(t.graph).order();
            pairs += static_cast<std::size_t>(n * (n - 1) / 2);
        }
    }
    EXPECT_EQ(single_edge_flips(set).size(), pairs);
    EXPECT_THROW(fixture(set, "nope"), FixtureError);
    EXPECT_THROW(fixtures_from_json(nlohmann::json::parse(R"({"x": {"type": "1:"}})")), FixtureError);
}

TEST(Fixtures, TypeMismatchNamesFixture)
{
    FixtureSet set = default_fixtures();
    set["sec3"].terms[0].graph = "3:";
    try {
        (void)fixture_vector<RatPoly>(fixture(set, "sec3"));
        FAIL() << "expected FixtureError";
    } catch (const FixtureError &e) {
        EXPECT_EQ(e.fixture(), "sec3");
    }
}
