#include <doctest.h>

#include "gkz/report.hpp"
#include "oracles.hpp"

#include <numbers>
#include <random>

using namespace gkz;

namespace {

constexpr double pi = std::numbers::pi;

PointConfiguration config(std::size_t n, const std::vector<std::vector<std::int64_t>>& pts) {
    std::vector<IntVector> v;
    for (const auto& p : pts) v.push_back(to_int_vector(p));
    return PointConfiguration::create(n, v);
}

AnalysisOptions quick() {
    AnalysisOptions o;
    o.lambda_ladder.clear();
    return o;
}

const FacetOrder& facet(const std::vector<FacetOrder>& b, const std::vector<std::int64_t>& kappa) {
    for (const auto& f : b)
        if (f.kappa == to_int_vector(kappa)) return f;
    FAIL("facet not found");
    return b.front();
}

}  // namespace

TEST_CASE("beta orders on the examples") {
    const auto seg = build_delta(config(1, {{1}, {-1}}));
    const auto b = beta_orders(seg, ParameterVector::rational({"1/3"}));
    REQUIRE(b.size() == 2);
    CHECK(facet(b, {1}).exact->re == Rational(-2, 3));
    CHECK(facet(b, {-1}).exact->re == Rational(2, 3));

    for (const auto& f : beta_orders(build_delta(config(1, {{3}, {1}})), ParameterVector::ones(1)))
        CHECK(f.exact->re == 0);

    const auto tri = beta_orders(build_delta(config(2, {{1, 0}, {0, 1}, {-1, -1}})), ParameterVector::rational({"1/2", "1/2"}));
    CHECK(facet(tri, {-1, -1}).exact->re == 1);
    CHECK(facet(tri, {-1, 2}).exact->re == Rational(-1, 2));
    CHECK(facet(tri, {2, -1}).exact->re == Rational(-1, 2));
}

TEST_CASE("property: beta = <κ, c> - <κ, 1> exactly") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> coord(-4, 4), num(-9, 9), den(1, 7);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::vector<std::int64_t>> pts{{1, 0}, {0, 1}};
        for (int k = 0; k < 3; ++k) pts.push_back({coord(rng), coord(rng)});
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        std::erase(pts, std::vector<std::int64_t>{0, 0});
        const auto P = build_delta(config(2, pts));
        std::vector<ExactComplex> c{{Rational(num(rng), den(rng)), Rational(num(rng), den(rng))},
                                    {Rational(num(rng), den(rng)), 0}};
        const auto b = beta_orders(P, ParameterVector::exact(c));
        REQUIRE(b.size() == P.facets().size());
        for (const auto& f : b) {
            const ExactComplex want = pairing(f.kappa, c) - pairing(f.kappa, {{1, 0}, {1, 0}});
            CHECK(*f.exact == want);
        }
    }
}

TEST_CASE("Bessel report") {
    const auto r = analyze(config(1, {{1}, {-1}}), ParameterVector::ones(1), {0.5, 0.5});
    CHECK(r.status == ReportStatus::full);
    CHECK(r.route == "thimbles");
    CHECK(r.cycles.size() == 2);
    REQUIRE(r.periods.size() == 2);
    REQUIRE(r.stokes);
    CHECK(r.stokes->lines.size() == 1);
    // the two thimbles add up to the circle
    const cplx circle = 2 * pi * cplx(0, 1) * oracle::bessel_i(1, 1.0);
    CHECK(oracle::relative_error(r.periods[0].value + r.periods[1].value, circle) < 1e-8);
    REQUIRE(r.asymptotics.size() == 2);
    for (const auto& a : r.asymptotics) {
        CHECK(a.term.calibrated);
        CHECK(a.ladder.size() == 3);
        CHECK(a.first_correction.has_value());
    }
    const auto j = to_json(r);
    CHECK(j["schema"] == "gkz-analysis/1");
    CHECK(j["polytope"]["normalized_volume"] == 2);
    CHECK(j["critical"]["certificate"]["status"] == "complete");
}

TEST_CASE("Airy report falls back to sector connectors") {
    const auto r = analyze(config(1, {{3}, {1}}), ParameterVector::rational({"1/3"}), {1.0 / 3, -1.0}, quick());
    CHECK(r.status == ReportStatus::partial);
    REQUIRE(r.certificate);
    CHECK(r.certificate->status == CertificateStatus::not_applicable);
    CHECK(r.route == "sector-connectors");
    CHECK(r.cycles.size() == 3);
    CHECK(r.periods.size() == 3);
    CHECK(r.asymptotics.empty());
    CHECK(r.failures.empty());
}

TEST_CASE("resonant parameter stops before the basis") {
    const auto r = analyze(config(1, {{3}, {1}}), ParameterVector::rational({"2"}), {1.0 / 3, -1.0}, quick());
    CHECK(r.status == ReportStatus::partial);
    REQUIRE(r.admissibility);
    CHECK_FALSE(r.admissibility->resonance.nonresonant);
    CHECK(r.cycles.empty());
    CHECK(r.periods.empty());
    REQUIRE(!r.skipped.empty());
    CHECK(r.skipped.front().stage == "basis");
    REQUIRE(r.polytope);
    CHECK(to_json(r)["admissibility"]["nonresonant"] == false);
}

TEST_CASE("invalid input is an error report, not an exception") {
    const auto r = analyze(config(1, {{3}, {1}}), ParameterVector::ones(1), {1.0});
    CHECK(r.status == ReportStatus::error);
    REQUIRE(r.failures.size() == 1);
    CHECK(r.failures[0].kind == "InvalidConfiguration");
    CHECK(to_json(r)["status"] == "error");
}

TEST_CASE("three variables: thimbles traced, periods unsupported") {
    const auto r = analyze(config(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}), ParameterVector::ones(3),
                           {1.0, 1.0, 1.0, 1.0}, quick());
    CHECK(r.status == ReportStatus::partial);
    CHECK(r.route == "thimbles");
    CHECK(r.cycles.size() == 4);
    bool unsupported = false;
    for (const auto& f : r.failures) unsupported |= f.kind == "UnsupportedDimension";
    CHECK(unsupported);
    CHECK(to_json(r)["polytope"]["normalized_volume"] == 4);
}

TEST_CASE("property: reports are byte-identical on repeat runs") {
    const std::vector<std::pair<PointConfiguration, std::vector<cplx>>> cases{
        {config(1, {{1}, {-1}}), {0.5, 0.5}},
        {config(1, {{3}, {1}}), {1.0 / 3, -1.0}},
        {config(1, {{2}, {1}, {-1}}), {cplx(0.5, 0.2), -1.0, 0.7}},
    };
    for (const auto& [cfg, z] : cases) {
        const auto c = ParameterVector::rational({"1/3"});
        const auto a = to_json(analyze(cfg, c, z, quick())).dump(2);
        const auto b = to_json(analyze(cfg, c, z, quick())).dump(2);
        CHECK(a == b);
        CHECK(a.find("\"polytope\"") != std::string::npos);
    }
}
