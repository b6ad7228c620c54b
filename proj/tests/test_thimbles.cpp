#include <doctest.h>

#include "gkz/critical_points.hpp"
#include "gkz/thimbles.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace gkz;

namespace {

constexpr double pi = std::numbers::pi;

LaurentPolynomial poly1(std::vector<std::pair<std::int64_t, cplx>> terms) {
    std::vector<LaurentTerm> t;
    for (auto [e, c] : terms) t.push_back({{e}, c});
    return LaurentPolynomial::from_terms(1, std::move(t));
}

LaurentPolynomial triangle(cplx scale = 1.0) {
    return LaurentPolynomial::from_terms(2, {{{1, 0}, scale}, {{0, 1}, scale}, {{-1, -1}, scale}});
}

LaurentPolynomial bessel(double lambda = 1.0) { return poly1({{1, 0.5 * lambda}, {-1, 0.5 * lambda}}); }

void check_log_continuity(const std::vector<TorusPoint>& samples) {
    for (std::size_t k = 1; k < samples.size(); ++k)
        for (Eigen::Index j = 0; j < samples[k].logs.size(); ++j)
            CHECK(std::abs(samples[k].logs[j] - samples[k - 1].logs[j]) < pi / 4);
}

}  // namespace

TEST_CASE("sectors of the Airy polynomial at infinity") {
    const auto s = sectors_1d(poly1({{3, 1.0 / 3}, {1, -1.0}}), Divisor::at_infinity);
    REQUIRE(s.size() == 3);
    const double want[3][2] = {{pi / 6, pi / 2}, {5 * pi / 6, 7 * pi / 6}, {3 * pi / 2, 11 * pi / 6}};
    for (int k = 0; k < 3; ++k) {
        CHECK(s[k].lo == doctest::Approx(want[k][0]));
        CHECK(s[k].hi == doctest::Approx(want[k][1]));
        CHECK(s[k].index == k);
    }
}

TEST_CASE("Bessel sectors on both divisors") {
    for (Divisor d : {Divisor::at_infinity, Divisor::at_zero}) {
        const auto s = sectors_1d(bessel(), d);
        REQUIRE(s.size() == 1);
        CHECK(s[0].lo == doctest::Approx(pi / 2));
        CHECK(s[0].hi == doctest::Approx(3 * pi / 2));
    }
}

TEST_CASE("sector counts and missing poles") {
    CHECK(sectors_1d(poly1({{-2, 1.0}}), Divisor::at_zero).size() == 2);
    CHECK_THROWS_AS(sectors_1d(poly1({{-2, 1.0}}), Divisor::at_infinity), NoPole);
    CHECK_THROWS_AS(sectors_1d(poly1({{3, 1.0}, {1, 1.0}}), Divisor::at_zero), NoPole);
    CHECK_THROWS_AS(sectors_1d(triangle(), Divisor::at_zero), UnsupportedDimension);
}

TEST_CASE("property: the dominant term decays inside every sector") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> deg(1, 6);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = deg(rng);
        const cplx lead = std::polar(0.5 + unit(rng), 2 * pi * unit(rng));
        const bool inf = trial % 2 == 0;
        const auto s = sectors_1d(poly1({{inf ? m : -m, lead}, {0, 1.0}}), inf ? Divisor::at_infinity : Divisor::at_zero);
        REQUIRE(static_cast<int>(s.size()) == m);
        for (const auto& sec : s) {
            CHECK(sec.lo >= 0.0);
            CHECK(sec.lo < 2 * pi);
            for (double f : {0.01, 0.5, 0.99}) {
                const double theta = sec.lo + f * (sec.hi - sec.lo);
                const cplx dir = std::polar(1.0, (inf ? m : -m) * theta);
                CHECK((lead * dir).real() < 0.0);
            }
        }
    }
}

TEST_CASE("cycle basis counts") {
    CHECK(cycle_basis_1d(poly1({{3, 1.0 / 3}, {1, -1.0}}), ParameterVector::ones(1)).size() == 3);
    CHECK(cycle_basis_1d(bessel(), ParameterVector::rational({"1/3"})).size() == 2);
    CHECK(cycle_basis_1d(poly1({{1, 1.0}}), ParameterVector::rational({"1/3"})).size() == 1);
    CHECK_THROWS_AS(cycle_basis_1d(bessel(), ParameterVector::ones(1)), ResonantBranch);
    CHECK_THROWS_AS(cycle_basis_1d(bessel(), ParameterVector::numeric({2.0 + 1e-12})), ResonantBranch);
}

TEST_CASE("property: connector count equals the normalized volume, logs continuous, ends decay") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> top(0, 4), bottom(0, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 60; ++trial) {
        const int m2 = top(rng), m1 = bottom(rng);
        if (m1 + m2 == 0) continue;
        std::vector<std::pair<std::int64_t, cplx>> terms;
        for (int e = -m1; e <= m2; ++e)
            if (e == -m1 || e == m2 || unit(rng) < 0.5) terms.push_back({e, std::polar(0.3 + unit(rng), 2 * pi * unit(rng))});
        const auto h = poly1(terms);
        const auto c = ParameterVector::rational({"2/7"});
        const auto basis = cycle_basis_1d(h, c);
        const std::size_t vol = static_cast<std::size_t>(to_int64(normalized_volume(newton_polytope(h, true))));
        CHECK(basis.size() == vol);
        for (const auto& cyc : basis) {
            check_log_continuity(cyc.samples);
            CHECK(std::abs(cyc.samples.front().logs[0].imag()) <= pi);
            double peak = -1e300;
            auto lw = [&](const TorusPoint& p) {
                const cplx l = p.logs[0];
                return (h.evaluate_log(p.logs) + (c.value(0) - 1.0) * l).real();
            };
            for (const auto& p : cyc.samples) peak = std::max(peak, lw(p));
            CHECK(lw(cyc.samples.front()) < peak + std::log(1e-16));
            CHECK(lw(cyc.samples.back()) < peak + std::log(1e-16));
        }
    }
}

TEST_CASE("descent frame normalizes the Hessian quadratic form") {
    for (const auto& h : {bessel(), poly1({{3, 1.0 / 3}, {1, cplx(-1.0, 0.4)}, {-2, 0.2}}), triangle(cplx(0.7, 0.2))}) {
        for (const auto& p : solve_critical(h)) {
            const DescentFrame f = descent_frame(h, p.location.logs);
            const auto n = f.basis.rows();
            const Eigen::MatrixXcd q = f.basis.transpose() * f.hessian * f.basis;
            CHECK((q + 2.0 * Eigen::MatrixXcd::Identity(n, n)).norm() < 1e-9 * f.hessian.norm());
            const cplx r = f.basis.determinant() * std::sqrt(f.hessian.determinant()) / std::pow(cplx(0, 1), static_cast<int>(n));
            CHECK(std::abs(r - std::pow(2.0, 0.5 * static_cast<double>(n))) < 1e-9);
        }
    }
}

TEST_CASE("Bessel descent from x = 1 follows the unit circle and stalls at x = -1") {
    const auto h = bessel();
    CriticalPoint saddle = make_critical_point(h, Eigen::VectorXcd::Zero(1));
    DescentPath partial;
    try {
        trace_descent(h, saddle, Eigen::VectorXd::Constant(1, 1.0));
        FAIL("flow into the second saddle should not reach the cut");
    } catch (const FlowEscape& e) {
        partial = e.partial();
    }
    REQUIRE(!partial.panels.empty());
    for (const auto& s : partial.samples()) CHECK(std::abs(std::abs(s.coords[0]) - 1.0) < 1e-8);
    CHECK(partial.end[0].imag() > 2.0);  // counterclockwise toward -1
}

TEST_CASE("Bessel thimbles under the tie rotation") {
    const auto h = bessel();
    const auto crit = solve_critical(h);
    REQUIRE(crit.size() == 2);
    CHECK(critical_values_tie(crit, 1e-9));
    const auto thimbles = thimble_basis(h, crit);
    REQUIRE(thimbles.size() == 2);
    for (const auto& t : thimbles) {
        CHECK(std::abs(t.rotation - std::polar(1.0, 1e-3)) < 1e-15);
        REQUIRE(t.rays.size() == 2);
        const auto traced = h * t.rotation;
        double im[2];
        for (int k = 0; k < 2; ++k) {
            const auto& ray = t.rays[static_cast<std::size_t>(k)];
            const auto d = ray_diagnostics(traced, t.saddle.location.logs, ray);
            CHECK(d.re_decreasing);
            CHECK(d.max_im_deviation < 1e-6 * d.saddle_scale + 1e-9);
            check_log_continuity(ray.samples());
            im[k] = traced.evaluate_log(ray.end).imag();
            CHECK(traced.evaluate_log(ray.end).real() ==
                  doctest::Approx(traced.evaluate_log(t.saddle.location.logs).real() - 41.4).epsilon(1e-8));
        }
        CHECK(im[0] == doctest::Approx(im[1]).epsilon(1e-9));
    }
}

TEST_CASE("Airy has no thimble basis") {
    const auto h = poly1({{3, 1.0 / 3}, {1, -1.0}});
    const auto crit = solve_critical(h);
    CHECK_THROWS_AS(thimble_basis(h, crit), HypothesisViolation);
}

TEST_CASE("triangle thimbles: three fans of at least 64 rays") {
    const auto h = triangle();
    const auto crit = solve_critical(h);
    REQUIRE(crit.size() == 3);
    const auto thimbles = thimble_basis(h, crit);
    REQUIRE(thimbles.size() == 3);
    for (const auto& t : thimbles) {
        CHECK(std::abs(std::pow(t.saddle.location.coords[0], 3) - 1.0) < 1e-10);
        REQUIRE(t.rays.size() >= 64);
        CHECK(t.rays.size() == 15 * t.fan.size());
        const auto traced = h * t.rotation;
        for (const auto& ray : t.rays) {
            const auto d = ray_diagnostics(traced, t.saddle.location.logs, ray);
            CHECK(d.re_decreasing);
            CHECK(d.max_im_deviation < 1e-6 * d.saddle_scale + 1e-9);
        }
    }
}

TEST_CASE("property: halving the panel width moves ray endpoints by < 1e-6") {
    const auto h = poly1({{2, cplx(0.5, 0.3)}, {1, -1.0}, {-1, cplx(0.8, -0.1)}});
    FlowOptions fine;
    fine.panel_width = 0.125;
    for (const auto& p : solve_critical(h)) {
        for (double s : {1.0, -1.0}) {
            const auto a = trace_descent(h, p, Eigen::VectorXd::Constant(1, s));
            const auto b = trace_descent(h, p, Eigen::VectorXd::Constant(1, s), fine);
            CHECK((a.end - b.end).norm() < 1e-6 * a.end.norm() + 1e-9);
        }
    }
}
