#include <doctest.h>

#include "gkz/asymptotics.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

using namespace gkz;

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0, 1);

LaurentPolynomial bessel() {
    return LaurentPolynomial::from_terms(1, {{{1}, 0.5}, {{-1}, 0.5}});
}

LaurentPolynomial triangle() {
    return LaurentPolynomial::from_terms(2, {{{1, 0}, 1.0}, {{0, 1}, 1.0}, {{-1, -1}, 1.0}});
}

std::size_t nearest(const std::vector<CriticalPoint>& crit, const Eigen::VectorXcd& x) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < crit.size(); ++k)
        if ((crit[k].location.coords - x).norm() < (crit[best].location.coords - x).norm()) best = k;
    return best;
}

CriticalPoint with_value(cplx v) {
    CriticalPoint p;
    p.value = v;
    return p;
}

std::vector<double> errors(const std::vector<RatioSample>& s) {
    std::vector<double> e;
    for (const auto& r : s) e.push_back(std::abs(r.ratio - 1.0));
    return e;
}

void check_halving(const std::vector<double>& e) {
    for (std::size_t k = 1; k < e.size(); ++k) {
        CHECK(e[k] < e[k - 1]);
        CHECK(e[k] / e[k - 1] >= 0.35);
        CHECK(e[k] / e[k - 1] <= 0.65);
    }
}

}  // namespace

TEST_CASE("Bessel leading terms") {
    const auto h = bessel();
    const auto crit = solve_critical(h);
    const auto one = nearest(crit, Eigen::VectorXcd::Constant(1, 1.0));
    const auto minus = 1 - one;

    const auto t = leading_term(h, ParameterVector::ones(1), crit[one], one, std::polar(1.0, 1e-3));
    CHECK(std::abs(t.prefactor - I * std::sqrt(2 * pi)) < 1e-12);
    CHECK(std::abs(t.rate - 1.0) < 1e-12);
    CHECK(t.power == -0.5);
    CHECK(t.calibrated);
    CHECK(t.sqrt_branch == 1);
    // 2πi I_1(λ) ~ i √(2π/λ) e^λ (1 - 3/(8λ))
    CHECK(std::abs(t.calibration_ratio - (1.0 - 3.0 / 240.0)) < 1e-3);

    AsymptoticOptions raw;
    raw.calibrate = false;
    const auto s = leading_term(h, ParameterVector::ones(1), crit[minus], minus, 1.0, raw);
    CHECK(std::abs(s.prefactor) == doctest::Approx(std::sqrt(2 * pi)));
    CHECK(std::abs(s.rate + 1.0) < 1e-12);
}

TEST_CASE("non-Morse saddles have no leading term") {
    CriticalPoint p = with_value(0.0);
    p.location = TorusPoint::from_coords(Eigen::VectorXcd::Constant(1, 1.0));
    CHECK_THROWS_AS(leading_term(bessel(), ParameterVector::ones(1), p), HypothesisViolation);
}

TEST_CASE("property: prefactor squared times H is branch free") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    AsymptoticOptions raw;
    raw.calibrate = false;
    for (int trial = 0; trial < 40; ++trial) {
        const bool two = trial % 2 == 1;
        auto coeff = [&] { return cplx(unit(rng), unit(rng)) + 1.5; };
        const auto h = two ? LaurentPolynomial::from_terms(2, {{{1, 0}, coeff()}, {{0, 1}, coeff()}, {{-1, -1}, coeff()}, {{1, 1}, coeff()}})
                           : LaurentPolynomial::from_terms(1, {{{2}, coeff()}, {{1}, coeff()}, {{-1}, coeff()}});
        const auto c = ParameterVector::numeric(two ? std::vector<cplx>{cplx(0.3, 0.2), -0.7} : std::vector<cplx>{cplx(1.4, -0.5)});
        for (const auto& p : solve_critical(h)) {
            const auto t = leading_term(h, c, p, 0, 1.0, raw);
            const auto n = p.location.logs.size();
            cplx mono = std::pow(I, static_cast<int>(n));
            for (Eigen::Index k = 0; k < n; ++k) mono *= std::pow(p.location.coords[k], c.value(static_cast<std::size_t>(k)) - 1.0);
            const cplx want = mono * mono * std::pow(2 * pi, static_cast<double>(n));
            CHECK(std::abs(t.prefactor * t.prefactor * p.hessian_det - want) < 1e-12 * std::abs(want));
        }
    }
}

TEST_CASE("Bessel ratio ladder against the modified Bessel oracle") {
    const auto h = bessel();
    const auto crit = solve_critical(h);
    const auto one = nearest(crit, Eigen::VectorXcd::Constant(1, 1.0));
    const auto thimbles = thimble_basis(h, crit);
    const auto c = ParameterVector::ones(1);
    const auto term = leading_term(h, c, crit[one], one, thimbles[one].rotation);
    const auto ladder = asymptotic_ratio(h, c, term, thimbles[one], {20.0, 40.0, 80.0});
    REQUIRE(ladder.size() == 3);
    for (const auto& s : ladder) {
        const double lambda = s.lambda.real();
        const cplx exact = 2 * pi * I * oracle::bessel_i(1, lambda);
        CHECK(oracle::relative_error(s.integral, exact) < 1e-7);
        CHECK(std::abs(s.ratio - exact / term.evaluate(lambda)) < 1e-7);
    }
    check_halving(errors(ladder));
    CHECK(std::abs(first_correction(ladder) + 0.375) < 1e-3);
}

TEST_CASE("Bessel ratio for c = 1/3 follows I_{-1/3}") {
    const auto h = bessel();
    const auto crit = solve_critical(h);
    const auto one = nearest(crit, Eigen::VectorXcd::Constant(1, 1.0));
    const auto c = ParameterVector::rational({"1/3"});
    const auto thimble = trace_thimble(h, crit[one], std::polar(1.0, 1e-3));
    const auto term = leading_term(h, c, crit[one], one, thimble.rotation);
    const auto ladder = asymptotic_ratio(h, c, term, thimble, {20.0, 40.0});
    check_halving(errors(ladder));
    // 1 - (4ν² - 1)/(8λ) with ν = 1/3
    CHECK(std::abs(first_correction(ladder) + (4.0 / 9 - 1) / 8) < 2e-2);
}

TEST_CASE("triangle saddle at (1, 1): ratio error halves along the ladder") {
    const auto h = triangle();
    const auto crit = solve_critical(h);
    const auto one = nearest(crit, Eigen::VectorXcd::Constant(2, 1.0));
    const auto c = ParameterVector::ones(2);
    const auto thimble = trace_thimble(h, crit[one], std::polar(1.0, 1e-3));
    const auto term = leading_term(h, c, crit[one], one, thimble.rotation);
    CHECK(std::abs(term.prefactor * term.prefactor * crit[one].hessian_det - 4.0 * pi * pi) < 1e-10);
    CHECK(std::abs(term.calibration_ratio - 1.0) < 0.05);
    const auto ladder = asymptotic_ratio(h, c, term, thimble, {20.0, 40.0, 80.0});
    check_halving(errors(ladder));
}

TEST_CASE("sector guard") {
    const auto h = bessel();
    const auto crit = solve_critical(h);
    const auto thimble = trace_thimble(h, crit[0], std::polar(1.0, 1e-3));
    AsymptoticOptions raw;
    raw.calibrate = false;
    const auto term = leading_term(h, ParameterVector::ones(1), crit[0], 0, thimble.rotation, raw);
    CHECK_THROWS_AS(asymptotic_ratio(h, ParameterVector::ones(1), term, thimble, {std::polar(20.0, 0.5)}),
                    HypothesisViolation);
    raw.force = true;
    CHECK_NOTHROW(asymptotic_ratio(h, ParameterVector::ones(1), term, thimble, {std::polar(20.0, 0.1)}, raw));
}

TEST_CASE("Stokes lines") {
    const auto b = stokes_lines(solve_critical(bessel()));
    REQUIRE(b.lines.size() == 1);
    CHECK(b.lines[0].angles[0] == doctest::Approx(pi / 2));
    CHECK(b.lines[0].angles[1] == doctest::Approx(3 * pi / 2));

    std::vector<double> all;
    for (const auto& l : stokes_lines(solve_critical(triangle())).lines)
        for (double a : l.angles) all.push_back(a);
    std::sort(all.begin(), all.end());
    REQUIRE(all.size() == 6);
    for (int k = 0; k < 6; ++k) CHECK(std::abs(all[static_cast<std::size_t>(k)] - k * pi / 3) < 1e-9);

    CHECK(stokes_lines({with_value(2.0)}).lines.empty());
    const auto dup = stokes_lines({with_value(1.0), with_value(1.0 + 1e-12), with_value(-1.0)});
    CHECK(dup.lines.size() == 2);
    REQUIRE(dup.skipped.size() == 1);
    CHECK(dup.skipped[0] == std::pair<std::size_t, std::size_t>{0, 1});
}

TEST_CASE("Bessel dominance order") {
    const auto crit = solve_critical(bessel());
    const auto one = nearest(crit, Eigen::VectorXcd::Constant(1, 1.0));
    CHECK(dominance_order(crit, 1.0).order == std::vector<std::size_t>{one, 1 - one});
    CHECK(dominance_order(crit, -1.0).order == std::vector<std::size_t>{1 - one, one});
    CHECK(dominance_order(crit, 1.0).ties.empty());
    CHECK(dominance_order(crit, I).ties.size() == 1);
    const auto before = dominance_order(crit, std::polar(1.0, pi / 2 - 0.01)).order;
    const auto after = dominance_order(crit, std::polar(1.0, pi / 2 + 0.01)).order;
    CHECK(before != after);
}

TEST_CASE("property: crossing a Stokes line transposes its pair") {
    for (const auto& h : {bessel(), triangle(), LaurentPolynomial::from_terms(2, {{{1, 0}, cplx(1.0, 0.3)}, {{0, 1}, 0.8}, {{-1, -1}, cplx(1.1, -0.2)}, {{-1, 0}, 0.4}})}) {
        const auto crit = solve_critical(h);
        const auto table = stokes_lines(crit);
        std::vector<double> angles;
        for (const auto& l : table.lines) angles.insert(angles.end(), l.angles.begin(), l.angles.end());
        for (const auto& l : table.lines)
            for (double theta : l.angles) {
                int close = 0;
                for (double a : angles)
                    if (std::abs(std::remainder(a - theta, 2 * pi)) < 0.02) ++close;
                if (close > 1) continue;
                auto before = dominance_order(crit, std::polar(1.0, theta - 0.01)).order;
                const auto after = dominance_order(crit, std::polar(1.0, theta + 0.01)).order;
                const auto pi_ = std::find(before.begin(), before.end(), l.i) - before.begin();
                const auto pj = std::find(before.begin(), before.end(), l.j) - before.begin();
                CHECK(std::abs(pi_ - pj) == 1);
                std::swap(before[static_cast<std::size_t>(pi_)], before[static_cast<std::size_t>(pj)]);
                CHECK(before == after);
            }
    }
}

TEST_CASE("property: dominance order ignores the modulus of λ") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto crit = solve_critical(LaurentPolynomial::from_terms(2, {{{2, 0}, cplx(0.4, 0.1)}, {{0, 1}, 1.0}, {{-1, -1}, cplx(0.7, 0.5)}}));
    for (int trial = 0; trial < 200; ++trial) {
        const cplx lambda = std::polar(0.1 + unit(rng), 2 * pi * unit(rng));
        const double t = std::exp(6 * unit(rng) - 3);
        CHECK(dominance_order(crit, lambda).order == dominance_order(crit, t * lambda).order);
    }
}
