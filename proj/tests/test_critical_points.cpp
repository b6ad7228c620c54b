#include "gkz/admissibility.hpp"
#include "gkz/critical_points.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace gkz;

namespace {

IntVector iv(std::initializer_list<long> xs) {
    IntVector v;
    for (long x : xs) v.push_back(x);
    return v;
}

LaurentPolynomial poly1(std::initializer_list<std::pair<long, cplx>> terms) {
    std::vector<LaurentTerm> t;
    for (auto [a, c] : terms) t.push_back({{a}, c});
    return LaurentPolynomial::from_terms(1, t);
}

const CriticalPoint* near(const std::vector<CriticalPoint>& pts, std::initializer_list<cplx> x) {
    for (const auto& p : pts) {
        bool ok = true;
        Eigen::Index k = 0;
        for (auto v : x) ok = ok && std::abs(p.location.coords[k++] - v) < 1e-8 * (1 + std::abs(v));
        if (ok) return &p;
    }
    return nullptr;
}

PointConfiguration random_interior_config(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> e(-2, 2), size(static_cast<int>(n) + 1, 6);
    for (;;) {
        std::vector<IntVector> pts;
        const int k = size(rng);
        for (int i = 0; i < k * 3 && static_cast<int>(pts.size()) < k; ++i) {
            IntVector p;
            for (std::size_t d = 0; d < n; ++d) p.push_back(e(rng));
            if (is_zero(p) || std::find(pts.begin(), pts.end(), p) != pts.end()) continue;
            pts.push_back(p);
        }
        try {
            auto c = PointConfiguration::create(n, pts);
            if (origin_interior(build_delta(c))) return c;
        } catch (const Error&) {
        }
    }
}

}  // namespace

TEST_CASE("polynomial roots") {
    auto r = polynomial_roots({-1.0, 0.0, 1.0});
    REQUIRE(r.size() == 2);
    CHECK(std::abs(r[0] * r[1] + 1.0) < 1e-14);
    CHECK(polynomial_roots({0.0, 0.0, 1.0}).empty());
    CHECK(polynomial_roots({3.0}).empty());
    auto w = polynomial_roots({-1.0, 0.0, 0.0, 0.0, 0.0, 1.0});
    CHECK(w.size() == 5);
    for (auto v : w) CHECK(std::abs(std::pow(v, 5) - 1.0) < 1e-13);
}

TEST_CASE("bessel critical points") {
    auto pts = solve_critical(poly1({{1, 0.5}, {-1, 0.5}}));
    REQUIRE(pts.size() == 2);
    auto p = near(pts, {1.0});
    auto m = near(pts, {-1.0});
    REQUIRE(p);
    REQUIRE(m);
    CHECK(std::abs(p->value - 1.0) < 1e-12);
    CHECK(std::abs(m->value + 1.0) < 1e-12);
    CHECK(std::abs(p->hessian_det - 1.0) < 1e-12);
    CHECK(std::abs(m->hessian_det + 1.0) < 1e-12);
    CHECK(p->morse);
    CHECK(m->morse);
    auto cert = count_certificate(pts, build_delta(PointConfiguration::create(1, {iv({1}), iv({-1})})));
    CHECK(cert.status == CertificateStatus::complete);
    CHECK(cert.found == 2);
    CHECK(cert.expected == 2);
}

TEST_CASE("airy critical points") {
    auto pts = solve_critical(poly1({{3, 1.0 / 3.0}, {1, -1.0}}));
    REQUIRE(pts.size() == 2);
    auto p = near(pts, {1.0});
    auto m = near(pts, {-1.0});
    REQUIRE(p);
    REQUIRE(m);
    CHECK(std::abs(p->value + 2.0 / 3.0) < 1e-12);
    CHECK(std::abs(m->value - 2.0 / 3.0) < 1e-12);
    CHECK(std::abs(p->hessian_det - 2.0) < 1e-12);
    CHECK(std::abs(m->hessian_det + 2.0) < 1e-12);
    auto cert = count_certificate(pts, build_delta(PointConfiguration::create(1, {iv({3}), iv({1})})));
    CHECK(cert.status == CertificateStatus::not_applicable);
}

TEST_CASE("triangle critical points via the resultant") {
    auto config = PointConfiguration::create(2, {iv({1, 0}), iv({0, 1}), iv({-1, -1})});
    auto pts = solve_critical(from_config(config, {1.0, 1.0, 1.0}));
    REQUIRE(pts.size() == 3);
    for (int k = 0; k < 3; ++k) {
        const cplx w = std::polar(1.0, 2 * std::numbers::pi * k / 3);
        auto p = near(pts, {w, w});
        REQUIRE(p);
        CHECK(std::abs(p->value - 3.0 * w) < 1e-12);
        CHECK(p->morse);
        CHECK(p->residual <= 1e-10 * p->local_scale);
    }
    CHECK(count_certificate(pts, build_delta(config)).status == CertificateStatus::complete);
}

TEST_CASE("three variables use multi-start Newton") {
    auto config = PointConfiguration::create(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1}), iv({-1, -1, -1})});
    auto pts = solve_critical(from_config(config, {1.0, 1.0, 1.0, 1.0}));
    CHECK(pts.size() == 4);
    for (const auto& p : pts) CHECK(std::abs(p.value - 4.0 * p.location.coords[0]) < 1e-10);
}

TEST_CASE("incomplete solves are reported") {
    // Double critical point at x = 1 merges two solutions.
    auto h = poly1({{2, 0.5}, {1, -1.5}, {-1, -0.5}});
    CHECK_THROWS_AS(solve_critical(h), SolveIncomplete);
    try {
        solve_critical(h);
    } catch (const SolveIncomplete& e) {
        CHECK(e.partial().size() < e.expected());
    }
    CriticalOptions lax;
    lax.require_complete = false;
    auto pts = solve_critical(h, lax);
    auto one = near(pts, {1.0});
    REQUIRE(one);
    CHECK_FALSE(one->morse);
}

TEST_CASE("deformed systems") {
    auto lin = poly1({{1, 1.0}, {0, 1.0}});
    auto s = solve_deformed(lin, {0.5});
    REQUIRE(s.points.size() == 1);
    CHECK(std::abs(s.points[0].location.coords[0] - 1.0) < 1e-12);
    CHECK(s.expected == 1);
    CHECK(s.complete);
    auto none = solve_deformed(lin, {1.0});
    CHECK(none.points.empty());
    CHECK_FALSE(none.complete);
    CHECK_THROWS_AS(solve_deformed(lin, {1.0}, CriticalOptions{}), SolveIncomplete);
    auto quad = solve_deformed(poly1({{2, 1.0}, {1, 1.0}}), {1.5});
    REQUIRE(quad.points.size() == 1);
    CHECK(std::abs(quad.points[0].location.coords[0] - 1.0) < 1e-12);
    CHECK(quad.expected == 1);
}

TEST_CASE("deformed triangle count matches the volume of NP(h0)") {
    auto config = PointConfiguration::create(2, {iv({1, 0}), iv({0, 1}), iv({-1, -1})});
    auto h0 = from_config(config, {1.0, 2.0, 0.5});
    auto s = solve_deformed(h0, {cplx(0.1, 0.05), cplx(-0.2, 0.1)});
    CHECK(s.expected == 3);
    CHECK(s.points.size() == 3);
    for (const auto& p : s.points) CHECK(p.residual < 1e-9 * (1 + p.local_scale));
}

TEST_CASE("generic deformation sampler") {
    auto bessel = PointConfiguration::create(1, {iv({1}), iv({-1})});
    auto s = generic_deformation_sample(bessel, {0.5, 0.5}, 1);
    CHECK(s.attempts == 1);
    CHECK(s.z == std::vector<cplx>{0.5, 0.5});
    auto degenerate = PointConfiguration::create(1, {iv({2}), iv({1}), iv({-1})});
    std::vector<cplx> z{0.5, -1.5, -0.5};
    CHECK_FALSE(in_omega_zero(degenerate, z));
    auto d = generic_deformation_sample(degenerate, z, 2);
    CHECK(d.attempts > 1);
    CHECK(in_omega_zero(degenerate, d.z));
    CHECK(std::abs(d.z[0] - z[0]) <= 1e-2 * 1.5 + 1e-15);
    CHECK(d.z[1] == z[1]);
}

TEST_CASE("property: scaling z scales values and Hessians") {
    std::mt19937_64 rng(21);
    std::normal_distribution<double> g;
    auto config = PointConfiguration::create(2, {iv({1, 0}), iv({0, 1}), iv({-1, -1}), iv({1, 1})});
    for (int t = 0; t < 10; ++t) {
        std::vector<cplx> z;
        for (int j = 0; j < 4; ++j) z.push_back({g(rng), g(rng)});
        auto base = solve_critical(from_config(config, z));
        const cplx lambda(1.7, -0.4);
        std::vector<cplx> zs;
        for (auto v : z) zs.push_back(lambda * v);
        auto scaled = solve_critical(from_config(config, zs));
        REQUIRE(scaled.size() == base.size());
        for (const auto& p : base) {
            const CriticalPoint* q = nullptr;
            for (const auto& s : scaled)
                if (relative_distance(s.location.logs, p.location.logs) < 1e-8) q = &s;
            REQUIRE(q);
            CHECK(std::abs(q->value - lambda * p.value) <= 1e-10 * (1 + std::abs(q->value)));
            CHECK(std::abs(q->hessian_det - lambda * lambda * p.hessian_det) <= 1e-10 * (1 + std::abs(q->hessian_det)));
        }
    }
}

TEST_CASE("property: torus substitution moves critical points to α/s") {
    std::mt19937_64 rng(22);
    std::normal_distribution<double> g;
    auto config = PointConfiguration::create(2, {iv({1, 0}), iv({0, 1}), iv({-1, -1}), iv({-1, 1})});
    for (int t = 0; t < 10; ++t) {
        std::vector<cplx> z;
        for (int j = 0; j < 4; ++j) z.push_back({g(rng), g(rng)});
        const double s1 = std::exp(0.4 * g(rng)), s2 = std::exp(0.4 * g(rng));
        std::vector<cplx> zs;
        for (std::size_t j = 0; j < 4; ++j) {
            const auto& a = config.point(j);
            zs.push_back(z[j] * std::pow(s1, static_cast<double>(a[0])) * std::pow(s2, static_cast<double>(a[1])));
        }
        auto base = solve_critical(from_config(config, z));
        auto moved = solve_critical(from_config(config, zs));
        REQUIRE(base.size() == moved.size());
        for (const auto& p : base) {
            Eigen::VectorXcd target = p.location.logs;
            target[0] -= std::log(s1);
            target[1] -= std::log(s2);
            bool hit = false;
            for (const auto& q : moved) hit = hit || relative_distance(q.location.logs, target) < 1e-8;
            CHECK(hit);
        }
    }
}

TEST_CASE("property: certificates complete on random Morse instances") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> g;
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 1 + static_cast<std::size_t>(t % 2);
        auto config = random_interior_config(rng, n);
        std::vector<cplx> z;
        for (std::size_t j = 0; j < config.size(); ++j) z.push_back({g(rng), g(rng)});
        auto sample = generic_deformation_sample(config, z, static_cast<std::uint64_t>(t));
        auto pts = solve_critical(from_config(config, sample.z));
        auto cert = count_certificate(pts, build_delta(config));
        CHECK(cert.status == CertificateStatus::complete);
        for (const auto& p : pts) CHECK(p.residual <= 1e-10 * std::max(1.0, p.local_scale));
    }
}
