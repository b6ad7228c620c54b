#include "gkz/critical_points.hpp"

#include "gkz/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace gkz {

namespace {

std::vector<LaurentPolynomial> euler_system(const LaurentPolynomial& h) {
    std::vector<LaurentPolynomial> eqs;
    for (std::size_t k = 0; k < h.dim(); ++k) eqs.push_back(euler_derivative(h, k));
    return eqs;
}

double min_separation(const std::vector<CriticalPoint>& points) {
    double best = points.size() < 2 ? 0.0 : std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            best = std::min(best, relative_distance(points[i].location.logs, points[j].location.logs));
    return best;
}

}  // namespace

bool is_morse(cplx hessian_det, double local_scale, double tolerance) {
    return std::abs(hessian_det) >= tolerance * std::max(1.0, local_scale);
}

CriticalPoint make_critical_point(const LaurentPolynomial& h, const Eigen::VectorXcd& logs,
                                  double morse_tolerance) {
    CriticalPoint p;
    p.location = TorusPoint::from_logs(logs);
    p.value = h.evaluate_log(logs);
    p.hessian_det = hessian(h, p.location).determinant();
    p.local_scale = h.term_scale_log(logs);
    double res = 0.0;
    for (const auto& f : euler_system(h)) res = std::max(res, std::abs(f.evaluate_log(logs)));
    p.residual = res;
    p.morse = is_morse(p.hessian_det, p.local_scale, morse_tolerance);
    return p;
}

std::vector<CriticalPoint> solve_critical(const LaurentPolynomial& h, const CriticalOptions& options) {
    if (h.is_zero()) throw InvalidConfiguration("critical points of the zero polynomial");
    LatticePolytope np = [&] {
        try {
            return newton_polytope(h, true);
        } catch (const DegenerateConfiguration&) {
            throw DegenerateConfiguration("Newton polytope of h together with 0 is not full-dimensional; "
                                          "the critical set is not isolated");
        }
    }();
    const std::size_t expected = static_cast<std::size_t>(to_int64(normalized_volume(np)));
    const bool interior = origin_interior(np);

    LaurentSystem system(euler_system(h));
    SystemSolution sol = solve_torus_system(system, expected, interior, options.solver);
    std::vector<Eigen::VectorXcd> merged;
    std::vector<int> weight;
    for (const auto& u : sol.logs) {
        bool joined = false;
        for (std::size_t k = 0; k < merged.size() && !joined; ++k) {
            if (relative_distance(merged[k] / weight[k], u) < options.cluster_radius) {
                merged[k] += u;
                ++weight[k];
                joined = true;
            }
        }
        if (!joined) {
            merged.push_back(u);
            weight.push_back(1);
        }
    }
    std::vector<CriticalPoint> points;
    for (std::size_t k = 0; k < merged.size(); ++k) {
        Eigen::VectorXcd u = merged[k] / weight[k];
        if (weight[k] > 1 && h.dim() == 1) {
            // A root of multiplicity m of θh is a simple root of θ^{m-1}(θh).
            LaurentPolynomial d = euler_derivative(h, 0);
            for (int m = 1; m < weight[k]; ++m) d = euler_derivative(d, 0);
            if (auto refined = newton_polish(LaurentSystem({d}), u, options.solver.newton))
                if (relative_distance(*refined, u) < options.cluster_radius) u = *refined;
        }
        points.push_back(make_critical_point(h, u, options.morse_tolerance));
    }

    if (interior && points.size() < expected && options.require_complete)
        throw SolveIncomplete("found " + std::to_string(points.size()) + " of " + std::to_string(expected) +
                                  " critical points",
                              std::move(points), expected);
    return points;
}

std::string to_string(CertificateStatus status) {
    switch (status) {
        case CertificateStatus::complete: return "complete";
        case CertificateStatus::incomplete: return "incomplete";
        case CertificateStatus::not_applicable: return "not-applicable";
    }
    return "unknown";
}

CountCertificate count_certificate(const std::vector<CriticalPoint>& points, const LatticePolytope& polytope) {
    CountCertificate cert;
    cert.found = points.size();
    cert.expected = normalized_volume(polytope);
    cert.min_separation = min_separation(points);
    if (!origin_interior(polytope)) {
        cert.status = CertificateStatus::not_applicable;
    } else if (BigInt(cert.found) == cert.expected && (points.size() < 2 || cert.min_separation > 1e-8)) {
        cert.status = CertificateStatus::complete;
    } else {
        cert.status = CertificateStatus::incomplete;
    }
    return cert;
}

DeformedSolution solve_deformed(const LaurentPolynomial& h0, const std::vector<cplx>& a,
                                const CriticalOptions& options) {
    const std::size_t n = h0.dim();
    if (a.size() != n) throw InvalidConfiguration("deformation vector has the wrong length");
    DeformedSolution out;
    out.expected = normalized_volume(newton_polytope(h0, false));
    const std::size_t expected = static_cast<std::size_t>(to_int64(out.expected));

    std::vector<LaurentPolynomial> eqs;
    for (std::size_t i = 0; i < n; ++i) eqs.push_back(euler_derivative(h0, i) - h0 * a[i]);
    for (const auto& e : eqs) {
        if (e.is_zero()) {
            // Identically satisfied equation: the solution set is not isolated.
            throw DegenerateConfiguration("deformed system has an identically zero equation");
        }
    }
    LaurentSystem system(eqs);
    SystemSolution sol = solve_torus_system(system, expected, true, options.solver);
    for (const auto& u : sol.logs) {
        CriticalPoint p;
        p.location = TorusPoint::from_logs(u);
        p.value = h0.evaluate_log(u);
        p.hessian_det = system.jacobian(u).determinant();
        p.local_scale = h0.term_scale_log(u);
        p.residual = system.absolute_residual(u);
        p.morse = is_morse(p.hessian_det, p.local_scale, options.morse_tolerance);
        out.points.push_back(std::move(p));
    }
    out.complete = out.points.size() == expected;
    if (!out.complete && options.require_complete)
        throw SolveIncomplete("deformed system: found " + std::to_string(out.points.size()) + " of " +
                                  std::to_string(expected),
                              out.points, expected);
    return out;
}

DeformationSample generic_deformation_sample(const PointConfiguration& config, const std::vector<cplx>& z,
                                             std::uint64_t seed, const CriticalOptions& options) {
    if (z.size() != config.size()) throw InvalidConfiguration("coefficient vector length mismatch");
    DeformationSample out;
    std::vector<IntVector> chosen;
    for (std::size_t j = 0; j < config.size() && chosen.size() < config.dim(); ++j) {
        auto trial = chosen;
        trial.push_back(config.point(j));
        if (rank_of(trial, config.dim()) == trial.size()) {
            chosen = std::move(trial);
            out.shifted.push_back(j);
        }
    }
    double norm = 0.0;
    for (auto v : z) norm = std::max(norm, std::abs(v));
    const double radius = 1e-2 * (norm > 0.0 ? norm : 1.0);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int attempt = 1; attempt <= 20; ++attempt) {
        std::vector<cplx> trial = z;
        if (attempt > 1) {
            for (std::size_t j : out.shifted) {
                const double r = radius * std::sqrt(unit(rng));
                trial[j] += std::polar(r, 2.0 * std::numbers::pi * unit(rng));
            }
        }
        bool ok = false;
        try {
            ok = in_omega_zero(config, trial, options);
        } catch (const Error&) {
            ok = false;
        }
        if (ok) {
            out.z = std::move(trial);
            out.attempts = attempt;
            return out;
        }
    }
    throw GenericityFailure("no Morse deformation found in 20 attempts");
}

}  // namespace gkz
