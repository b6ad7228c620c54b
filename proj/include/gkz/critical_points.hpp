#pragma once

// Critical points of h on the torus, their count certificate, and the
// deformed systems θ_i h0 - a_i h0 = 0.

#include "gkz/errors.hpp"
#include "gkz/laurent.hpp"
#include "gkz/solver.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gkz {

struct CriticalPoint {
    TorusPoint location;
    cplx value = 0.0;        // h(α)
    cplx hessian_det = 0.0;  // det(∂²h/∂x_j∂x_k) at α
    bool morse = false;
    double residual = 0.0;     // max_k |θ_k h(α)|
    double local_scale = 0.0;  // Σ |z_j α^{a(j)}|, the size of h near α
};

class SolveIncomplete : public Error {
public:
    SolveIncomplete(const std::string& message, std::vector<CriticalPoint> partial, std::size_t expected)
        : Error("SolveIncomplete", message), partial_(std::move(partial)), expected_(expected) {}

    const std::vector<CriticalPoint>& partial() const { return partial_; }
    std::size_t expected() const { return expected_; }

private:
    std::vector<CriticalPoint> partial_;
    std::size_t expected_;
};

struct CriticalOptions {
    SolverOptions solver;
    double morse_tolerance = 1e-10;
    /// Solutions closer than this are one multiple root resolved to sqrt(eps).
    double cluster_radius = 1e-6;
    /// Throw SolveIncomplete when 0 ∈ Int NP(h) ∪ {0} and fewer than Vol_Z points are found.
    bool require_complete = true;
};

/// |H| >= tol * max(1, local scale).
bool is_morse(cplx hessian_det, double local_scale, double tolerance);

/// Fills value, Hessian, residual and Morse flag for a torus point.
CriticalPoint make_critical_point(const LaurentPolynomial& h, const Eigen::VectorXcd& logs,
                                  double morse_tolerance = 1e-10);

/// Torus solutions of θ_1 h = ... = θ_n h = 0, deduplicated and polished.
std::vector<CriticalPoint> solve_critical(const LaurentPolynomial& h, const CriticalOptions& options = {});

enum class CertificateStatus { complete, incomplete, not_applicable };
std::string to_string(CertificateStatus status);

struct CountCertificate {
    std::size_t found = 0;
    BigInt expected;
    CertificateStatus status = CertificateStatus::not_applicable;
    double min_separation = 0.0;  // smallest pairwise relative distance
};

CountCertificate count_certificate(const std::vector<CriticalPoint>& points, const LatticePolytope& polytope);

struct DeformedSolution {
    /// value = h0(x); hessian_det = det of the logarithmic Jacobian of the system.
    std::vector<CriticalPoint> points;
    BigInt expected;  // Vol_Z(NP(h0))
    bool complete = false;
};

/// Torus solutions of θ_i h0 - a_i h0 = 0, the critical points of h0 x^{-a}.
DeformedSolution solve_deformed(const LaurentPolynomial& h0, const std::vector<cplx>& a,
                                const CriticalOptions& options = {.require_complete = false});

struct DeformationSample {
    std::vector<cplx> z;
    std::vector<std::size_t> shifted;  // indices b(1..n) into A
    int attempts = 0;
};

/// Shifts the coefficients of the first n linearly independent points of A by
/// random α in the polydisk of radius 1e-2 |z| until in_omega_zero holds.
/// The first attempt uses α = 0. Throws GenericityFailure after 20 attempts.
DeformationSample generic_deformation_sample(const PointConfiguration& config, const std::vector<cplx>& z,
                                             std::uint64_t seed, const CriticalOptions& options = {});

}  // namespace gkz
