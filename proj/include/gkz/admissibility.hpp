#pragma once

// Nonresonance of c, non-degeneracy of h_z, and membership in Ω_0.

#include "gkz/critical_points.hpp"
#include "gkz/parameters.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gkz {

/// Ordered from strongest to weakest.
enum class Confidence { exact, numeric_certified, heuristic };
std::string to_string(Confidence c);
Confidence weakest(Confidence a, Confidence b);

struct FacetResonance {
    IntVector kappa;
    ExactComplex pairing;           // exact <kappa, c> when c is exact
    std::complex<double> approx;    // numeric <kappa, c>
    bool resonant = false;
};

struct ResonanceCheck {
    bool nonresonant = true;
    Confidence confidence = Confidence::exact;
    bool suspect = false;  // heuristic tier hit the 1e-9 band
    std::vector<FacetResonance> facets;  // the facets through 0
};

/// c ∉ Z^n + Lin(Γ) for every facet Γ through 0, decided by <κ, c> ∉ Z.
ResonanceCheck check_resonance(const LatticePolytope& delta, const ParameterVector& c);
bool nonresonant(const LatticePolytope& delta, const ParameterVector& c);

struct FaceEvidence {
    std::vector<IntVector> vertices;
    std::size_t dim = 0;
    bool nondegenerate = true;
    Confidence confidence = Confidence::exact;
    std::string method;                        // "vertex", "edge", "face-system"
    double separation = 0.0;                   // edge: min relative |p| at critical points of p
    std::optional<Eigen::VectorXcd> witness;   // torus point where ∇h^Γ vanishes
};

struct NondegeneracyCheck {
    bool nondegenerate = true;
    Confidence confidence = Confidence::exact;
    std::vector<FaceEvidence> faces;
};

/// Checks every proper face of Δ not containing 0. Throws UnsupportedDimension
/// for faces of dimension >= 2 when n > 3.
NondegeneracyCheck nondegenerate(const PointConfiguration& config, const std::vector<cplx>& z,
                                 const SolverOptions& options = {});

struct OmegaZeroCheck {
    bool in_omega_zero = false;
    NondegeneracyCheck nondegeneracy;
    std::vector<CriticalPoint> points;
    bool solve_complete = true;
    std::size_t non_morse = 0;
    double min_hessian_ratio = 0.0;  // min |H| / max(1, local scale)
};

OmegaZeroCheck check_omega_zero(const PointConfiguration& config, const std::vector<cplx>& z,
                                const CriticalOptions& options = {});
bool in_omega_zero(const PointConfiguration& config, const std::vector<cplx>& z,
                   const CriticalOptions& options = {});

struct AdmissibilityVerdict {
    ResonanceCheck resonance;
    NondegeneracyCheck nondegeneracy;
    bool in_omega_zero = false;
    std::size_t non_morse = 0;
    double min_hessian_ratio = 0.0;
    Confidence confidence = Confidence::exact;
};

AdmissibilityVerdict admissibility(const PointConfiguration& config, const ParameterVector& c,
                                   const std::vector<cplx>& z, const CriticalOptions& options = {});

}  // namespace gkz
