#pragma once

// Rapid-decay integration cycles: sector connectors for n = 1 and
// steepest-descent thimbles through Morse critical points.

#include "gkz/critical_points.hpp"
#include "gkz/errors.hpp"
#include "gkz/laurent.hpp"
#include "gkz/parameters.hpp"

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gkz {

enum class Divisor { at_zero, at_infinity };
std::string to_string(Divisor d);

/// Open arc of directions θ in which exp(h) decays near the divisor.
struct Sector {
    Divisor divisor = Divisor::at_infinity;
    int index = 0;
    double lo = 0.0;  // in [0, 2π)
    double hi = 0.0;  // lo + π/m

    double mid() const { return 0.5 * (lo + hi); }
};

/// Decay sectors of a one-variable h at 0 or ∞, sorted by lo. Throws NoPole
/// when h has no pole there.
std::vector<Sector> sectors_1d(const LaurentPolynomial& h, Divisor which);

/// A polyline in C^* with continuously tracked logarithms. Consecutive
/// vertices are joined by straight segments along which the log changes by
/// less than π/4.
struct Cycle1D {
    std::vector<TorusPoint> samples;
    std::optional<Sector> from_sector;
    std::optional<Sector> to_sector;
    int orientation = 1;
    bool closed = false;
    std::string kind;  // "connector" or "circle"
};

/// Connector from direction theta_from to theta_to (> theta_from) near the
/// given divisor: radially from the divisor to the arc radius, along the arc
/// counterclockwise, radially back. The end radii are pushed toward the
/// divisor until exp(h) x^{c-1} has decayed below 1e-18 of its path maximum.
/// With principal_start the logs are shifted so the first sample is on the
/// principal branch; otherwise the first log has argument theta_from.
Cycle1D sector_connector(const LaurentPolynomial& h, const ParameterVector& c, Divisor divisor,
                         double theta_from, double theta_to, bool principal_start = true);

/// Counterclockwise circle |x| = radius starting at angle start.
Cycle1D circle_cycle(double radius, double start = -3.141592653589793);

/// The Vol_Z(Δ) consecutive-sector connectors of a one-variable h.
/// Throws ResonantBranch when both divisors carry poles and c is an integer.
std::vector<Cycle1D> cycle_basis_1d(const LaurentPolynomial& h, const ParameterVector& c);

struct FlowOptions {
    double rho0 = 1e-6;        // launch radius in the Morse coordinate
    double r_cut = 41.4;       // stop once Re h has dropped by r_cut
    double panel_width = 0.25;
    double ode_tolerance = 1e-12;
    int max_depth = 14;        // panel bisections
    std::size_t rays = 64;     // minimum number of directions on the circle for n = 2
    std::size_t max_rays = 6000;
    double fan_tolerance = 1e-9;  // relative G7/K15 target for the angular panels
    double tie_delta = 1e-3;   // rotation z -> e^{iδ} z when critical values tie
    double tie_tolerance = 1e-9;
};

/// One Gauss-Kronrod panel [a, b] of a descent path in ρ, with
/// g(u(ρ)) = g(u0) - ρ^2 along the flow.
struct FlowPanel {
    double a = 0.0, b = 0.0;
    std::array<Eigen::VectorXcd, 15> u;   // log coordinates at the nodes
    std::array<Eigen::VectorXcd, 15> du;  // du/dρ
    std::array<Eigen::VectorXcd, 15> w;   // ∂u/∂φ (n = 2 only)
};

/// A descent ray u(ρ), ρ in [rho0, rho_max], launched along E t.
struct DescentPath {
    Eigen::VectorXd direction;  // t on the unit sphere of the descent subspace
    double rho0 = 0.0;
    double rho_max = 0.0;
    Eigen::VectorXcd start;     // u(rho0)
    Eigen::VectorXcd end;       // u(rho_max)
    std::vector<FlowPanel> panels;

    /// Node samples in ρ order, including both ends.
    std::vector<double> rhos() const;
    std::vector<TorusPoint> samples() const;
};

class FlowEscape : public Error {
public:
    FlowEscape(const std::string& message, DescentPath partial)
        : Error("FlowEscape", message), partial_(std::move(partial)) {}
    const DescentPath& partial() const { return partial_; }

private:
    DescentPath partial_;
};

/// Real-linear descent frame at a Morse saddle: columns e_k with
/// E^T G E = -2 I for the log-coordinate Hessian G, oriented so that
/// det(E) sqrt(det G) / i^n = 2^{n/2} (principal square root).
struct DescentFrame {
    Eigen::MatrixXcd basis;    // E
    Eigen::MatrixXcd hessian;  // G, second derivatives of h∘exp
    Eigen::MatrixXcd metric;   // E E^H / 2
};

DescentFrame descent_frame(const LaurentPolynomial& h, const Eigen::VectorXcd& saddle_logs);

/// Integrates the flow du/dρ = -2ρ M conj(p) / (p^T M conj p), p = ∇_u g,
/// from u0 + rho0 E t to ρ = sqrt(r_cut). With tangent set, also carries
/// w = ∂u/∂φ for t(φ) = (cos φ, sin φ) and its derivative t'.
DescentPath trace_descent(const LaurentPolynomial& h, const CriticalPoint& saddle, const Eigen::VectorXd& direction,
                          const FlowOptions& options = {}, const std::optional<Eigen::VectorXd>& tangent = std::nullopt);

/// Angular Gauss-Kronrod panel [a, b] of an n = 2 fan: rays first..first+14
/// sit at its 15 nodes, t(φ) = (cos φ, sin φ).
struct AngularPanel {
    double a = 0.0, b = 0.0;
    std::size_t first = 0;
};

struct Thimble {
    CriticalPoint saddle;
    DescentFrame frame;
    /// n = 1: directions +1, -1. n = 2: rays at the nodes of `fan`.
    /// n >= 3: ±coordinate directions (tracing only).
    std::vector<DescentPath> rays;
    std::vector<AngularPanel> fan;
    cplx rotation = 1.0;  // factor applied to h before tracing
    int orientation = 1;
};

/// Whether two critical values share Re or Im within tolerance (relative to
/// the largest |value|), which triggers the tie-breaking rotation.
bool critical_values_tie(const std::vector<CriticalPoint>& critical, double tolerance);

/// One thimble per critical point. Requires 0 ∈ Int(NP(h) ∪ {0}), a complete
/// count and Morse points; throws HypothesisViolation otherwise.
std::vector<Thimble> thimble_basis(const LaurentPolynomial& h, const std::vector<CriticalPoint>& critical,
                                   const FlowOptions& options = {});

/// The thimble of one saddle, traced for rotation * h.
Thimble trace_thimble(const LaurentPolynomial& h, const CriticalPoint& saddle, cplx rotation,
                      const FlowOptions& options = {});

/// Conservation checks along one ray of the function that was traced.
struct RayDiagnostics {
    double max_im_deviation = 0.0;  // max |Im h - Im h(saddle)|
    double saddle_scale = 0.0;      // |h(saddle)|
    bool re_decreasing = true;      // strictly, sample by sample
    std::size_t samples = 0;
};

RayDiagnostics ray_diagnostics(const LaurentPolynomial& traced, const Eigen::VectorXcd& saddle_logs,
                               const DescentPath& path);

/// Either kind of integration chain.
using Cycle = std::variant<Cycle1D, Thimble>;

}  // namespace gkz
