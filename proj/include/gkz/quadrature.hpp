#pragma once

// Numerical evaluation of ∫ exp(h) x^{c-1} dx over sector connectors and
// descent thimbles, and finite-difference checks of the GKZ equations.

#include "gkz/errors.hpp"
#include "gkz/laurent.hpp"
#include "gkz/parameters.hpp"
#include "gkz/thimbles.hpp"

#include <cstddef>
#include <vector>

namespace gkz {

/// standard: x^{c-1} dx_1 ∧ ... ∧ dx_n. logarithmic: x^{c-1} dx/x, the
/// normalization of the Bessel generating-function integrals.
enum class VolumeForm { standard, logarithmic };

struct QuadratureOptions {
    double tolerance = 1e-9;  // relative target for polyline integrals
    std::size_t max_evaluations = 4'000'000;
    VolumeForm form = VolumeForm::standard;
};

struct IntegralResult {
    cplx value = 0.0;
    double error_estimate = 0.0;  // a-posteriori, not a bound
    std::size_t evaluations = 0;
};

/// Globally adaptive G7/K15 over the polyline segments. Throws
/// NonDecayingEndpoint when an open cycle ends where the integrand is not
/// negligible.
IntegralResult integrate_cycle(const LaurentPolynomial& h, const ParameterVector& c, const Cycle1D& cycle,
                               const QuadratureOptions& options = {});

/// Integral of the original h over a stored thimble. n = 1: the two rays
/// joined through the saddle. n = 2: the angular Kronrod panels of the fan,
/// with the pullback det[∂u/∂ρ, ∂u/∂φ] taken from the stored tangents.
IntegralResult integrate_cycle(const LaurentPolynomial& h, const ParameterVector& c, const Thimble& thimble,
                               const QuadratureOptions& options = {});

IntegralResult integrate_cycle(const LaurentPolynomial& h, const ParameterVector& c, const Cycle& cycle,
                               const QuadratureOptions& options = {});

std::vector<IntegralResult> period_vector(const LaurentPolynomial& h, const ParameterVector& c,
                                          const std::vector<Cycle>& basis, const QuadratureOptions& options = {});

/// An Euler operator (row i of A) or a box operator for μ ∈ Ker A.
struct PdeOperator {
    enum class Kind { euler, box } kind = Kind::euler;
    std::size_t row = 0;
    std::vector<std::int64_t> mu;

    static PdeOperator euler(std::size_t row) { return {Kind::euler, row, {}}; }
    static PdeOperator box(std::vector<std::int64_t> mu) { return {Kind::box, 0, std::move(mu)}; }
};

/// Max over the basis of |operator u| / (sum of the moduli of its terms),
/// with u differentiated by central differences in z along the fixed cycles.
/// Throws StepTooSmall when the quadrature noise amplified by the stencil
/// exceeds that scale.
double check_pde(const PointConfiguration& config, const ParameterVector& c, const std::vector<cplx>& z,
                 const std::vector<Cycle>& basis, const PdeOperator& op);

}  // namespace gkz
