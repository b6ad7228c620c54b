#pragma once

// Leading saddle-point terms of the thimble integrals under z -> λz, and the
// Stokes geometry of the critical values.

#include "gkz/critical_points.hpp"
#include "gkz/parameters.hpp"
#include "gkz/quadrature.hpp"
#include "gkz/thimbles.hpp"

#include <array>
#include <utility>
#include <vector>

namespace gkz {

struct AsymptoticOptions {
    bool calibrate = true;
    double calibration_lambda = 30.0;
    double sector_delta = 0.3;  // admissible |arg λ|
    bool force = false;         // evaluate outside the sector anyway
    FlowOptions flow;
    QuadratureOptions quadrature;
};

/// prefactor · exp(λ rate) · λ^power.
struct AsymptoticTerm {
    std::size_t saddle = 0;
    cplx prefactor = 0.0;  // i^n α^{c-1} (2π)^{n/2} / √H
    cplx rate = 0.0;       // h(α)
    double power = 0.0;    // -n/2
    int sqrt_branch = 1;   // +1 principal √H, -1 after calibration flipped it
    bool calibrated = false;
    cplx calibration_ratio = 0.0;  // numeric / term at the calibration λ, after the flip

    cplx evaluate(cplx lambda) const;
};

/// The term for one Morse saddle. With options.calibrate the principal √H is
/// checked against the thimble integral at calibration_lambda and flipped
/// when that ratio is nearer -1; `rotation` is the thimble's tie rotation.
AsymptoticTerm leading_term(const LaurentPolynomial& h, const ParameterVector& c, const CriticalPoint& saddle,
                            std::size_t index = 0, cplx rotation = 1.0, const AsymptoticOptions& options = {});

struct RatioSample {
    cplx lambda = 0.0;
    cplx integral = 0.0;   // thimble integral for λh
    double error_estimate = 0.0;
    cplx ratio = 0.0;      // integral / term
};

/// Retraces the thimble for every λh and divides by the term. Throws
/// HypothesisViolation for λ outside |arg λ| < sector_delta unless forced.
std::vector<RatioSample> asymptotic_ratio(const LaurentPolynomial& h, const ParameterVector& c,
                                          const AsymptoticTerm& term, const Thimble& thimble,
                                          const std::vector<cplx>& lambdas, const AsymptoticOptions& options = {});

/// b with ratio ≈ 1 + b/λ, by Richardson extrapolation of λ(ratio - 1) over
/// the last two samples of a ladder.
cplx first_correction(const std::vector<RatioSample>& samples);

/// Directions θ where Re[e^{iθ}(v_i - v_j)] = 0; angles[1] = angles[0] + π.
struct StokesLine {
    std::size_t i = 0, j = 0;
    std::array<double, 2> angles{};
};

struct StokesTable {
    std::vector<StokesLine> lines;
    std::vector<std::pair<std::size_t, std::size_t>> skipped;  // |v_i - v_j| < 1e-10
};

StokesTable stokes_lines(const std::vector<CriticalPoint>& critical);

struct Dominance {
    std::vector<std::size_t> order;  // decreasing Re(λ v)
    std::vector<std::pair<std::size_t, std::size_t>> ties;
};

/// Ties are pairs with |Re λ(v_i - v_j)| <= tolerance |λ| max(1, max |v|).
Dominance dominance_order(const std::vector<CriticalPoint>& critical, cplx lambda, double tolerance = 1e-9);

}  // namespace gkz
