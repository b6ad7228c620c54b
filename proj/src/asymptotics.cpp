#include "gkz/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gkz {

namespace {

constexpr double pi = std::numbers::pi;

double wrap(double theta) {
    theta = std::fmod(theta, 2 * pi);
    if (theta < 0) theta += 2 * pi;
    if (theta >= 2 * pi) theta -= 2 * pi;
    return theta;
}

}  // namespace

cplx AsymptoticTerm::evaluate(cplx lambda) const {
    return prefactor * std::exp(lambda * rate + power * std::log(lambda));
}

AsymptoticTerm leading_term(const LaurentPolynomial& h, const ParameterVector& c, const CriticalPoint& saddle,
                            std::size_t index, cplx rotation, const AsymptoticOptions& options) {
    if (!saddle.morse) throw HypothesisViolation("leading term needs a Morse saddle");
    const auto n = saddle.location.logs.size();
    cplx monomial = std::pow(cplx(0, 1), static_cast<int>(n));
    for (Eigen::Index k = 0; k < n; ++k)
        monomial *= std::exp((c.value(static_cast<std::size_t>(k)) - 1.0) * saddle.location.logs[k]);

    AsymptoticTerm term;
    term.saddle = index;
    term.prefactor = monomial * std::pow(2 * pi, 0.5 * static_cast<double>(n)) / std::sqrt(saddle.hessian_det);
    term.rate = saddle.value;
    term.power = -0.5 * static_cast<double>(n);
    if (!options.calibrate) return term;

    AsymptoticOptions forced = options;
    forced.force = true;
    const Thimble probe{saddle, {}, {}, {}, rotation, 1};
    const cplx r = asymptotic_ratio(h, c, term, probe, {options.calibration_lambda}, forced).front().ratio;
    if (std::abs(r + 1.0) < std::abs(r - 1.0)) {
        term.prefactor = -term.prefactor;
        term.sqrt_branch = -1;
        term.calibration_ratio = -r;
    } else {
        term.calibration_ratio = r;
    }
    term.calibrated = true;
    return term;
}

std::vector<RatioSample> asymptotic_ratio(const LaurentPolynomial& h, const ParameterVector& c,
                                          const AsymptoticTerm& term, const Thimble& thimble,
                                          const std::vector<cplx>& lambdas, const AsymptoticOptions& options) {
    std::vector<RatioSample> out;
    for (cplx lambda : lambdas) {
        if (lambda == 0.0) throw HypothesisViolation("λ = 0");
        if (!options.force && std::abs(std::arg(lambda)) >= options.sector_delta)
            throw HypothesisViolation("λ outside the sector |arg λ| < " + std::to_string(options.sector_delta));
        const LaurentPolynomial scaled = h * lambda;
        const CriticalPoint saddle = make_critical_point(scaled, thimble.saddle.location.logs);
        const Thimble t = trace_thimble(scaled, saddle, thimble.rotation, options.flow);
        const IntegralResult r = integrate_cycle(scaled, c, t, options.quadrature);
        const cplx expected = term.evaluate(lambda);
        out.push_back({lambda, r.value, r.error_estimate, r.value / expected});
    }
    return out;
}

cplx first_correction(const std::vector<RatioSample>& samples) {
    if (samples.empty()) return 0.0;
    auto scaled = [](const RatioSample& s) { return s.lambda * (s.ratio - 1.0); };
    if (samples.size() == 1) return scaled(samples.back());
    const RatioSample& a = samples[samples.size() - 2];
    const RatioSample& b = samples.back();
    // λ(r - 1) = b1 + b2/λ + ...; eliminate b2.
    return (b.lambda * scaled(b) - a.lambda * scaled(a)) / (b.lambda - a.lambda);
}

StokesTable stokes_lines(const std::vector<CriticalPoint>& critical) {
    StokesTable table;
    for (std::size_t i = 0; i < critical.size(); ++i)
        for (std::size_t j = i + 1; j < critical.size(); ++j) {
            const cplx d = critical[i].value - critical[j].value;
            if (std::abs(d) < 1e-10) {
                table.skipped.push_back({i, j});
                continue;
            }
            const double theta = std::fmod(wrap(pi / 2 - std::arg(d)), pi);
            table.lines.push_back({i, j, {theta, theta + pi}});
        }
    return table;
}

Dominance dominance_order(const std::vector<CriticalPoint>& critical, cplx lambda, double tolerance) {
    Dominance d;
    std::vector<double> key(critical.size());
    double scale = 1.0;
    for (std::size_t i = 0; i < critical.size(); ++i) {
        key[i] = (lambda * critical[i].value).real();
        scale = std::max(scale, std::abs(critical[i].value));
    }
    d.order.resize(critical.size());
    for (std::size_t i = 0; i < critical.size(); ++i) d.order[i] = i;
    std::stable_sort(d.order.begin(), d.order.end(), [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });
    const double band = tolerance * std::abs(lambda) * scale;
    for (std::size_t i = 0; i < critical.size(); ++i)
        for (std::size_t j = i + 1; j < critical.size(); ++j)
            if (std::abs(key[i] - key[j]) <= band) d.ties.push_back({i, j});
    return d;
}

}  // namespace gkz
