#include "gkz/quadrature.hpp"

#include "gkz/parallel.hpp"
#include "gkz/rules.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

namespace gkz {

namespace {

// Exponent of x in u-coordinates: x^{c-1} dx = x^c du, x^{c-1} dx/x = x^{c-1} du.
Eigen::VectorXcd log_weight_exponent(const ParameterVector& c, std::size_t n, VolumeForm form) {
    if (c.size() != n) throw InvalidConfiguration("parameter vector has the wrong length");
    Eigen::VectorXcd w(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) w[static_cast<Eigen::Index>(k)] = c.value(k) - (form == VolumeForm::logarithmic ? 1.0 : 0.0);
    return w;
}

cplx density(const LaurentPolynomial& h, const Eigen::VectorXcd& w, const Eigen::VectorXcd& u) {
    return std::exp(h.evaluate_log(u) + (w.transpose() * u)(0));
}

struct Piece {
    std::size_t segment;
    double s0, s1;
    cplx k15;
    double error;
    double l1;
    bool operator<(const Piece& o) const { return error < o.error; }
};

}  // namespace

IntegralResult integrate_cycle(const LaurentPolynomial& h, const ParameterVector& c, const Cycle1D& cycle,
                               const QuadratureOptions& options) {
    if (h.dim() != 1) throw UnsupportedDimension("polyline cycles are one-dimensional");
    if (cycle.samples.size() < 2) throw InvalidConfiguration("cycle has fewer than two samples");
    const cplx w = log_weight_exponent(c, 1, options.form)[0];
    const cplx wm1 = w - 1.0;
    const KronrodRule& rule = kronrod15();

    auto log_modulus = [&](cplx l) {
        Eigen::VectorXcd u(1);
        u[0] = l;
        return (h.evaluate_log(u) + wm1 * l).real() + std::abs(l.real());
    };
    if (!cycle.closed) {
        double peak = -std::numeric_limits<double>::infinity();
        for (const auto& s : cycle.samples) peak = std::max(peak, log_modulus(s.logs[0]));
        for (const auto* s : {&cycle.samples.front(), &cycle.samples.back()})
            if (log_modulus(s->logs[0]) > peak + std::log(1e-12))
                throw NonDecayingEndpoint("integrand is not negligible at a cycle endpoint");
    }

    IntegralResult result;
    auto evaluate = [&](std::size_t seg, double s0, double s1) {
        const cplx xa = cycle.samples[seg].coords[0], xb = cycle.samples[seg + 1].coords[0];
        const cplx la = cycle.samples[seg].logs[0];
        const cplx dx = xb - xa;
        const double half = 0.5 * (s1 - s0), mid = 0.5 * (s0 + s1);
        Piece p{seg, s0, s1, 0.0, 0.0, 0.0};
        cplx g7 = 0.0;
        for (std::size_t k = 0; k < 15; ++k) {
            const double s = mid + half * rule.nodes[k];
            const cplx x = xa + s * dx;
            Eigen::VectorXcd u(1);
            u[0] = la + std::log(x / xa);
            const cplx f = std::exp(h.evaluate_log(u) + wm1 * u[0]) * dx;
            p.k15 += rule.kronrod[k] * half * f;
            g7 += rule.gauss[k] * half * f;
            p.l1 += rule.kronrod[k] * half * std::abs(f);
        }
        p.error = std::abs(p.k15 - g7);
        result.evaluations += 15;
        return p;
    };

    std::priority_queue<Piece> queue;
    cplx total = 0.0;
    double error = 0.0, l1 = 0.0;
    for (std::size_t k = 0; k + 1 < cycle.samples.size(); ++k) {
        Piece p = evaluate(k, 0.0, 1.0);
        total += p.k15;
        error += p.error;
        l1 += p.l1;
        queue.push(p);
    }
    while (error > std::max(options.tolerance * std::abs(total), 1e-15 * l1) &&
           result.evaluations < options.max_evaluations) {
        const Piece worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.s0 + worst.s1);
        const Piece a = evaluate(worst.segment, worst.s0, mid);
        const Piece b = evaluate(worst.segment, mid, worst.s1);
        total += a.k15 + b.k15 - worst.k15;
        error += a.error + b.error - worst.error;
        l1 += a.l1 + b.l1 - worst.l1;
        queue.push(a);
        queue.push(b);
    }
    // Recompute the sums to drop accumulated cancellation in the running totals.
    total = 0.0;
    error = 0.0;
    while (!queue.empty()) {
        total += queue.top().k15;
        error += queue.top().error;
        queue.pop();
    }
    result.value = total;
    result.error_estimate = error;
    return result;
}

IntegralResult integrate_cycle(const LaurentPolynomial& h, const ParameterVector& c, const Thimble& thimble,
                               const QuadratureOptions& options) {
    const std::size_t n = h.dim();
    const Eigen::VectorXcd w = log_weight_exponent(c, n, options.form);
    const KronrodRule& rule = kronrod15();
    const Eigen::VectorXcd& u0 = thimble.saddle.location.logs;
    const cplx f0 = density(h, w, u0);

    // ∫ f(u(ρ)) J(ρ) dρ over one ray, with J = du/dρ (n = 1) or det[du/dρ, w].
    auto ray_integral = [&](const DescentPath& ray, IntegralResult& r) {
        for (const auto& p : ray.panels) {
            const double half = 0.5 * (p.b - p.a);
            cplx k15 = 0.0, g7 = 0.0;
            for (std::size_t k = 0; k < 15; ++k) {
                const cplx jac = n == 1 ? p.du[k][0] : p.du[k][0] * p.w[k][1] - p.du[k][1] * p.w[k][0];
                const cplx f = density(h, w, p.u[k]) * jac;
                k15 += rule.kronrod[k] * half * f;
                g7 += rule.gauss[k] * half * f;
            }
            r.value += k15;
            r.error_estimate += std::abs(k15 - g7);
            r.evaluations += 15;
        }
    };

    IntegralResult out;
    if (n == 1) {
        if (thimble.rays.size() != 2) throw InvalidConfiguration("one-dimensional thimble needs two rays");
        IntegralResult up, down;
        ray_integral(thimble.rays[0], up);
        ray_integral(thimble.rays[1], down);
        const double rho0 = thimble.rays[0].rho0;
        out.value = up.value - down.value + 2.0 * rho0 * thimble.frame.basis(0, 0) * f0;
        out.error_estimate = up.error_estimate + down.error_estimate;
        out.evaluations = up.evaluations + down.evaluations + 1;
    } else if (n == 2) {
        if (thimble.fan.empty() || thimble.rays.size() != 15 * thimble.fan.size())
            throw InvalidConfiguration("two-dimensional thimble needs a complete angular fan");
        for (const auto& panel : thimble.fan) {
            const double half = 0.5 * (panel.b - panel.a);
            cplx k15 = 0.0, g7 = 0.0;
            for (std::size_t k = 0; k < 15; ++k) {
                IntegralResult ray;
                ray_integral(thimble.rays[panel.first + k], ray);
                k15 += rule.kronrod[k] * half * ray.value;
                g7 += rule.gauss[k] * half * ray.value;
                out.error_estimate += rule.kronrod[k] * half * ray.error_estimate;
                out.evaluations += ray.evaluations;
            }
            out.value += k15;
            out.error_estimate += std::abs(k15 - g7);
        }
        const double rho0 = thimble.rays[0].rho0;
        out.value += f0 * thimble.frame.basis.determinant() * std::numbers::pi * rho0 * rho0;
        out.evaluations += 1;
    } else {
        throw UnsupportedDimension("thimble quadrature is implemented for n <= 2");
    }
    out.value *= static_cast<double>(thimble.orientation);
    return out;
}

IntegralResult integrate_cycle(const LaurentPolynomial& h, const ParameterVector& c, const Cycle& cycle,
                               const QuadratureOptions& options) {
    return std::visit([&](const auto& cyc) { return integrate_cycle(h, c, cyc, options); }, cycle);
}

std::vector<IntegralResult> period_vector(const LaurentPolynomial& h, const ParameterVector& c,
                                          const std::vector<Cycle>& basis, const QuadratureOptions& options) {
    std::vector<IntegralResult> out(basis.size());
    parallel_for(basis.size(), [&](std::size_t k) { out[k] = integrate_cycle(h, c, basis[k], options); });
    return out;
}

namespace {

// Central-difference stencils for d^k/dt^k, k = 0..3: offsets and weights
// for unit step.
struct Stencil {
    std::vector<int> offsets;
    std::vector<double> weights;
};

Stencil stencil(int order) {
    switch (order) {
        case 0: return {{0}, {1.0}};
        case 1: return {{-1, 1}, {-0.5, 0.5}};
        case 2: return {{-1, 0, 1}, {1.0, -2.0, 1.0}};
        case 3: return {{-2, -1, 1, 2}, {-0.5, 1.0, -1.0, 0.5}};
        default: throw InvalidConfiguration("derivative order above 3");
    }
}

struct Derivative {
    std::vector<cplx> value;   // per basis element
    std::vector<double> noise;  // quadrature error amplified by the stencil
};

class Differentiator {
public:
    Differentiator(const PointConfiguration& config, const ParameterVector& c, const std::vector<cplx>& z,
                   const std::vector<Cycle>& basis)
        : config_(config), c_(c), z_(z), basis_(basis) {
        options_.tolerance = 1e-13;
    }

    // ∂^alpha u with steps rel * |z_j|.
    Derivative apply(const std::vector<int>& alpha, double rel) {
        const std::size_t nz = z_.size();
        double zmax = 0.0;
        for (auto v : z_) zmax = std::max(zmax, std::abs(v));
        std::vector<Stencil> st;
        std::vector<double> steps(nz);
        for (std::size_t j = 0; j < nz; ++j) {
            st.push_back(stencil(alpha[j]));
            steps[j] = rel * (std::abs(z_[j]) > 0.0 ? std::abs(z_[j]) : std::max(zmax, 1.0));
        }
        Derivative d;
        d.value.assign(basis_.size(), 0.0);
        d.noise.assign(basis_.size(), 0.0);
        std::vector<std::size_t> idx(nz, 0);
        while (true) {
            std::vector<cplx> zp = z_;
            double weight = 1.0;
            for (std::size_t j = 0; j < nz; ++j) {
                zp[j] += static_cast<double>(st[j].offsets[idx[j]]) * steps[j];
                weight *= st[j].weights[idx[j]] / std::pow(steps[j], alpha[j]);
            }
            const auto periods = period_vector(from_config(config_, zp), c_, basis_, options_);
            for (std::size_t k = 0; k < basis_.size(); ++k) {
                d.value[k] += weight * periods[k].value;
                d.noise[k] += std::abs(weight) * periods[k].error_estimate;
            }
            std::size_t j = 0;
            while (j < nz && ++idx[j] == st[j].offsets.size()) idx[j++] = 0;
            if (j == nz) break;
        }
        return d;
    }

    // Richardson extrapolation of a second-order accurate difference.
    Derivative richardson(const std::vector<int>& alpha, double rel) {
        Derivative coarse = apply(alpha, rel), fine = apply(alpha, 0.5 * rel);
        for (std::size_t k = 0; k < coarse.value.size(); ++k) {
            fine.value[k] = (4.0 * fine.value[k] - coarse.value[k]) / 3.0;
            fine.noise[k] = (4.0 * fine.noise[k] + coarse.noise[k]) / 3.0;
        }
        return fine;
    }

private:
    const PointConfiguration& config_;
    const ParameterVector& c_;
    const std::vector<cplx>& z_;
    const std::vector<Cycle>& basis_;
    QuadratureOptions options_;
};

}  // namespace

double check_pde(const PointConfiguration& config, const ParameterVector& c, const std::vector<cplx>& z,
                 const std::vector<Cycle>& basis, const PdeOperator& op) {
    const std::size_t nz = config.size(), n = config.dim();
    if (z.size() != nz) throw InvalidConfiguration("coefficient vector length mismatch");
    if (c.size() != n) throw InvalidConfiguration("parameter vector has the wrong length");
    Differentiator diff(config, c, z, basis);
    const std::vector<int> none(nz, 0);
    const Derivative u = diff.apply(none, 0.0);
    double worst = 0.0;

    if (op.kind == PdeOperator::Kind::euler) {
        if (op.row >= n) throw InvalidConfiguration("Euler row out of range");
        std::vector<cplx> residual(basis.size());
        std::vector<double> scale(basis.size()), noise(basis.size());
        for (std::size_t k = 0; k < basis.size(); ++k) {
            residual[k] = c.value(op.row) * u.value[k];
            scale[k] = std::abs(residual[k]);
            noise[k] = std::abs(c.value(op.row)) * u.noise[k];
        }
        for (std::size_t j = 0; j < nz; ++j) {
            const double a = static_cast<double>(to_int64(config.point(j)[op.row]));
            if (a == 0.0) continue;
            std::vector<int> alpha = none;
            alpha[j] = 1;
            const Derivative d = diff.apply(alpha, 1e-4);
            for (std::size_t k = 0; k < basis.size(); ++k) {
                const cplx term = a * z[j] * d.value[k];
                residual[k] += term;
                scale[k] += std::abs(term);
                noise[k] += std::abs(a * z[j]) * d.noise[k];
            }
        }
        for (std::size_t k = 0; k < basis.size(); ++k) {
            if (!(noise[k] < scale[k])) throw StepTooSmall("finite-difference noise exceeds the operator scale");
            worst = std::max(worst, std::abs(residual[k]) / scale[k]);
        }
        return worst;
    }

    if (op.mu.size() != nz) throw InvalidConfiguration("box vector has the wrong length");
    std::int64_t norm1 = 0;
    for (auto m : op.mu) norm1 += std::abs(m);
    if (norm1 == 0 || norm1 > 3) throw InvalidConfiguration("box operators need 1 <= |mu|_1 <= 3");
    for (std::size_t i = 0; i < n; ++i) {
        BigInt s = 0;
        for (std::size_t j = 0; j < nz; ++j) s += config.point(j)[i] * BigInt(op.mu[j]);
        if (s != 0) throw InvalidConfiguration("box vector is not in the kernel of A");
    }
    std::vector<int> plus(nz, 0), minus(nz, 0);
    for (std::size_t j = 0; j < nz; ++j) (op.mu[j] > 0 ? plus : minus)[j] = static_cast<int>(std::abs(op.mu[j]));
    auto derivative = [&](const std::vector<int>& alpha) {
        int order = 0;
        for (int a : alpha) order += a;
        if (order == 0) return u;
        return diff.richardson(alpha, 1e-3);
    };
    const Derivative dp = derivative(plus), dm = derivative(minus);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const double scale = std::abs(dp.value[k]) + std::abs(dm.value[k]);
        if (!(dp.noise[k] + dm.noise[k] < scale)) throw StepTooSmall("finite-difference noise exceeds the operator scale");
        worst = std::max(worst, std::abs(dp.value[k] - dm.value[k]) / scale);
    }
    return worst;
}

}  // namespace gkz
