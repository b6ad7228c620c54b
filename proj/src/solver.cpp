#include "gkz/solver.hpp"

#include "gkz/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace gkz {

namespace {

constexpr double kTiny = 1e-300;

cplx horner(const std::vector<cplx>& p, cplx t) {
    cplx v = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * t + *it;
    return v;
}

std::vector<cplx> derivative(const std::vector<cplx>& p) {
    std::vector<cplx> d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<double>(k));
    return d;
}

bool finite(const Eigen::VectorXcd& v) {
    for (Eigen::Index k = 0; k < v.size(); ++k)
        if (!std::isfinite(v[k].real()) || !std::isfinite(v[k].imag())) return false;
    return true;
}

// Bivariate polynomial coefficients c[i][j] of x^i y^j after clearing the
// minimal monomial of a 2-variable Laurent polynomial.
using Grid = std::vector<std::vector<cplx>>;

Grid to_grid(const LaurentPolynomial& f) {
    std::int64_t mx = std::numeric_limits<std::int64_t>::max(), my = mx;
    std::int64_t Mx = std::numeric_limits<std::int64_t>::min(), My = Mx;
    for (const auto& t : f.terms()) {
        mx = std::min(mx, t.exponent[0]);
        my = std::min(my, t.exponent[1]);
        Mx = std::max(Mx, t.exponent[0]);
        My = std::max(My, t.exponent[1]);
    }
    Grid g(static_cast<std::size_t>(Mx - mx + 1),
           std::vector<cplx>(static_cast<std::size_t>(My - my + 1), 0.0));
    for (const auto& t : f.terms())
        g[static_cast<std::size_t>(t.exponent[0] - mx)][static_cast<std::size_t>(t.exponent[1] - my)] +=
            t.coeff;
    return g;
}

// Coefficients in y (low to high) at a fixed x.
std::vector<cplx> y_coefficients(const Grid& g, cplx x) {
    std::vector<cplx> out(g.front().size(), 0.0);
    cplx power = 1.0;
    for (const auto& row : g) {
        for (std::size_t j = 0; j < row.size(); ++j) out[j] += row[j] * power;
        power *= x;
    }
    return out;
}

std::vector<cplx> x_coefficients(const Grid& g) {
    std::vector<cplx> out;
    for (const auto& row : g) out.push_back(row.front());
    return out;
}

cplx sylvester_det(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    const std::size_t d1 = a.size() - 1, d2 = b.size() - 1, m = d1 + d2;
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(m),
                                                static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < d2; ++i)
        for (std::size_t k = 0; k <= d1; ++k)
            s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + k)) = a[d1 - k];
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t k = 0; k <= d2; ++k)
            s(static_cast<Eigen::Index>(d2 + i), static_cast<Eigen::Index>(i + k)) = b[d2 - k];
    return s.partialPivLu().determinant();
}

double hadamard_bound(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double na = 0.0, nb = 0.0;
    for (auto v : a) na += std::norm(v);
    for (auto v : b) nb += std::norm(v);
    const double d1 = static_cast<double>(a.size() - 1), d2 = static_cast<double>(b.size() - 1);
    return std::pow(std::sqrt(na), d2) * std::pow(std::sqrt(nb), d1);
}

void add_unique(std::vector<Eigen::VectorXcd>& found, const Eigen::VectorXcd& u, double radius) {
    for (const auto& f : found)
        if (relative_distance(f, u) < radius) return;
    found.push_back(principal_logs(u));
}

// x-candidates of the 2-variable system from the resultant in y.
std::optional<std::vector<cplx>> resultant_x_roots(const Grid& g1, const Grid& g2) {
    const std::size_t d1 = g1.front().size() - 1, d2 = g2.front().size() - 1;
    if (d1 == 0) return polynomial_roots(x_coefficients(g1));
    if (d2 == 0) return polynomial_roots(x_coefficients(g2));
    const std::size_t ex1 = g1.size() - 1, ex2 = g2.size() - 1;
    const std::size_t degree = d2 * ex1 + d1 * ex2;
    const std::size_t samples = degree + 1;
    std::vector<cplx> values(samples);
    double bound = 0.0, peak = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const cplx x = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) /
                                           static_cast<double>(samples));
        auto a = y_coefficients(g1, x), b = y_coefficients(g2, x);
        values[k] = sylvester_det(a, b);
        bound = std::max(bound, hadamard_bound(a, b));
        peak = std::max(peak, std::abs(values[k]));
    }
    if (!(peak > 1e-10 * bound)) return std::nullopt;  // numerically identically zero
    std::vector<cplx> coeffs(samples, 0.0);
    for (std::size_t m = 0; m < samples; ++m) {
        cplx sum = 0.0;
        for (std::size_t k = 0; k < samples; ++k)
            sum += values[k] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k * m % samples) /
                                                    static_cast<double>(samples));
        coeffs[m] = sum / static_cast<double>(samples);
    }
    double top = 0.0;
    for (auto c : coeffs) top = std::max(top, std::abs(c));
    for (auto& c : coeffs)
        if (std::abs(c) < 1e-13 * top) c = 0.0;
    return polynomial_roots(coeffs);
}

}  // namespace

std::vector<cplx> polynomial_roots(std::vector<cplx> coeffs) {
    while (!coeffs.empty() && coeffs.back() == cplx(0.0)) coeffs.pop_back();
    std::size_t low = 0;
    while (low < coeffs.size() && coeffs[low] == cplx(0.0)) ++low;
    coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(low));
    if (coeffs.size() < 2) return {};
    const std::size_t d = coeffs.size() - 1;

    // Rescale t = s·τ so that the extreme coefficients balance.
    const double s = std::pow(std::abs(coeffs.front()) / std::abs(coeffs.back()), 1.0 / static_cast<double>(d));
    std::vector<cplx> q(coeffs.size());
    for (std::size_t k = 0; k <= d; ++k) q[k] = coeffs[k] * std::pow(s, static_cast<double>(k));

    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d),
                                                        static_cast<Eigen::Index>(d));
    for (std::size_t i = 1; i < d; ++i)
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t k = 0; k < d; ++k)
        companion(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(d - 1)) = -q[k] / q[d];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);

    const auto dp = derivative(coeffs);
    std::vector<cplx> roots;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
        cplx t = solver.eigenvalues()[k] * s;
        for (int it = 0; it < 8; ++it) {
            const cplx f = horner(coeffs, t), df = horner(dp, t);
            if (df == cplx(0.0)) break;
            const cplx next = t - f / df;
            if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
            if (std::abs(horner(coeffs, next)) >= std::abs(f)) break;
            t = next;
        }
        if (t != cplx(0.0)) roots.push_back(t);
    }
    return roots;
}

LaurentSystem::LaurentSystem(std::vector<LaurentPolynomial> equations)
    : equations_(std::move(equations)) {
    const std::size_t n = equations_.size();
    for (const auto& f : equations_)
        if (f.dim() != n) throw InvalidConfiguration("system is not square");
    for (const auto& f : equations_) {
        std::vector<LaurentPolynomial> row;
        for (std::size_t j = 0; j < n; ++j) row.push_back(euler_derivative(f, j));
        jacobian_.push_back(std::move(row));
    }
}

Eigen::VectorXcd LaurentSystem::value(const Eigen::VectorXcd& u) const {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(dim()));
    for (std::size_t i = 0; i < dim(); ++i) v[static_cast<Eigen::Index>(i)] = equations_[i].evaluate_log(u);
    return v;
}

Eigen::MatrixXcd LaurentSystem::jacobian(const Eigen::VectorXcd& u) const {
    const auto n = static_cast<Eigen::Index>(dim());
    Eigen::MatrixXcd j(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c)
            j(r, c) = jacobian_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].evaluate_log(u);
    return j;
}

double LaurentSystem::relative_residual(const Eigen::VectorXcd& u) const {
    double worst = 0.0;
    for (const auto& f : equations_) {
        const double scale = std::max(f.term_scale_log(u), kTiny);
        worst = std::max(worst, std::abs(f.evaluate_log(u)) / scale);
    }
    return worst;
}

double LaurentSystem::absolute_residual(const Eigen::VectorXcd& u) const {
    double worst = 0.0;
    for (const auto& f : equations_) worst = std::max(worst, std::abs(f.evaluate_log(u)));
    return worst;
}

std::optional<Eigen::VectorXcd> newton_polish(const LaurentSystem& system, Eigen::VectorXcd u,
                                              const NewtonOptions& options) {
    double res = system.relative_residual(u);
    if (!std::isfinite(res)) return std::nullopt;
    for (int it = 0; it < options.max_iterations && res > 1e-15; ++it) {
        const Eigen::VectorXcd f = system.value(u);
        const Eigen::MatrixXcd j = system.jacobian(u);
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(j);
        if (lu.rank() < j.rows()) break;
        const Eigen::VectorXcd step = lu.solve(-f);
        if (!finite(step)) break;
        double damping = 1.0;
        bool improved = false;
        for (int h = 0; h < 12; ++h) {
            Eigen::VectorXcd trial = u + damping * step;
            if (trial.real().cwiseAbs().maxCoeff() > 600.0) {
                damping *= 0.5;
                continue;
            }
            const double r = system.relative_residual(trial);
            if (std::isfinite(r) && r < res) {
                u = trial;
                res = r;
                improved = true;
                break;
            }
            damping *= 0.5;
        }
        if (!improved) break;
        if (step.norm() * damping < 1e-15 * (1.0 + u.norm())) break;
    }
    if (res <= options.accept_residual) return principal_logs(u);
    return std::nullopt;
}

double relative_distance(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
    double worst = 0.0;
    for (Eigen::Index k = 0; k < u.size(); ++k) {
        // |e^a - e^b| / max(|e^a|, |e^b|) without overflow.
        const cplx a = u[k], b = v[k];
        const double top = std::max(a.real(), b.real());
        const cplx d = std::exp(a - top) - std::exp(b - top);
        worst = std::max(worst, std::abs(d));
    }
    return worst;
}

Eigen::VectorXcd principal_logs(const Eigen::VectorXcd& u) {
    Eigen::VectorXcd out = u;
    for (Eigen::Index k = 0; k < u.size(); ++k) {
        double im = std::remainder(u[k].imag(), 2.0 * std::numbers::pi);
        if (im <= -std::numbers::pi) im += 2.0 * std::numbers::pi;
        out[k] = {u[k].real(), im};
    }
    return out;
}

SystemSolution solve_torus_system(const LaurentSystem& system, std::size_t expected,
                                  bool stop_at_expected, const SolverOptions& options) {
    const std::size_t n = system.dim();
    SystemSolution out;
    for (const auto& f : system.equations())
        if (f.is_zero()) throw InvalidConfiguration("system has a zero equation");

    auto polish_and_add = [&](const Eigen::VectorXcd& seed) {
        if (!finite(seed)) return;
        if (auto u = newton_polish(system, seed, options.newton))
            add_unique(out.logs, *u, options.dedup_radius);
    };

    if (n == 1) {
        out.route = "companion";
        const auto& f = system.equations().front();
        std::int64_t lo = f.terms().front().exponent[0];
        std::int64_t hi = f.terms().back().exponent[0];
        std::vector<cplx> coeffs(static_cast<std::size_t>(hi - lo + 1), 0.0);
        for (const auto& t : f.terms()) coeffs[static_cast<std::size_t>(t.exponent[0] - lo)] = t.coeff;
        for (cplx r : polynomial_roots(coeffs)) {
            Eigen::VectorXcd u(1);
            u[0] = std::log(r);
            if (auto p = newton_polish(system, u, options.newton))
                add_unique(out.logs, *p, options.dedup_radius);
            else if (system.relative_residual(u) <= 1e-6)
                add_unique(out.logs, u, options.dedup_radius);
        }
    } else if (n == 2) {
        out.route = "resultant";
        const Grid g1 = to_grid(system.equations()[0]), g2 = to_grid(system.equations()[1]);
        if (auto xs = resultant_x_roots(g1, g2)) {
            for (cplx x0 : *xs) {
                const bool y_from_first = g1.front().size() > 1;
                const Grid& gy = y_from_first ? g1 : g2;
                if (gy.front().size() < 2) continue;
                for (cplx y0 : polynomial_roots(y_coefficients(gy, x0))) {
                    Eigen::VectorXcd u(2);
                    u << std::log(x0), std::log(y0);
                    if (system.relative_residual(u) > 1e-3) continue;
                    polish_and_add(u);
                }
            }
        } else {
            out.route = "multistart";
        }
    } else {
        out.route = "multistart";
    }

    const bool need_search = n >= 3 || out.route == "multistart" ||
                             (n == 2 && out.logs.size() < expected);
    if (need_search && !(stop_at_expected && out.logs.size() >= expected)) {
        if (out.route == "resultant") out.route = "resultant+multistart";
        std::mt19937_64 rng(options.seed);
        std::uniform_real_distribution<double> modulus(-1.0, 1.0);
        std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
        const std::size_t seeds = std::max<std::size_t>(expected, 1) * options.seeds_per_solution;
        for (std::size_t s = 0; s < seeds; ++s) {
            Eigen::VectorXcd u(static_cast<Eigen::Index>(n));
            for (std::size_t k = 0; k < n; ++k) {
                const double re = modulus(rng);
                u[static_cast<Eigen::Index>(k)] = {re, phase(rng)};
            }
            polish_and_add(u);
            if (stop_at_expected && out.logs.size() >= expected) break;
        }
    }

    std::sort(out.logs.begin(), out.logs.end(), [](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
        for (Eigen::Index k = 0; k < a.size(); ++k) {
            const cplx xa = std::exp(a[k]), xb = std::exp(b[k]);
            if (std::abs(xa.real() - xb.real()) > 1e-9 * (1.0 + std::abs(xa)))
                return xa.real() < xb.real();
            if (std::abs(xa.imag() - xb.imag()) > 1e-9 * (1.0 + std::abs(xa)))
                return xa.imag() < xb.imag();
        }
        return false;
    });
    return out;
}

}  // namespace gkz
