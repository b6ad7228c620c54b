#include "gkz/thimbles.hpp"

#include "gkz/parallel.hpp"
#include "gkz/rules.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace gkz {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_angle(double t) {
    t = std::fmod(t, two_pi);
    return t < 0.0 ? t + two_pi : t;
}

void require_univariate(const LaurentPolynomial& h) {
    if (h.dim() != 1) throw UnsupportedDimension("one-variable construction called with n = " + std::to_string(h.dim()));
    if (h.is_zero()) throw InvalidConfiguration("zero polynomial");
}

// log of |exp(h) x^{c-1}| * max(|x|, 1/|x|): covers both dx and dx/x.
double log_weight(const LaurentPolynomial& h, cplx cm1, cplx l) {
    Eigen::VectorXcd u(1);
    u[0] = l;
    return (h.evaluate_log(u) + cm1 * l).real() + std::abs(l.real());
}

double arc_radius(const LaurentPolynomial& h, Divisor divisor) {
    const auto& terms = h.terms();
    double radius = divisor == Divisor::at_infinity ? 0.0 : std::numeric_limits<double>::infinity();
    if (divisor == Divisor::at_infinity) {
        const auto& top = terms.back();
        for (std::size_t k = 0; k + 1 < terms.size(); ++k) {
            const double d = static_cast<double>(top.exponent[0] - terms[k].exponent[0]);
            radius = std::max(radius, std::pow(std::abs(terms[k].coeff) / std::abs(top.coeff), 1.0 / d));
        }
        return terms.size() > 1 ? radius : 1.0;
    }
    const auto& bottom = terms.front();
    for (std::size_t k = 1; k < terms.size(); ++k) {
        const double d = static_cast<double>(terms[k].exponent[0] - bottom.exponent[0]);
        radius = std::min(radius, std::pow(std::abs(bottom.coeff) / std::abs(terms[k].coeff), 1.0 / d));
    }
    return terms.size() > 1 ? radius : 1.0;
}

// Log-coordinate gradient and Hessian of g = h∘exp.
void log_derivatives(const LaurentPolynomial& h, const Eigen::VectorXcd& u, Eigen::VectorXcd& p,
                     Eigen::MatrixXcd* hess) {
    const auto n = static_cast<Eigen::Index>(h.dim());
    p = Eigen::VectorXcd::Zero(n);
    if (hess) *hess = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& t : h.terms()) {
        cplx s = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) s += static_cast<double>(t.exponent[static_cast<std::size_t>(k)]) * u[k];
        const cplx e = t.coeff * std::exp(s);
        for (Eigen::Index j = 0; j < n; ++j) {
            const double aj = static_cast<double>(t.exponent[static_cast<std::size_t>(j)]);
            p[j] += e * aj;
            if (hess)
                for (Eigen::Index k = 0; k < n; ++k)
                    (*hess)(j, k) += e * aj * static_cast<double>(t.exponent[static_cast<std::size_t>(k)]);
        }
    }
}

using State = std::vector<double>;

struct FlowFailure {
    std::string what;
};

// du/dρ = -2ρ M conj(p) / (p^T M conj p), optionally with the variational
// equation for w = ∂u/∂φ appended to the state.
struct Flow {
    const LaurentPolynomial* h;
    Eigen::MatrixXcd metric;
    Eigen::Index n;
    bool variational;

    void unpack(const State& y, Eigen::VectorXcd& u, Eigen::VectorXcd& w) const {
        u.resize(n);
        for (Eigen::Index k = 0; k < n; ++k) u[k] = {y[2 * k], y[2 * k + 1]};
        if (variational) {
            w.resize(n);
            for (Eigen::Index k = 0; k < n; ++k) w[k] = {y[2 * (n + k)], y[2 * (n + k) + 1]};
        }
    }

    void derivatives(const Eigen::VectorXcd& u, const Eigen::VectorXcd& w, double rho, Eigen::VectorXcd& du,
                     Eigen::VectorXcd& dw) const {
        Eigen::VectorXcd p;
        Eigen::MatrixXcd hess;
        log_derivatives(*h, u, p, variational ? &hess : nullptr);
        const Eigen::VectorXcd num = metric * p.conjugate();
        const double den = (p.transpose() * num)(0).real();
        if (!(den > 0.0) || !std::isfinite(den)) throw FlowFailure{"flow reached a critical point or overflowed"};
        du = -2.0 * rho * num / den;
        if (variational) {
            const Eigen::VectorXcd dp = hess * w;
            const double dden = 2.0 * (dp.transpose() * num)(0).real();
            dw = -2.0 * rho * (metric * dp.conjugate() / den - num * (dden / (den * den)));
        }
    }

    void operator()(const State& y, State& dy, double rho) const {
        Eigen::VectorXcd u, w, du, dw;
        unpack(y, u, w);
        derivatives(u, w, rho, du, dw);
        dy.resize(y.size());
        for (Eigen::Index k = 0; k < n; ++k) {
            dy[2 * k] = du[k].real();
            dy[2 * k + 1] = du[k].imag();
            if (variational) {
                dy[2 * (n + k)] = dw[k].real();
                dy[2 * (n + k) + 1] = dw[k].imag();
            }
        }
    }
};

State pack(const Eigen::VectorXcd& u, const Eigen::VectorXcd* w) {
    State y;
    for (Eigen::Index k = 0; k < u.size(); ++k) {
        y.push_back(u[k].real());
        y.push_back(u[k].imag());
    }
    if (w)
        for (Eigen::Index k = 0; k < w->size(); ++k) {
            y.push_back((*w)[k].real());
            y.push_back((*w)[k].imag());
        }
    return y;
}

double max_abs(const Eigen::VectorXcd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

class PanelTracer {
public:
    PanelTracer(const Flow& flow, const FlowOptions& options) : flow_(flow), options_(options) {}

    // Traces [a, b] from state ya, appending panels; returns the state at b.
    State trace(double a, double b, const State& ya, int depth, std::vector<FlowPanel>& out) {
        namespace odeint = boost::numeric::odeint;
        const KronrodRule& rule = kronrod15();
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        std::vector<double> times{a};
        for (double x : rule.nodes) times.push_back(mid + half * x);
        times.push_back(b);

        std::vector<State> states;
        State y = ya;
        auto stepper = odeint::make_dense_output(options_.ode_tolerance, options_.ode_tolerance,
                                                 odeint::runge_kutta_dopri5<State>());
        try {
            odeint::integrate_times(stepper, std::cref(flow_), y, times.begin(), times.end(), (b - a) / 16.0,
                                    [&](const State& s, double) {
                                        for (double v : s)
                                            if (!std::isfinite(v)) throw FlowFailure{"non-finite state"};
                                        for (Eigen::Index k = 0; k < flow_.n; ++k)
                                            if (std::abs(s[2 * k]) > 700.0)
                                                throw FlowFailure{"path left the representable torus"};
                                        states.push_back(s);
                                    },
                                    odeint::max_step_checker(20000));
        } catch (const FlowFailure&) {
            throw;
        } catch (const std::exception& e) {
            throw FlowFailure{std::string("step controller failed: ") + e.what()};
        }
        if (states.size() != times.size()) throw FlowFailure{"integrator skipped output times"};

        FlowPanel panel;
        panel.a = a;
        panel.b = b;
        Eigen::VectorXcd ua, wa, ub, wb;
        flow_.unpack(states.front(), ua, wa);
        flow_.unpack(states.back(), ub, wb);
        Eigen::VectorXcd ku = Eigen::VectorXcd::Zero(flow_.n), gu = ku, kw = ku, gw = ku;
        double fmax = 0.0, wmax = 0.0;
        for (std::size_t k = 0; k < 15; ++k) {
            Eigen::VectorXcd u, w, du, dw;
            flow_.unpack(states[k + 1], u, w);
            flow_.derivatives(u, w, times[k + 1], du, dw);
            panel.u[k] = u;
            panel.du[k] = du;
            ku += rule.kronrod[k] * half * du;
            gu += rule.gauss[k] * half * du;
            fmax = std::max(fmax, max_abs(du));
            if (flow_.variational) {
                panel.w[k] = w;
                kw += rule.kronrod[k] * half * dw;
                gw += rule.gauss[k] * half * dw;
                wmax = std::max(wmax, max_abs(dw));
            }
        }
        const double width = b - a;
        auto resolved = [&](const Eigen::VectorXcd& k15, const Eigen::VectorXcd& g7, const Eigen::VectorXcd& delta,
                            double peak, double size) {
            const double tol = 1e-9 * width * peak + 1e-11 * (1.0 + size);
            return max_abs(k15 - delta) <= tol && max_abs(k15 - g7) <= tol;
        };
        bool ok = resolved(ku, gu, ub - ua, fmax, max_abs(ub)) && max_abs(ub - ua) <= 0.5 * pi;
        if (flow_.variational) ok = ok && resolved(kw, gw, wb - wa, wmax, max_abs(wb));
        if (!ok && depth < options_.max_depth) {
            const State ym = trace(a, mid, ya, depth + 1, out);
            return trace(mid, b, ym, depth + 1, out);
        }
        out.push_back(std::move(panel));
        return states.back();
    }

private:
    const Flow& flow_;
    const FlowOptions& options_;
};

// ∫ e^{-ρ²} det[∂u/∂ρ, ∂u/∂φ] dρ along one ray: the parameter-free part of the
// n = 2 integrand, used to place the angular panels.
cplx fan_proxy(const DescentPath& ray) {
    const KronrodRule& rule = kronrod15();
    cplx sum = 0.0;
    for (const auto& p : ray.panels) {
        const double half = 0.5 * (p.b - p.a), mid = 0.5 * (p.a + p.b);
        for (std::size_t k = 0; k < 15; ++k) {
            const double rho = mid + half * rule.nodes[k];
            const cplx det = p.du[k][0] * p.w[k][1] - p.du[k][1] * p.w[k][0];
            sum += rule.kronrod[k] * half * std::exp(-rho * rho) * det;
        }
    }
    return sum;
}

// Adaptive Gauss-Kronrod panels over φ ∈ [0, 2π). Panels whose proxy error
// exceeds their share of the tolerance are split until the total passes.
void trace_fan(const LaurentPolynomial& traced, const CriticalPoint& saddle, const FlowOptions& options,
               Thimble& t) {
    struct Panel {
        double a, b;
        std::vector<DescentPath> rays;
        cplx k15 = 0.0;
        double error = 0.0, l1 = 0.0;
    };
    const KronrodRule& rule = kronrod15();
    auto build = [&](std::vector<Panel>& panels) {
        std::vector<std::pair<std::size_t, std::size_t>> jobs;
        for (std::size_t p = 0; p < panels.size(); ++p)
            if (panels[p].rays.empty()) {
                panels[p].rays.resize(15);
                for (std::size_t k = 0; k < 15; ++k) jobs.push_back({p, k});
            }
        parallel_for(jobs.size(), [&](std::size_t j) {
            auto [p, k] = jobs[j];
            Panel& panel = panels[p];
            const double phi = 0.5 * (panel.a + panel.b) + 0.5 * (panel.b - panel.a) * rule.nodes[k];
            Eigen::VectorXd d(2), dt(2);
            d << std::cos(phi), std::sin(phi);
            dt << -std::sin(phi), std::cos(phi);
            panel.rays[k] = trace_descent(traced, saddle, d, options, dt);
        });
        for (auto& panel : panels) {
            const double half = 0.5 * (panel.b - panel.a);
            cplx k15 = 0.0, g7 = 0.0;
            double l1 = 0.0;
            for (std::size_t k = 0; k < 15; ++k) {
                const cplx v = fan_proxy(panel.rays[k]);
                k15 += rule.kronrod[k] * half * v;
                g7 += rule.gauss[k] * half * v;
                l1 += rule.kronrod[k] * half * std::abs(v);
            }
            panel.k15 = k15;
            panel.error = std::abs(k15 - g7);
            panel.l1 = l1;
        }
    };

    const std::size_t initial = std::max<std::size_t>(1, (options.rays + 14) / 15);
    std::vector<Panel> panels;
    for (std::size_t k = 0; k < initial; ++k)
        panels.push_back({two_pi * static_cast<double>(k) / static_cast<double>(initial),
                          two_pi * static_cast<double>(k + 1) / static_cast<double>(initial), {}});
    build(panels);
    while (true) {
        cplx total = 0.0;
        double error = 0.0, l1 = 0.0;
        for (const auto& p : panels) {
            total += p.k15;
            error += p.error;
            l1 += p.l1;
        }
        const double allowed = std::max(options.fan_tolerance * std::abs(total), 1e-13 * l1);
        if (error <= allowed || 15 * (panels.size() + 1) > options.max_rays) break;
        double worst = 0.0;
        for (const auto& p : panels) worst = std::max(worst, p.error);
        std::vector<Panel> next;
        std::size_t count = panels.size();
        for (auto& p : panels) {
            if (p.error >= 0.25 * worst && 15 * (count + 1) <= options.max_rays) {
                const double mid = 0.5 * (p.a + p.b);
                next.push_back({p.a, mid, {}});
                next.push_back({mid, p.b, {}});
                ++count;
            } else {
                next.push_back(std::move(p));
            }
        }
        if (count == panels.size()) break;
        panels = std::move(next);
        build(panels);
    }
    for (auto& p : panels) {
        t.fan.push_back({p.a, p.b, t.rays.size()});
        for (auto& r : p.rays) t.rays.push_back(std::move(r));
    }
}

}  // namespace

std::string to_string(Divisor d) { return d == Divisor::at_zero ? "at-zero" : "at-infinity"; }

std::vector<Sector> sectors_1d(const LaurentPolynomial& h, Divisor which) {
    require_univariate(h);
    const auto& terms = h.terms();
    const LaurentTerm& lead = which == Divisor::at_infinity ? terms.back() : terms.front();
    const std::int64_t e = lead.exponent[0];
    if ((which == Divisor::at_infinity && e <= 0) || (which == Divisor::at_zero && e >= 0))
        throw NoPole("h has no pole " + to_string(which));
    const double m = static_cast<double>(std::abs(e));
    const double arg = std::arg(lead.coeff);
    std::vector<Sector> out;
    for (std::int64_t k = 0; k < std::abs(e); ++k) {
        Sector s;
        s.divisor = which;
        const double kk = static_cast<double>(k);
        s.lo = which == Divisor::at_infinity ? (pi / 2 - arg + two_pi * kk) / m : (arg - 1.5 * pi - two_pi * kk) / m;
        s.lo = wrap_angle(s.lo);
        s.hi = s.lo + pi / m;
        out.push_back(s);
    }
    std::sort(out.begin(), out.end(), [](const Sector& a, const Sector& b) { return a.lo < b.lo; });
    for (std::size_t k = 0; k < out.size(); ++k) out[k].index = static_cast<int>(k);
    return out;
}

Cycle1D sector_connector(const LaurentPolynomial& h, const ParameterVector& c, Divisor divisor, double theta_from,
                         double theta_to, bool principal_start) {
    require_univariate(h);
    if (c.size() != 1) throw InvalidConfiguration("parameter vector has the wrong length");
    if (!(theta_to > theta_from)) throw InvalidConfiguration("connector must turn counterclockwise");
    const cplx cm1 = c.value(0) - 1.0;
    const double radius = arc_radius(h, divisor);
    const double log_r = std::log(radius);
    const double sign = divisor == Divisor::at_infinity ? 1.0 : -1.0;
    const double step = pi / 8.0;
    const int max_steps = static_cast<int>(std::ceil(60.0 * std::log(2.0) / step));

    std::vector<cplx> arc;
    const int pieces = std::max(1, static_cast<int>(std::ceil((theta_to - theta_from) / (pi / 16.0))));
    for (int j = 0; j <= pieces; ++j) arc.push_back({log_r, theta_from + (theta_to - theta_from) * j / pieces});

    double peak = -std::numeric_limits<double>::infinity();
    for (cplx l : arc) peak = std::max(peak, log_weight(h, cm1, l));
    std::vector<cplx> leg_in, leg_out;  // ordered away from the arc
    const double floor_gap = std::log(1e-18);
    auto extend = [&](std::vector<cplx>& leg, double theta) {
        while (true) {
            const cplx last = leg.empty() ? cplx(log_r, theta) : leg.back();
            const double w = log_weight(h, cm1, last);
            if (!leg.empty() && w <= peak + floor_gap) return;
            if (static_cast<int>(leg.size()) >= max_steps)
                throw NonDecayingEndpoint("integrand does not decay " + to_string(divisor) + " along direction " +
                                          std::to_string(theta));
            const cplx next(log_r + sign * step * static_cast<double>(leg.size() + 1), theta);
            peak = std::max(peak, log_weight(h, cm1, next));
            leg.push_back(next);
        }
    };
    for (int pass = 0; pass < 4; ++pass) {
        const double before = peak;
        extend(leg_in, theta_from);
        extend(leg_out, theta_to);
        if (peak == before) break;
    }

    std::vector<cplx> logs(leg_in.rbegin(), leg_in.rend());
    logs.insert(logs.end(), arc.begin(), arc.end());
    logs.insert(logs.end(), leg_out.begin(), leg_out.end());
    if (principal_start) {
        const double shift = two_pi * std::floor((theta_from + pi) / two_pi);
        for (auto& l : logs) l -= cplx(0.0, shift);
    }
    Cycle1D out;
    out.kind = "connector";
    for (cplx l : logs) {
        Eigen::VectorXcd u(1);
        u[0] = l;
        out.samples.push_back(TorusPoint::from_logs(u));
    }
    return out;
}

Cycle1D circle_cycle(double radius, double start) {
    if (!(radius > 0.0)) throw InvalidConfiguration("circle radius must be positive");
    Cycle1D out;
    out.kind = "circle";
    out.closed = true;
    const int pieces = 64;
    for (int j = 0; j <= pieces; ++j) {
        Eigen::VectorXcd u(1);
        u[0] = {std::log(radius), start + two_pi * j / pieces};
        out.samples.push_back(TorusPoint::from_logs(u));
    }
    return out;
}

std::vector<Cycle1D> cycle_basis_1d(const LaurentPolynomial& h, const ParameterVector& c) {
    require_univariate(h);
    if (c.size() != 1) throw InvalidConfiguration("parameter vector has the wrong length");
    const bool at_inf = h.terms().back().exponent[0] > 0;
    const bool at_zero = h.terms().front().exponent[0] < 0;
    if (!at_inf && !at_zero) throw DegenerateConfiguration("h is constant");
    if (at_inf && at_zero) {
        bool integer = false;
        if (const auto& e = c.exact_component(0)) {
            integer = e->is_integer();
        } else {
            const cplx v = c.value(0);
            integer = std::abs(v.imag()) < 1e-9 && std::abs(v.real() - std::round(v.real())) < 1e-9;
        }
        if (integer)
            throw ResonantBranch("both divisors carry poles and c is an integer: the connectors are dependent");
    }
    std::vector<Cycle1D> out;
    for (Divisor d : {Divisor::at_infinity, Divisor::at_zero}) {
        if ((d == Divisor::at_infinity && !at_inf) || (d == Divisor::at_zero && !at_zero)) continue;
        const auto sectors = sectors_1d(h, d);
        for (std::size_t i = 0; i < sectors.size(); ++i) {
            const Sector& from = sectors[i];
            const Sector& to = sectors[(i + 1) % sectors.size()];
            double target = to.mid();
            if (i + 1 == sectors.size()) target += two_pi;
            Cycle1D cyc = sector_connector(h, c, d, from.mid(), target, true);
            cyc.from_sector = from;
            cyc.to_sector = to;
            out.push_back(std::move(cyc));
        }
    }
    return out;
}

std::vector<double> DescentPath::rhos() const {
    std::vector<double> out{rho0};
    const KronrodRule& rule = kronrod15();
    for (const auto& p : panels)
        for (double x : rule.nodes) out.push_back(0.5 * (p.a + p.b) + 0.5 * (p.b - p.a) * x);
    out.push_back(rho_max);
    return out;
}

std::vector<TorusPoint> DescentPath::samples() const {
    std::vector<TorusPoint> out{TorusPoint::from_logs(start)};
    for (const auto& p : panels)
        for (const auto& u : p.u) out.push_back(TorusPoint::from_logs(u));
    out.push_back(TorusPoint::from_logs(end));
    return out;
}

DescentFrame descent_frame(const LaurentPolynomial& h, const Eigen::VectorXcd& saddle_logs) {
    const auto n = static_cast<Eigen::Index>(h.dim());
    DescentFrame f;
    Eigen::VectorXcd p;
    log_derivatives(h, saddle_logs, p, &f.hessian);
    const Eigen::MatrixXd P = f.hessian.real(), Q = f.hessian.imag();
    Eigen::MatrixXd s(2 * n, 2 * n);
    s << P, -Q, -Q, -P;
    s *= 0.5;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s);
    f.basis.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double lambda = eig.eigenvalues()[k];
        if (!(lambda < 0.0)) throw HypothesisViolation("saddle is not Morse in log coordinates");
        const Eigen::VectorXd v = eig.eigenvectors().col(k) / std::sqrt(-lambda);
        for (Eigen::Index j = 0; j < n; ++j) f.basis(j, k) = {v[j], v[n + j]};
    }
    const cplx in = std::pow(cplx(0.0, 1.0), static_cast<int>(n));
    const cplx r = f.basis.determinant() * std::sqrt(f.hessian.determinant()) / in;
    const double target = std::pow(2.0, 0.5 * static_cast<double>(n));
    if (std::abs(r + target) < std::abs(r - target)) f.basis.col(0) *= -1.0;
    f.metric = 0.5 * f.basis * f.basis.adjoint();
    return f;
}

DescentPath trace_descent(const LaurentPolynomial& h, const CriticalPoint& saddle, const Eigen::VectorXd& direction,
                          const FlowOptions& options, const std::optional<Eigen::VectorXd>& tangent) {
    const auto n = static_cast<Eigen::Index>(h.dim());
    if (direction.size() != n) throw InvalidConfiguration("direction has the wrong length");
    const Eigen::VectorXcd& u0 = saddle.location.logs;
    const DescentFrame frame = descent_frame(h, u0);
    Flow flow{&h, frame.metric, n, tangent.has_value()};

    DescentPath path;
    path.direction = direction.normalized();
    path.rho0 = options.rho0;
    path.rho_max = std::sqrt(options.r_cut);
    path.start = u0 + options.rho0 * (frame.basis * path.direction.cast<cplx>());
    Eigen::VectorXcd w0;
    if (tangent) w0 = options.rho0 * (frame.basis * tangent->cast<cplx>());
    State y = pack(path.start, tangent ? &w0 : nullptr);
    path.end = path.start;

    PanelTracer tracer(flow, options);
    const int count = std::max(1, static_cast<int>(std::ceil((path.rho_max - path.rho0) / options.panel_width)));
    try {
        for (int k = 0; k < count; ++k) {
            const double a = path.rho0 + (path.rho_max - path.rho0) * k / count;
            const double b = path.rho0 + (path.rho_max - path.rho0) * (k + 1) / count;
            y = tracer.trace(a, b, y, 0, path.panels);
            Eigen::VectorXcd u, w;
            flow.unpack(y, u, w);
            path.end = u;
        }
    } catch (const FlowFailure& f) {
        throw FlowEscape(f.what, std::move(path));
    }
    return path;
}

bool critical_values_tie(const std::vector<CriticalPoint>& critical, double tolerance) {
    double scale = 1.0;
    for (const auto& p : critical) scale = std::max(scale, std::abs(p.value));
    for (std::size_t i = 0; i < critical.size(); ++i)
        for (std::size_t j = i + 1; j < critical.size(); ++j) {
            const cplx d = critical[i].value - critical[j].value;
            if (std::abs(d.real()) <= tolerance * scale || std::abs(d.imag()) <= tolerance * scale) return true;
        }
    return false;
}

Thimble trace_thimble(const LaurentPolynomial& h, const CriticalPoint& saddle, cplx rotation,
                      const FlowOptions& options) {
    const LaurentPolynomial traced = h * rotation;
    const std::size_t n = h.dim();
    Thimble t;
    t.saddle = saddle;
    t.rotation = rotation;
    t.frame = descent_frame(traced, saddle.location.logs);
    CriticalPoint local = saddle;
    local.value = traced.evaluate_log(saddle.location.logs);

    if (n == 2) {
        trace_fan(traced, local, options, t);
        return t;
    }
    std::vector<Eigen::VectorXd> dirs;
    if (n == 1) {
        dirs = {Eigen::VectorXd::Constant(1, 1.0), Eigen::VectorXd::Constant(1, -1.0)};
    } else {
        for (std::size_t k = 0; k < n; ++k)
            for (double s : {1.0, -1.0}) {
                Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
                d[static_cast<Eigen::Index>(k)] = s;
                dirs.push_back(d);
            }
    }
    t.rays.resize(dirs.size());
    parallel_for(dirs.size(), [&](std::size_t k) { t.rays[k] = trace_descent(traced, local, dirs[k], options); });
    return t;
}

std::vector<Thimble> thimble_basis(const LaurentPolynomial& h, const std::vector<CriticalPoint>& critical,
                                   const FlowOptions& options) {
    const LatticePolytope np = newton_polytope(h, true);
    if (!origin_interior(np))
        throw HypothesisViolation("0 is not an interior point of the Newton polytope; use the sector cycles when n = 1");
    const CountCertificate cert = count_certificate(critical, np);
    if (cert.status != CertificateStatus::complete)
        throw HypothesisViolation("critical point count is not certified complete");
    for (const auto& p : critical)
        if (!p.morse) throw HypothesisViolation("a critical point is not Morse");
    const cplx rotation =
        critical_values_tie(critical, options.tie_tolerance) ? std::polar(1.0, options.tie_delta) : cplx(1.0);
    std::vector<Thimble> out;
    for (const auto& p : critical) out.push_back(trace_thimble(h, p, rotation, options));
    return out;
}

RayDiagnostics ray_diagnostics(const LaurentPolynomial& traced, const Eigen::VectorXcd& saddle_logs,
                               const DescentPath& path) {
    RayDiagnostics d;
    const cplx v0 = traced.evaluate_log(saddle_logs);
    d.saddle_scale = std::abs(v0);
    double last = v0.real();
    for (const auto& s : path.samples()) {
        const cplx v = traced.evaluate_log(s.logs);
        d.max_im_deviation = std::max(d.max_im_deviation, std::abs(v.imag() - v0.imag()));
        if (!(v.real() < last)) d.re_decreasing = false;
        last = v.real();
        ++d.samples;
    }
    return d;
}

}  // namespace gkz
