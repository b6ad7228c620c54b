#include "gkz/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gkz {

namespace {

// Torus point x with x^{d_i} = exp(t_i) for the face basis d_i.
Eigen::VectorXcd lift_face_logs(const std::vector<IntVector>& basis, const Eigen::VectorXcd& t, std::size_t n) {
    Eigen::MatrixXd d(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t k = 0; k < n; ++k)
            d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = static_cast<double>(basis[i][k]);
    const Eigen::MatrixXd gram = d * d.transpose();
    const Eigen::MatrixXcd right = d.transpose().cast<cplx>() * gram.inverse().cast<cplx>();
    return right * t;
}

// h^Γ = x^{base} Q(t), t_i = x^{d_i}.
LaurentPolynomial face_polynomial(const LaurentPolynomial& part, const Face& face) {
    std::vector<LaurentTerm> terms;
    for (const auto& t : part.terms()) {
        auto coords = lattice_coordinates(face.lattice_basis, subtract(to_int_vector(t.exponent), face.base_point));
        if (!coords) throw InvalidConfiguration("face term off the face lattice");
        terms.push_back({to_int64_vector(*coords), t.coeff});
    }
    return LaurentPolynomial::from_terms(face.dim, std::move(terms));
}

void edge_check(const LaurentPolynomial& q, const Face& face, std::size_t n, FaceEvidence& ev) {
    ev.method = "edge";
    const std::int64_t lo = q.terms().front().exponent[0];
    const std::int64_t hi = q.terms().back().exponent[0];
    std::vector<cplx> p(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (const auto& t : q.terms()) p[static_cast<std::size_t>(t.exponent[0] - lo)] = t.coeff;
    std::vector<cplx> dp;
    for (std::size_t k = 1; k < p.size(); ++k) dp.push_back(p[k] * static_cast<double>(k));

    double worst = 1.0;
    cplx worst_root = 1.0;
    for (cplx r : polynomial_roots(dp)) {
        cplx v = 0.0;
        double scale = 0.0, power = 1.0;
        cplx rp = 1.0;
        for (auto c : p) {
            v += c * rp;
            scale += std::abs(c) * power;
            rp *= r;
            power *= std::abs(r);
        }
        const double rel = std::abs(v) / scale;
        if (rel < worst) {
            worst = rel;
            worst_root = r;
        }
    }
    ev.separation = worst;
    if (worst > 1e-9) {
        ev.nondegenerate = true;
        ev.confidence = Confidence::numeric_certified;
    } else {
        ev.nondegenerate = false;
        ev.confidence = Confidence::heuristic;
        Eigen::VectorXcd t(1);
        t[0] = std::log(worst_root);
        ev.witness = lift_face_logs(face.lattice_basis, t, n).array().exp().matrix();
    }
}

void face_system_check(const LaurentPolynomial& q, const Face& face, std::size_t n, const SolverOptions& options,
                       FaceEvidence& ev) {
    ev.method = "face-system";
    std::vector<LaurentPolynomial> eqs;
    for (std::size_t k = 0; k < q.dim(); ++k) eqs.push_back(euler_derivative(q, k));
    if (std::any_of(eqs.begin(), eqs.end(), [](const auto& e) { return e.is_zero(); })) {
        ev.nondegenerate = false;
        ev.confidence = Confidence::heuristic;
        return;
    }
    std::size_t budget = 1;
    try {
        budget = static_cast<std::size_t>(to_int64(normalized_volume(newton_polytope(q, true))));
    } catch (const DegenerateConfiguration&) {
        ev.nondegenerate = false;
        ev.confidence = Confidence::heuristic;
        return;
    }
    LaurentSystem system(std::move(eqs));
    auto sol = solve_torus_system(system, budget, false, options);
    ev.nondegenerate = true;
    ev.confidence = Confidence::numeric_certified;
    ev.separation = 1.0;
    for (const auto& t : sol.logs) {
        const double rel = std::abs(q.evaluate_log(t)) / std::max(q.term_scale_log(t), 1e-300);
        ev.separation = std::min(ev.separation, rel);
        if (rel < 1e-9) {
            ev.nondegenerate = false;
            ev.witness = lift_face_logs(face.lattice_basis, t, n).array().exp().matrix();
            break;
        }
    }
}

}  // namespace

std::string to_string(Confidence c) {
    switch (c) {
        case Confidence::exact: return "exact";
        case Confidence::numeric_certified: return "numeric-certified";
        case Confidence::heuristic: return "heuristic";
    }
    return "unknown";
}

Confidence weakest(Confidence a, Confidence b) { return std::max(a, b); }

ResonanceCheck check_resonance(const LatticePolytope& delta, const ParameterVector& c) {
    if (c.size() != delta.dim()) throw InvalidConfiguration("parameter vector has the wrong length");
    ResonanceCheck out;
    const bool exact = c.is_exact();
    if (!exact) out.confidence = Confidence::heuristic;
    for (const auto& f : delta.facets()) {
        if (!f.contains_origin) continue;
        FacetResonance r;
        r.kappa = f.kappa;
        r.approx = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k) r.approx += static_cast<double>(f.kappa[k]) * c.value(k);
        if (exact) {
            std::vector<ExactComplex> cv;
            for (std::size_t k = 0; k < c.size(); ++k) cv.push_back(*c.exact_component(k));
            r.pairing = pairing(f.kappa, cv);
            r.resonant = r.pairing.is_integer();
        } else {
            const double re = r.approx.real();
            r.resonant = std::abs(r.approx.imag()) < 1e-9 && std::abs(re - std::round(re)) < 1e-9;
            if (r.resonant) out.suspect = true;
        }
        if (r.resonant) out.nonresonant = false;
        out.facets.push_back(std::move(r));
    }
    return out;
}

bool nonresonant(const LatticePolytope& delta, const ParameterVector& c) {
    return check_resonance(delta, c).nonresonant;
}

NondegeneracyCheck nondegenerate(const PointConfiguration& config, const std::vector<cplx>& z,
                                 const SolverOptions& options) {
    const std::size_t n = config.dim();
    const LatticePolytope delta = build_delta(config);
    const LaurentPolynomial h = from_config(config, z);
    NondegeneracyCheck out;
    for (const auto& face : delta.face_lattice()) {
        if (face.contains_origin || face.dim >= n) continue;
        if (face.dim >= 2 && n > 3)
            throw UnsupportedDimension("face systems of dimension >= 2 are supported only for n <= 3");
        FaceEvidence ev;
        ev.dim = face.dim;
        for (std::size_t v : face.vertices) ev.vertices.push_back(delta.vertices()[v]);
        const LaurentPolynomial part = face_part(h, delta, face);
        const LaurentPolynomial q = face_polynomial(part, face);
        if (face.dim == 0 || q.size() <= 1) {
            ev.method = face.dim == 0 ? "vertex" : "monomial";
            ev.nondegenerate = !q.is_zero();
            ev.confidence = Confidence::exact;
            if (!ev.nondegenerate) ev.witness = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(n));
        } else if (face.dim == 1) {
            edge_check(q, face, n, ev);
        } else {
            face_system_check(q, face, n, options, ev);
        }
        if (!ev.nondegenerate) out.nondegenerate = false;
        out.confidence = weakest(out.confidence, ev.confidence);
        out.faces.push_back(std::move(ev));
    }
    return out;
}

OmegaZeroCheck check_omega_zero(const PointConfiguration& config, const std::vector<cplx>& z,
                                const CriticalOptions& options) {
    OmegaZeroCheck out;
    out.nondegeneracy = nondegenerate(config, z, options.solver);
    if (!out.nondegeneracy.nondegenerate) return out;
    const LaurentPolynomial h = from_config(config, z);
    try {
        CriticalOptions strict = options;
        strict.require_complete = true;
        out.points = solve_critical(h, strict);
    } catch (const SolveIncomplete& e) {
        out.points = e.partial();
        out.solve_complete = false;
    }
    out.min_hessian_ratio = std::numeric_limits<double>::infinity();
    for (const auto& p : out.points) {
        if (!p.morse) ++out.non_morse;
        out.min_hessian_ratio = std::min(out.min_hessian_ratio, std::abs(p.hessian_det) / std::max(1.0, p.local_scale));
    }
    if (out.points.empty()) out.min_hessian_ratio = 0.0;
    out.in_omega_zero = out.solve_complete && out.non_morse == 0;
    return out;
}

bool in_omega_zero(const PointConfiguration& config, const std::vector<cplx>& z, const CriticalOptions& options) {
    return check_omega_zero(config, z, options).in_omega_zero;
}

AdmissibilityVerdict admissibility(const PointConfiguration& config, const ParameterVector& c,
                                   const std::vector<cplx>& z, const CriticalOptions& options) {
    AdmissibilityVerdict v;
    v.resonance = check_resonance(build_delta(config), c);
    auto omega = check_omega_zero(config, z, options);
    v.nondegeneracy = omega.nondegeneracy;
    v.in_omega_zero = omega.in_omega_zero;
    v.non_morse = omega.non_morse;
    v.min_hessian_ratio = omega.min_hessian_ratio;
    v.confidence = weakest(v.resonance.confidence, v.nondegeneracy.confidence);
    if (!omega.points.empty()) v.confidence = weakest(v.confidence, Confidence::numeric_certified);
    return v;
}

}  // namespace gkz
