#include "gkz/laurent.hpp"

#include "gkz/errors.hpp"

#include <algorithm>
#include <map>

namespace gkz {

TorusPoint TorusPoint::from_coords(const Eigen::VectorXcd& x) {
    TorusPoint p;
    p.coords = x;
    p.logs.resize(x.size());
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        if (x[k] == cplx(0.0)) throw InvalidConfiguration("torus point with a zero coordinate");
        p.logs[k] = std::log(x[k]);
    }
    return p;
}

TorusPoint TorusPoint::from_logs(const Eigen::VectorXcd& l) {
    TorusPoint p;
    p.logs = l;
    p.coords = l.array().exp().matrix();
    return p;
}

LaurentPolynomial LaurentPolynomial::from_terms(std::size_t dim, std::vector<LaurentTerm> terms) {
    std::map<Exponent, cplx> merged;
    for (auto& t : terms) {
        if (t.exponent.size() != dim) throw InvalidConfiguration("exponent dimension mismatch");
        merged[t.exponent] += t.coeff;
    }
    LaurentPolynomial h(dim);
    for (auto& [a, c] : merged)
        if (c != cplx(0.0)) h.terms_.push_back({a, c});
    return h;
}

cplx LaurentPolynomial::coefficient(const Exponent& a) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), a,
                               [](const LaurentTerm& t, const Exponent& e) { return t.exponent < e; });
    if (it != terms_.end() && it->exponent == a) return it->coeff;
    return 0.0;
}

LaurentPolynomial LaurentPolynomial::operator+(const LaurentPolynomial& other) const {
    std::vector<LaurentTerm> all = terms_;
    all.insert(all.end(), other.terms_.begin(), other.terms_.end());
    return from_terms(std::max(dim_, other.dim_), std::move(all));
}

LaurentPolynomial LaurentPolynomial::operator-(const LaurentPolynomial& other) const {
    return *this + other * cplx(-1.0);
}

LaurentPolynomial LaurentPolynomial::operator*(cplx scalar) const {
    std::vector<LaurentTerm> out = terms_;
    for (auto& t : out) t.coeff *= scalar;
    return from_terms(dim_, std::move(out));
}

cplx LaurentPolynomial::evaluate_log(const Eigen::VectorXcd& u) const {
    cplx sum = 0.0;
    for (const auto& t : terms_) {
        cplx e = 0.0;
        for (std::size_t k = 0; k < dim_; ++k)
            if (t.exponent[k] != 0) e += static_cast<double>(t.exponent[k]) * u[k];
        sum += t.coeff * std::exp(e);
    }
    return sum;
}

double LaurentPolynomial::term_scale_log(const Eigen::VectorXcd& u) const {
    double sum = 0.0;
    for (const auto& t : terms_) {
        double e = 0.0;
        for (std::size_t k = 0; k < dim_; ++k) e += static_cast<double>(t.exponent[k]) * u[k].real();
        sum += std::abs(t.coeff) * std::exp(e);
    }
    return sum;
}

std::vector<Exponent> LaurentPolynomial::support() const {
    std::vector<Exponent> out;
    for (const auto& t : terms_) out.push_back(t.exponent);
    return out;
}

LaurentPolynomial from_config(const PointConfiguration& config, const std::vector<cplx>& z) {
    if (z.size() != config.size())
        throw InvalidConfiguration("coefficient vector length " + std::to_string(z.size()) +
                                   " does not match " + std::to_string(config.size()) + " points");
    std::vector<LaurentTerm> terms;
    for (std::size_t j = 0; j < z.size(); ++j)
        terms.push_back({to_int64_vector(config.point(j)), z[j]});
    return LaurentPolynomial::from_terms(config.dim(), std::move(terms));
}

cplx evaluate(const LaurentPolynomial& h, const TorusPoint& x) { return h.evaluate_log(x.logs); }

LaurentPolynomial euler_derivative(const LaurentPolynomial& h, std::size_t axis) {
    if (axis >= h.dim()) throw InvalidConfiguration("axis out of range");
    std::vector<LaurentTerm> terms;
    for (const auto& t : h.terms())
        terms.push_back({t.exponent, t.coeff * static_cast<double>(t.exponent[axis])});
    return LaurentPolynomial::from_terms(h.dim(), std::move(terms));
}

LaurentPolynomial face_part(const LaurentPolynomial& h, const LatticePolytope& polytope,
                            const Face& face) {
    std::vector<LaurentTerm> terms;
    for (const auto& t : h.terms()) {
        IntVector a = to_int_vector(t.exponent);
        if (!polytope.contains(a)) continue;
        bool on_face = true;
        for (const auto& f : polytope.facets()) {
            bool contains_face = std::includes(f.supporting_face.begin(), f.supporting_face.end(),
                                               face.vertices.begin(), face.vertices.end());
            if (contains_face && dot(f.kappa, a) != f.offset) {
                on_face = false;
                break;
            }
        }
        if (on_face) terms.push_back(t);
    }
    return LaurentPolynomial::from_terms(h.dim(), std::move(terms));
}

Eigen::VectorXcd gradient(const LaurentPolynomial& h, const TorusPoint& x) {
    const std::size_t n = h.dim();
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(n);
    for (const auto& t : h.terms()) {
        cplx e = 0.0;
        for (std::size_t k = 0; k < n; ++k) e += static_cast<double>(t.exponent[k]) * x.logs[k];
        for (std::size_t j = 0; j < n; ++j) {
            if (t.exponent[j] == 0) continue;
            g[j] += t.coeff * static_cast<double>(t.exponent[j]) * std::exp(e - x.logs[j]);
        }
    }
    return g;
}

Eigen::MatrixXcd hessian(const LaurentPolynomial& h, const TorusPoint& x) {
    const std::size_t n = h.dim();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& t : h.terms()) {
        cplx e = 0.0;
        for (std::size_t k = 0; k < n; ++k) e += static_cast<double>(t.exponent[k]) * x.logs[k];
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = j; k < n; ++k) {
                double factor = static_cast<double>(t.exponent[j]) *
                                static_cast<double>(t.exponent[k] - (j == k ? 1 : 0));
                if (factor == 0.0) continue;
                cplx v = t.coeff * factor * std::exp(e - x.logs[j] - x.logs[k]);
                m(j, k) += v;
                if (j != k) m(k, j) += v;
            }
        }
    }
    return m;
}

LatticePolytope newton_polytope(const LaurentPolynomial& h, bool include_origin) {
    std::vector<IntVector> pts;
    for (const auto& t : h.terms()) pts.push_back(to_int_vector(t.exponent));
    if (include_origin) pts.push_back(IntVector(h.dim(), 0));
    return LatticePolytope::from_points(h.dim(), std::move(pts));
}

}  // namespace gkz
