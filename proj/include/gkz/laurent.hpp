#pragma once

// Laurent polynomials with complex coefficients on the torus (C^*)^n.

#include "gkz/lattice_polytope.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

namespace gkz {

using cplx = std::complex<double>;
using Exponent = std::vector<std::int64_t>;

/// A point of the torus together with continuously tracked logarithms of its
/// coordinates, exp(logs[k]) == coords[k]. The logs make x^{c-1} single-valued
/// along a path.
struct TorusPoint {
    Eigen::VectorXcd coords;
    Eigen::VectorXcd logs;

    /// Principal-branch logarithms.
    static TorusPoint from_coords(const Eigen::VectorXcd& x);
    static TorusPoint from_logs(const Eigen::VectorXcd& l);

    std::size_t dim() const { return static_cast<std::size_t>(coords.size()); }
};

struct LaurentTerm {
    Exponent exponent;
    cplx coeff;
};

class LaurentPolynomial {
public:
    LaurentPolynomial() = default;
    explicit LaurentPolynomial(std::size_t dim) : dim_(dim) {}

    /// Merges repeated exponents; drops coefficients that are exactly zero.
    static LaurentPolynomial from_terms(std::size_t dim, std::vector<LaurentTerm> terms);

    std::size_t dim() const { return dim_; }
    const std::vector<LaurentTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Coefficient of x^a, zero when absent.
    cplx coefficient(const Exponent& a) const;

    LaurentPolynomial operator+(const LaurentPolynomial& other) const;
    LaurentPolynomial operator-(const LaurentPolynomial& other) const;
    LaurentPolynomial operator*(cplx scalar) const;

    /// Sum of coeff * exp(<a, u>) for a vector of logarithmic coordinates.
    cplx evaluate_log(const Eigen::VectorXcd& u) const;
    /// Sum of |coeff * exp(<a, u>)|, the natural size of h at a point.
    double term_scale_log(const Eigen::VectorXcd& u) const;

    std::vector<Exponent> support() const;

private:
    std::size_t dim_ = 0;
    std::vector<LaurentTerm> terms_;  // sorted by exponent, no zero coefficients
};

/// h_z(x) = sum_j z_j x^{a(j)}.
LaurentPolynomial from_config(const PointConfiguration& config, const std::vector<cplx>& z);

cplx evaluate(const LaurentPolynomial& h, const TorusPoint& x);

/// x_i ∂h/∂x_i (axis is zero-based).
LaurentPolynomial euler_derivative(const LaurentPolynomial& h, std::size_t axis);

/// Terms whose exponents lie on the face Γ of `polytope`.
LaurentPolynomial face_part(const LaurentPolynomial& h, const LatticePolytope& polytope,
                            const Face& face);

/// Ordinary partial derivatives ∂_j h at x.
Eigen::VectorXcd gradient(const LaurentPolynomial& h, const TorusPoint& x);
/// Ordinary second partials ∂_j ∂_k h at x.
Eigen::MatrixXcd hessian(const LaurentPolynomial& h, const TorusPoint& x);

/// Newton polytope of h, i.e. conv of its exponents (optionally with 0 added).
LatticePolytope newton_polytope(const LaurentPolynomial& h, bool include_origin);

}  // namespace gkz
