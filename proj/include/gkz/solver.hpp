#pragma once

// Square systems of Laurent polynomial equations solved on the torus.
// Solutions are carried in logarithmic coordinates u = log x (principal branch).

#include "gkz/laurent.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gkz {

/// Nonzero roots of sum_k coeffs[k] t^k (companion-matrix eigenvalues,
/// Newton-polished). Roots at t = 0 are discarded.
std::vector<cplx> polynomial_roots(std::vector<cplx> coeffs);

/// F_1 = ... = F_n = 0 together with the logarithmic Jacobian θ_j F_i.
class LaurentSystem {
public:
    explicit LaurentSystem(std::vector<LaurentPolynomial> equations);

    std::size_t dim() const { return equations_.size(); }
    const std::vector<LaurentPolynomial>& equations() const { return equations_; }

    Eigen::VectorXcd value(const Eigen::VectorXcd& u) const;
    Eigen::MatrixXcd jacobian(const Eigen::VectorXcd& u) const;
    /// max_i |F_i(u)| / max(term scale of F_i at u, tiny).
    double relative_residual(const Eigen::VectorXcd& u) const;
    double absolute_residual(const Eigen::VectorXcd& u) const;

private:
    std::vector<LaurentPolynomial> equations_;
    std::vector<std::vector<LaurentPolynomial>> jacobian_;
};

struct NewtonOptions {
    int max_iterations = 80;
    double accept_residual = 1e-10;  // relative residual needed to accept
};

/// Damped Newton in logarithmic coordinates.
std::optional<Eigen::VectorXcd> newton_polish(const LaurentSystem& system, Eigen::VectorXcd u,
                                              const NewtonOptions& options = {});

struct SolverOptions {
    std::uint64_t seed = 0x5eed;
    std::size_t seeds_per_solution = 50;
    double dedup_radius = 1e-8;  // relative distance in x
    NewtonOptions newton;
};

struct SystemSolution {
    std::vector<Eigen::VectorXcd> logs;  // principal-branch log coordinates
    std::string route;
};

/// Method ladder: univariate companion roots (n = 1); hidden-variable
/// Sylvester resultant with multi-start Newton augmentation (n = 2);
/// multi-start Newton (n >= 3). `expected` sizes the seed budget and, when
/// `stop_at_expected`, ends the search once reached.
SystemSolution solve_torus_system(const LaurentSystem& system, std::size_t expected,
                                  bool stop_at_expected, const SolverOptions& options = {});

/// Relative distance max_k |x_k - y_k| / max(|x_k|, |y_k|) of two torus points
/// given in logarithmic coordinates.
double relative_distance(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v);

/// Principal branch of each coordinate, Im in (-π, π].
Eigen::VectorXcd principal_logs(const Eigen::VectorXcd& u);

}  // namespace gkz
