#pragma once

#include "gkz/exact.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace gkz {

/// A complex number with exact rational real and imaginary parts.
struct ExactComplex {
    Rational re = 0;
    Rational im = 0;

    std::complex<double> to_complex() const;
    bool is_integer() const { return im == 0 && gkz::is_integer(re); }
};

ExactComplex operator+(const ExactComplex& a, const ExactComplex& b);
ExactComplex operator-(const ExactComplex& a, const ExactComplex& b);
ExactComplex scaled(const BigInt& k, const ExactComplex& a);
bool operator==(const ExactComplex& a, const ExactComplex& b);

/// The parameter c. Each component is held exactly when it was given
/// exactly; otherwise only a double approximation exists and every arithmetic
/// decision on it is heuristic.
class ParameterVector {
public:
    ParameterVector() = default;

    static ParameterVector exact(std::vector<ExactComplex> values);
    /// Real rational components, e.g. {"1/3", "-2"}.
    static ParameterVector rational(const std::vector<std::string>& values);
    static ParameterVector numeric(std::vector<std::complex<double>> values);
    static ParameterVector ones(std::size_t n);

    std::size_t size() const { return approx_.size(); }
    bool is_exact() const;
    const std::optional<ExactComplex>& exact_component(std::size_t k) const { return exact_.at(k); }
    std::complex<double> value(std::size_t k) const { return approx_.at(k); }
    const std::vector<std::complex<double>>& values() const { return approx_; }

private:
    std::vector<std::optional<ExactComplex>> exact_;
    std::vector<std::complex<double>> approx_;
};

/// <kappa, c> evaluated exactly.
ExactComplex pairing(const IntVector& kappa, const std::vector<ExactComplex>& c);

std::string to_string(const ExactComplex& v);

}  // namespace gkz
