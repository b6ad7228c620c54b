#include "gkz/parameters.hpp"

#include "gkz/errors.hpp"

#include <algorithm>

namespace gkz {

std::complex<double> ExactComplex::to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
}

ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) {
    return {a.re + b.re, a.im + b.im};
}

ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) {
    return {a.re - b.re, a.im - b.im};
}

ExactComplex scaled(const BigInt& k, const ExactComplex& a) {
    return {Rational(k) * a.re, Rational(k) * a.im};
}

bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re == b.re && a.im == b.im;
}

ParameterVector ParameterVector::exact(std::vector<ExactComplex> values) {
    ParameterVector p;
    for (auto& v : values) {
        p.approx_.push_back(v.to_complex());
        p.exact_.emplace_back(std::move(v));
    }
    return p;
}

ParameterVector ParameterVector::rational(const std::vector<std::string>& values) {
    std::vector<ExactComplex> out;
    for (const auto& s : values) {
        auto r = parse_rational(s);
        if (!r) throw ParseError("not a rational number: '" + s + "'");
        out.push_back({*r, 0});
    }
    return exact(std::move(out));
}

ParameterVector ParameterVector::numeric(std::vector<std::complex<double>> values) {
    ParameterVector p;
    p.approx_ = std::move(values);
    p.exact_.assign(p.approx_.size(), std::nullopt);
    return p;
}

ParameterVector ParameterVector::ones(std::size_t n) {
    return exact(std::vector<ExactComplex>(n, ExactComplex{1, 0}));
}

bool ParameterVector::is_exact() const {
    return std::all_of(exact_.begin(), exact_.end(), [](const auto& e) { return e.has_value(); });
}

ExactComplex pairing(const IntVector& kappa, const std::vector<ExactComplex>& c) {
    ExactComplex sum;
    for (std::size_t k = 0; k < kappa.size(); ++k) sum = sum + scaled(kappa[k], c[k]);
    return sum;
}

std::string to_string(const ExactComplex& v) {
    if (v.im == 0) return to_string(v.re);
    return to_string(v.re) + (v.im < 0 ? " - " : " + ") +
           to_string(v.im < 0 ? Rational(-v.im) : v.im) + "i";
}

}  // namespace gkz
