#pragma once

// The 15-point Kronrod rule with its embedded 7-point Gauss rule on [-1, 1].

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <array>

namespace gkz {

struct KronrodRule {
    std::array<double, 15> nodes{};   // ascending
    std::array<double, 15> kronrod{};
    std::array<double, 15> gauss{};   // zero off the Gauss nodes
};

inline const KronrodRule& kronrod15() {
    static const KronrodRule rule = [] {
        KronrodRule r;
        const auto& x = boost::math::quadrature::gauss_kronrod<double, 15>::abscissa();
        const auto& wk = boost::math::quadrature::gauss_kronrod<double, 15>::weights();
        const auto& wg = boost::math::quadrature::gauss<double, 7>::weights();
        for (std::size_t k = 0; k < 8; ++k) {
            r.nodes[7 + k] = x[k];
            r.nodes[7 - k] = -x[k];
            r.kronrod[7 + k] = r.kronrod[7 - k] = wk[k];
            if (k % 2 == 0) r.gauss[7 + k] = r.gauss[7 - k] = wg[k / 2];
        }
        return r;
    }();
    return rule;
}

}  // namespace gkz
