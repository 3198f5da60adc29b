#pragma once

// Adaptive quadrature primitives shared by the measure and variance code.
//
// Smooth segments go through an adaptive Gauss-Kronrod rule; segments that
// touch an integrable power singularity y^p at the origin use a Gauss-Jacobi
// rule whose weight absorbs y^p exactly, so only the smooth cofactor is
// sampled.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <vector>

namespace specvar::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;  ///< estimated absolute error
    double l1 = 0.0;     ///< integral of |f|, used for relative tolerances

    Result& operator+=(const Result& o) {
        value += o.value;
        error += o.error;
        l1 += o.l1;
        return *this;
    }
};

/// Nodes in (0,1) and weights for sum_i w_i f(u_i) ~ int_0^1 u^exponent f(u) du.
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Jacobi rule for the weight u^exponent on [0,1], exponent > -1.
/// Rules are built once (Golub-Welsch) and cached; the reference stays valid.
const Rule& power_weight_rule(double exponent, int points);

inline constexpr double kDefaultRelTol = 1e-13;
inline constexpr unsigned kDefaultDepth = 12;

namespace detail {

/// One 31-point Kronrod panel with its embedded 15-point Gauss estimate,
/// error and L1 scaled to [a, b]. (Boost 1.74's own adaptive driver reports
/// errors in the reference interval [-1, 1], so only its nodes are reused.)
template <class F>
Result gk31_panel(F& f, double a, double b) {
    using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;
    using Gauss = boost::math::quadrature::gauss<double, 15>;
    const auto& x = Kronrod::abscissa();
    const auto& wk = Kronrod::weights();
    const auto& wg = Gauss::weights();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(mid);
    double k = f0 * wk[0];
    double g = f0 * wg[0];
    double l1 = std::abs(f0) * wk[0];
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double fp = f(mid + half * x[i]);
        const double fm = f(mid - half * x[i]);
        k += (fp + fm) * wk[i];
        l1 += (std::abs(fp) + std::abs(fm)) * wk[i];
        if (i % 2 == 0) g += (fp + fm) * wg[i / 2];
    }
    return {half * k, half * std::abs(k - g), half * l1};
}

template <class F>
Result adaptive_gk(F& f, double a, double b, double rel_tol, unsigned depth) {
    const Result panel = gk31_panel(f, a, b);
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * panel.l1;
    if (depth == 0 || panel.error <= std::max(rel_tol * std::abs(panel.value), noise)) return panel;
    const double mid = 0.5 * (a + b);
    Result r = adaptive_gk(f, a, mid, rel_tol, depth - 1);
    r += adaptive_gk(f, mid, b, rel_tol, depth - 1);
    return r;
}

}  // namespace detail

/// Adaptive 31-point Gauss-Kronrod on [a,b], bisecting until |K - G| is
/// below rel_tol |integral| or the rounding floor of the panel.
template <class F>
Result integrate(F&& f, double a, double b, double rel_tol = kDefaultRelTol,
                 unsigned max_depth = kDefaultDepth) {
    if (!(b > a)) return {};
    return detail::adaptive_gk(f, a, b, rel_tol, max_depth);
}

namespace detail {
template <class F>
Result power_weighted_impl(F& f, double t, double exponent, double abs_tol, int depth) {
    const Rule& lo = power_weight_rule(exponent, 20);
    const Rule& hi = power_weight_rule(exponent, 32);
    const double scale = std::pow(t, exponent + 1.0);
    auto apply = [&](const Rule& rule, double& l1) {
        double s = 0.0;
        l1 = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double v = rule.weights[i] * f(t * rule.nodes[i]);
            s += v;
            l1 += std::abs(v);
        }
        return scale * s;
    };
    double l1_lo = 0.0, l1_hi = 0.0;
    const double coarse = apply(lo, l1_lo);
    const double fine = apply(hi, l1_hi);
    const double err = std::abs(fine - coarse);
    if (depth == 0 || err <= std::max(abs_tol, 1e-14 * scale * l1_hi)) {
        return Result{fine, err, scale * l1_hi};
    }
    Result left = power_weighted_impl(f, 0.5 * t, exponent, 0.5 * abs_tol, depth - 1);
    auto weighted = [&](double y) { return std::pow(y, exponent) * f(y); };
    left += integrate(weighted, 0.5 * t, t);
    return left;
}
}  // namespace detail

/// int_0^t y^exponent f(y) dy for smooth f, bisecting toward the origin when
/// the 20- and 32-point Gauss-Jacobi estimates disagree by more than abs_tol.
template <class F>
Result integrate_power_weighted(F&& f, double t, double exponent, double abs_tol = 1e-13) {
    if (!(t > 0.0)) return {};
    return detail::power_weighted_impl(f, t, exponent, abs_tol, 30);
}

}  // namespace specvar::quad
