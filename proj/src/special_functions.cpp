#include "specvar/special_functions.hpp"

#include "specvar/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace specvar {

namespace {
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoef{
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
}  // namespace

double lanczos_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("lanczos_gamma: argument must be positive and finite");
    constexpr double pi = std::numbers::pi;
    if (x < 0.5) return pi / (std::sin(pi * x) * lanczos_gamma(1.0 - x));
    const double z = x - 1.0;
    double sum = kLanczosCoef[0];
    for (std::size_t i = 1; i < kLanczosCoef.size(); ++i) sum += kLanczosCoef[i] / (z + static_cast<double>(i));
    const double t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * sum;
}

}  // namespace specvar
