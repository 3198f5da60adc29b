#pragma once

// Var(S_n) for S_n = X_1 + ... + X_n through the Fejer kernel,
//
//   Var(S_n) = int_0^pi I_n(y) G(dy),   I_n(y) = sin^2(n y / 2) / sin^2(y / 2),
//
// and, independently, through the covariance sum n r_0 + 2 sum (n-k) r_k.

#include "specvar/spectral_measure.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace specvar {

/// Sandwich bounds for one n:
///   (4/pi^2) n^2 G(1/n) <= Var(S_n)
///   Var(S_n) <= G(pi) + (pi^2/4) n^2 G(A/n) + pi^2 int_{A/n}^pi G(y)/y^3 dy.
struct BoundsReport {
    std::int64_t n = 0;
    double A = 0.0;
    double lower = 0.0;
    double variance = 0.0;
    double upper = 0.0;

    /// lower <= variance <= upper up to rel_slack * max(1, variance).
    bool brackets(double rel_slack = 1e-9) const;
};

/// I_n(y) on n >= 1, y in [0, pi]. Near the origin (y < 1e-6/n) the
/// expansion n^2 (1 - (n^2 - 1) y^2 / 12) replaces the sine ratio.
double fejer_kernel(std::int64_t n, double y);

/// Kernel route. Atoms are summed exactly; density pieces are integrated
/// on a grid of step 2 pi / n (the zeros of sin(n y / 2)).
double variance_spectral(const SpectralMeasure& m, std::int64_t n);

/// Covariance-sum route, from autocovariances(m, n).
double variance_covariance(const SpectralMeasure& m, std::int64_t n);

/// Var(S_1), ..., Var(S_max_n) from a single autocovariance pass.
std::vector<double> variance_profile(const SpectralMeasure& m, std::int64_t max_n);

/// Var(S_n) for every n in ns. Uses the kernel route per n, or the profile
/// when the grid is dense enough that one autocovariance pass is cheaper.
/// Rows are computed in parallel and returned in input order.
std::vector<double> variance_many(const SpectralMeasure& m, std::span<const std::int64_t> ns);

/// int_a^pi G(y) / y^3 dy for 0 < a <= pi. Atoms contribute in closed form.
double g_over_cube_tail(const SpectralMeasure& m, double a);

/// DomainError unless n >= 1 and 0 < A <= n.
BoundsReport sandwich(const SpectralMeasure& m, std::int64_t n, double A);

}  // namespace specvar
