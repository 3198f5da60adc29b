#pragma once

// Exact simulation of stationary zero-mean Gaussian sequences with a given
// folded spectral measure.
//
// The path is the sum of two independent parts:
//   * atoms (and the origin atom) as random harmonics
//       sqrt(a0) Z + sum_j sqrt(w_j) (A_j cos(t y_j) + B_j sin(t y_j)),
//     which reproduce r_k = a0 + sum_j w_j cos(k y_j) exactly;
//   * the density part by circulant embedding of r_0..r_{N-1} (size 2(N-1)),
//     falling back to a dense LDL^T factorization for N <= 4096.

#include "specvar/spectral_measure.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace specvar {

enum class SimulationMethod { circulant, cholesky, harmonic };

std::string to_string(SimulationMethod method);

struct PathBatch {
    std::size_t paths = 0;
    std::size_t length = 0;
    std::vector<double> values;  ///< row-major, paths x length
    std::uint64_t seed = 0;
    /// How the density part was generated; harmonic when there is none.
    SimulationMethod method = SimulationMethod::harmonic;
    /// Smallest circulant eigenvalue before clipping (NaN when no embedding was built).
    double embedding_min_eigenvalue = 0.0;

    std::span<const double> path(std::size_t p) const { return {values.data() + p * length, length}; }
};

inline constexpr std::size_t kMaxSimulationLength = std::size_t{1} << 16;
inline constexpr std::size_t kMaxDenseLength = 4096;

/// DomainError unless 1 <= N <= 2^16 and P >= 1. NumericError when the
/// embedding fails and N exceeds 4096.
PathBatch simulate(const SpectralMeasure& m, std::size_t N, std::size_t P, std::uint64_t seed);

struct MonteCarloEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;  ///< +infinity for a single path
};

/// Mean over paths of S_n^2, with the standard error of that mean.
MonteCarloEstimate empirical_variance(const PathBatch& batch, std::size_t n);

/// Pooled estimate of r_lag = E[X_t X_{t+lag}]; the standard error treats the
/// per-path averages as independent replicates.
MonteCarloEstimate empirical_autocovariance(const PathBatch& batch, std::size_t lag);

/// Writes `path,t,value` rows.
void write_paths_csv(std::ostream& out, const PathBatch& batch);

}  // namespace specvar
