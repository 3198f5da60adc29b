#pragma once

// Regular-variation constants and finite-scan diagnostics for the
// correspondence
//
//   G(x) ~ C(gamma) K0 x^{2-gamma} L(1/x)  (x -> 0)
//   <=>  Var(S_n) ~ K0 n^gamma L(n)        (n -> infinity),  0 < gamma < 2,
//
// with C(gamma) = Gamma(1+gamma) sin(gamma pi / 2) / (pi (2 - gamma)).
// Scans report evidence only; nothing here certifies a limit.

#include "specvar/spectral_measure.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace specvar {

/// L(x) = 1 or L(x) = (ln(e + x))^a.
class SlowlyVarying {
public:
    enum class Kind { constant, log_power };

    static SlowlyVarying constant() { return SlowlyVarying(Kind::constant, 0.0); }
    static SlowlyVarying log_power(double a);

    double operator()(double x) const;
    Kind kind() const noexcept { return kind_; }
    double exponent() const noexcept { return exponent_; }
    /// "const" or "logpow:<a>", the CLI spelling.
    std::string describe() const;
    /// Inverse of describe().
    static SlowlyVarying parse(const std::string& text);

private:
    SlowlyVarying(Kind kind, double exponent) : kind_(kind), exponent_(exponent) {}
    Kind kind_;
    double exponent_;
};

/// g(n) = n^gamma L(n) scaled by K0; gamma strictly inside (0, 2).
struct RegularVariationModel {
    double gamma;
    double K0;
    SlowlyVarying L;

    RegularVariationModel(double gamma, double K0, SlowlyVarying L = SlowlyVarying::constant());

    /// n^gamma L(n), without K0.
    double g(double n) const;
};

/// DomainError outside (0, 2).
double c_gamma(double gamma);
double d_gamma(double gamma);

/// int_0^inf sin^2(y) / y^{1+gamma} dy by period-segmented quadrature up to a
/// multiple of pi, Y >= 1e4/gamma, plus an asymptotic tail.
struct SineSquaredIntegral {
    double value = 0.0;
    double truncation_point = 0.0;  ///< Y
    double tail = 0.0;              ///< analytic contribution of [Y, inf)
    double tail_remainder_bound = 0.0;
    double quadrature_error = 0.0;
};
SineSquaredIntegral sine_squared_integral(double gamma);

/// |1/C(gamma) - 2^{2-gamma} (2-gamma) int_0^inf sin^2 y / y^{1+gamma} dy|.
double constant_identity_residual(double gamma);

struct ScanRow {
    std::int64_t n = 0;
    double variance = 0.0;
    std::optional<double> g_n;
    std::optional<double> var_ratio;
    double x = 0.0;
    double G_x = 0.0;
    std::optional<double> g_ratio;
};

/// Summary of one ratio column. The tail is the last quarter of the rows.
struct RatioSummary {
    double sup = 0.0;
    double inf = 0.0;
    double last = 0.0;
    double tail_mean = 0.0;
    double tail_spread = 0.0;  ///< max |ratio - tail_mean| over the tail
    bool settled = false;      ///< tail_spread <= tolerance
    bool near_one = false;     ///< |tail_mean - 1| <= tolerance
};

struct ScanReport {
    double gamma = 0.0;
    std::optional<double> K0;
    SlowlyVarying L = SlowlyVarying::constant();
    double tolerance = 0.05;
    std::vector<ScanRow> rows;
    std::optional<RatioSummary> var_summary;
    std::optional<RatioSummary> g_summary;
};

RatioSummary summarize_ratios(std::span<const double> ratios, double tolerance);

/// Scan Var(S_n) against g(n); ratio columns are filled only when K0 is given.
ScanReport scan_against_model(const SpectralMeasure& m, double gamma, std::optional<double> K0,
                              const SlowlyVarying& L, std::span<const std::int64_t> n_grid,
                              double tolerance = 0.05);

ScanReport theorem_check(const SpectralMeasure& m, const RegularVariationModel& model,
                         std::span<const std::int64_t> n_grid, double tolerance = 0.05);

struct GrowthBoundReport {
    double sup_var_subsequence = 0.0;  ///< sup_k Var(S_{n_k}) / g(n_k)
    double inf_var_subsequence = 0.0;
    double sup_g = 0.0;  ///< sup_k G(1/n_k) / ((1/n_k)^{2-gamma} L(n_k))
    double inf_g = 0.0;
    double sup_var_all = 0.0;  ///< over every n in [n_first, n_last]
    double inf_var_all = 0.0;
    double kappa = 0.0;  ///< max n_{k+1} / n_k
    bool kappa_finite = false;
    std::int64_t n_first = 0;
    std::int64_t n_last = 0;
};

GrowthBoundReport growth_bound_report(const SpectralMeasure& m, double gamma, const SlowlyVarying& L,
                                      std::span<const std::int64_t> subsequence);

struct DichotomyReport {
    std::vector<std::int64_t> ns;
    std::vector<double> ratio;  ///< Var(S_n) / n^2
    double atom_at_zero = 0.0;
    double tail_value = 0.0;
    double tail_gap = 0.0;  ///< tail_value - atom_at_zero
    /// true when the origin carries mass, so the column stays bounded away from 0.
    bool positive_liminf = false;
};

DichotomyReport dichotomy_check(const SpectralMeasure& m, std::span<const std::int64_t> n_grid);

struct OctaveRow {
    int r = 0;
    double dyadic_value = 0.0;  ///< column value at n = 2^r
    double window_max = 0.0;    ///< max of the column over [2^r, 2^{r+1}]
    double ratio = 0.0;         ///< window_max / dyadic_value
};

struct SubsequenceScan {
    double gamma = 0.0;
    int r0 = 0;
    int r1 = 0;
    std::vector<double> dyadic;  ///< Var(S_{2^r}) / 2^{r gamma}, r = r0..r1
    std::vector<std::int64_t> ns;
    std::vector<double> full;  ///< Var(S_n) / n^gamma, n = 2^r0..2^r1
    std::vector<OctaveRow> octaves;
};

/// gamma in [0, 2]; gamma = 0 scans raw variances.
SubsequenceScan subsequence_scan(const SpectralMeasure& m, double gamma, int r0, int r1);

struct GammaFit {
    double gamma_hat = 0.0;
    double K0_hat = 0.0;
    double residual = 0.0;  ///< root-mean-square log deviation
};

struct VariancePoint {
    std::int64_t n = 0;
    double variance = 0.0;
};

/// Least squares of ln Var on ln n.
GammaFit gamma_fit(std::span<const VariancePoint> points);

}  // namespace specvar
