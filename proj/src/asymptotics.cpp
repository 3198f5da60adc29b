#include "specvar/asymptotics.hpp"

#include "specvar/errors.hpp"
#include "specvar/fejer_variance.hpp"
#include "specvar/quadrature.hpp"
#include "specvar/special_functions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

namespace specvar {

namespace {

void require_open_gamma(double gamma, const char* what) {
    if (!(gamma > 0.0 && gamma < 2.0)) throw DomainError(std::string(what) + ": gamma must lie in (0, 2)");
}

void require_increasing(std::span<const std::int64_t> ns, const char* what) {
    if (ns.empty()) throw DomainError(std::string(what) + ": grid must be nonempty");
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (ns[i] < 1) throw DomainError(std::string(what) + ": grid entries must be >= 1");
        if (i > 0 && !(ns[i] > ns[i - 1])) throw DomainError(std::string(what) + ": grid must be increasing");
    }
}

std::string shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

// ---- slowly varying functions ------------------------------------------------

SlowlyVarying SlowlyVarying::log_power(double a) {
    if (!std::isfinite(a)) throw DomainError("log_power exponent must be finite");
    return SlowlyVarying(Kind::log_power, a);
}

double SlowlyVarying::operator()(double x) const {
    if (kind_ == Kind::constant) return 1.0;
    return std::pow(std::log(std::numbers::e + x), exponent_);
}

std::string SlowlyVarying::describe() const {
    return kind_ == Kind::constant ? std::string("const") : "logpow:" + shortest(exponent_);
}

SlowlyVarying SlowlyVarying::parse(const std::string& text) {
    if (text == "const") return constant();
    const std::string prefix = "logpow:";
    if (text.rfind(prefix, 0) == 0) {
        const std::string rest = text.substr(prefix.size());
        double a = 0.0;
        auto res = std::from_chars(rest.data(), rest.data() + rest.size(), a);
        if (res.ec == std::errc() && res.ptr == rest.data() + rest.size()) return log_power(a);
    }
    throw ValidationError("slowly varying function must be 'const' or 'logpow:<a>', got '" + text + "'");
}

RegularVariationModel::RegularVariationModel(double gamma_, double K0_, SlowlyVarying L_)
    : gamma(gamma_), K0(K0_), L(L_) {
    require_open_gamma(gamma, "RegularVariationModel");
    if (!(K0 > 0.0) || !std::isfinite(K0)) throw DomainError("RegularVariationModel: K0 must be positive");
}

double RegularVariationModel::g(double n) const { return std::pow(n, gamma) * L(n); }

// ---- constants --------------------------------------------------------------

double c_gamma(double gamma) {
    require_open_gamma(gamma, "c_gamma");
    constexpr double pi = std::numbers::pi;
    return lanczos_gamma(1.0 + gamma) * std::sin(gamma * pi / 2.0) / (pi * (2.0 - gamma));
}

double d_gamma(double gamma) {
    require_open_gamma(gamma, "d_gamma");
    constexpr double pi = std::numbers::pi;
    return lanczos_gamma(gamma) * std::pow(2.0, 2.0 - gamma) * std::sin(gamma * pi / 2.0) / pi;
}

SineSquaredIntegral sine_squared_integral(double gamma) {
    require_open_gamma(gamma, "sine_squared_integral");
    constexpr double pi = std::numbers::pi;
    SineSquaredIntegral out;
    const double periods = std::ceil(1e4 / gamma / pi);
    const double Y = periods * pi;
    out.truncation_point = Y;

    // First period: sin^2 y / y^{1+gamma} = (sin y / y)^2 * y^{1-gamma}.
    auto sinc2 = [](double y) {
        const double s = std::sin(y) / y;
        return s * s;
    };
    quad::Result total = quad::integrate_power_weighted(sinc2, pi, 1.0 - gamma);
    auto integrand = [gamma](double y) {
        const double s = std::sin(y);
        return s * s * std::pow(y, -1.0 - gamma);
    };
    long double acc = total.value;
    double err = total.error;
    for (double j = 1.0; j < periods; j += 1.0) {
        const auto r = quad::integrate(integrand, j * pi, (j + 1.0) * pi);
        acc += r.value;
        err += r.error;
    }

    // Tail on [Y, inf) with sin(2Y) = 0, cos(2Y) = 1:
    //   int sin^2 y y^{-s} = Y^{-gamma} / (2 gamma) - C_s / 2,
    //   C_s = int cos(2y) y^{-s} = s/4 Y^{-s-1} - s(s+1)(s+2)/16 Y^{-s-3} + R,
    //   |R| <= s(s+1)(s+2)(s+3)/32 Y^{-s-4}.
    const double s = 1.0 + gamma;
    const double cos_part = s / 4.0 * std::pow(Y, -s - 1.0) - s * (s + 1.0) * (s + 2.0) / 16.0 * std::pow(Y, -s - 3.0);
    out.tail = std::pow(Y, -gamma) / (2.0 * gamma) - 0.5 * cos_part;
    out.tail_remainder_bound = 0.5 * s * (s + 1.0) * (s + 2.0) * (s + 3.0) / 32.0 * std::pow(Y, -s - 4.0);
    if (!(out.tail_remainder_bound < 1e-9))
        throw NumericError("sine_squared_integral: tail remainder bound too large", out.tail_remainder_bound);
    out.quadrature_error = err;
    out.value = static_cast<double>(acc + out.tail);
    return out;
}

double constant_identity_residual(double gamma) {
    const auto integral = sine_squared_integral(gamma);
    const double rhs = std::pow(2.0, 2.0 - gamma) * (2.0 - gamma) * integral.value;
    return std::abs(1.0 / c_gamma(gamma) - rhs);
}

// ---- scans ------------------------------------------------------------------

RatioSummary summarize_ratios(std::span<const double> ratios, double tolerance) {
    RatioSummary s;
    if (ratios.empty()) return s;
    s.sup = *std::max_element(ratios.begin(), ratios.end());
    s.inf = *std::min_element(ratios.begin(), ratios.end());
    s.last = ratios.back();
    const std::size_t start = ratios.size() - std::max<std::size_t>(1, ratios.size() / 4);
    long double sum = 0.0L;
    for (std::size_t i = start; i < ratios.size(); ++i) sum += ratios[i];
    s.tail_mean = static_cast<double>(sum / static_cast<long double>(ratios.size() - start));
    for (std::size_t i = start; i < ratios.size(); ++i)
        s.tail_spread = std::max(s.tail_spread, std::abs(ratios[i] - s.tail_mean));
    s.settled = s.tail_spread <= tolerance;
    s.near_one = std::abs(s.tail_mean - 1.0) <= tolerance;
    return s;
}

ScanReport scan_against_model(const SpectralMeasure& m, double gamma, std::optional<double> K0,
                              const SlowlyVarying& L, std::span<const std::int64_t> n_grid, double tolerance) {
    require_open_gamma(gamma, "scan");
    require_increasing(n_grid, "scan");
    if (K0 && !(*K0 > 0.0)) throw DomainError("scan: K0 must be positive");
    ScanReport report;
    report.gamma = gamma;
    report.K0 = K0;
    report.L = L;
    report.tolerance = tolerance;
    const auto variances = variance_many(m, n_grid);
    const double C = c_gamma(gamma);
    std::vector<double> var_ratios;
    std::vector<double> g_ratios;
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        ScanRow row;
        row.n = n_grid[i];
        const double n = static_cast<double>(row.n);
        row.variance = variances[i];
        row.g_n = std::pow(n, gamma) * L(n);
        row.x = 1.0 / n;
        row.G_x = g_eval(m, row.x);
        if (K0) {
            row.var_ratio = row.variance / (*K0 * *row.g_n);
            // x^{2-gamma} L(1/x) with x = 1/n
            row.g_ratio = row.G_x / (C * *K0 * std::pow(row.x, 2.0 - gamma) * L(n));
            var_ratios.push_back(*row.var_ratio);
            g_ratios.push_back(*row.g_ratio);
        }
        report.rows.push_back(row);
    }
    if (K0) {
        report.var_summary = summarize_ratios(var_ratios, tolerance);
        report.g_summary = summarize_ratios(g_ratios, tolerance);
    }
    return report;
}

ScanReport theorem_check(const SpectralMeasure& m, const RegularVariationModel& model,
                         std::span<const std::int64_t> n_grid, double tolerance) {
    return scan_against_model(m, model.gamma, model.K0, model.L, n_grid, tolerance);
}

GrowthBoundReport growth_bound_report(const SpectralMeasure& m, double gamma, const SlowlyVarying& L,
                                      std::span<const std::int64_t> subsequence) {
    require_open_gamma(gamma, "growth_bound_report");
    require_increasing(subsequence, "growth_bound_report");
    GrowthBoundReport r;
    r.n_first = subsequence.front();
    r.n_last = subsequence.back();
    auto g = [&](double n) { return std::pow(n, gamma) * L(n); };

    std::vector<std::int64_t> all;
    for (std::int64_t n = r.n_first; n <= r.n_last; ++n) all.push_back(n);
    const auto variances = variance_many(m, all);

    constexpr double inf = std::numeric_limits<double>::infinity();
    r.sup_var_subsequence = r.sup_g = r.sup_var_all = -inf;
    r.inf_var_subsequence = r.inf_g = r.inf_var_all = inf;
    for (std::size_t i = 0; i < all.size(); ++i) {
        const double ratio = variances[i] / g(static_cast<double>(all[i]));
        r.sup_var_all = std::max(r.sup_var_all, ratio);
        r.inf_var_all = std::min(r.inf_var_all, ratio);
    }
    r.kappa = 1.0;
    for (std::size_t k = 0; k < subsequence.size(); ++k) {
        const double n = static_cast<double>(subsequence[k]);
        const double v = variances[static_cast<std::size_t>(subsequence[k] - r.n_first)] / g(n);
        r.sup_var_subsequence = std::max(r.sup_var_subsequence, v);
        r.inf_var_subsequence = std::min(r.inf_var_subsequence, v);
        const double x = 1.0 / n;
        const double gr = g_eval(m, x) / (std::pow(x, 2.0 - gamma) * L(n));
        r.sup_g = std::max(r.sup_g, gr);
        r.inf_g = std::min(r.inf_g, gr);
        if (k > 0) r.kappa = std::max(r.kappa, n / static_cast<double>(subsequence[k - 1]));
    }
    r.kappa_finite = std::isfinite(r.kappa);
    return r;
}

DichotomyReport dichotomy_check(const SpectralMeasure& m, std::span<const std::int64_t> n_grid) {
    require_increasing(n_grid, "dichotomy_check");
    DichotomyReport r;
    r.ns.assign(n_grid.begin(), n_grid.end());
    const auto variances = variance_many(m, n_grid);
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        const double n = static_cast<double>(n_grid[i]);
        r.ratio.push_back(variances[i] / (n * n));
    }
    r.atom_at_zero = m.atom_at_zero();
    r.tail_value = r.ratio.back();
    r.tail_gap = r.tail_value - r.atom_at_zero;
    r.positive_liminf = r.atom_at_zero > 0.0;
    return r;
}

SubsequenceScan subsequence_scan(const SpectralMeasure& m, double gamma, int r0, int r1) {
    if (!(gamma >= 0.0 && gamma <= 2.0)) throw DomainError("subsequence_scan: gamma must lie in [0, 2]");
    if (r0 < 0 || !(r0 < r1) || r1 > 40) throw DomainError("subsequence_scan: need 0 <= r0 < r1 <= 40");
    SubsequenceScan s;
    s.gamma = gamma;
    s.r0 = r0;
    s.r1 = r1;
    const std::int64_t first = std::int64_t{1} << r0;
    const std::int64_t last = std::int64_t{1} << r1;
    for (std::int64_t n = first; n <= last; ++n) s.ns.push_back(n);
    const auto variances = variance_many(m, s.ns);
    s.full.resize(s.ns.size());
    for (std::size_t i = 0; i < s.ns.size(); ++i) s.full[i] = variances[i] / std::pow(static_cast<double>(s.ns[i]), gamma);
    auto at = [&](std::int64_t n) { return s.full[static_cast<std::size_t>(n - first)]; };
    for (int r = r0; r <= r1; ++r) s.dyadic.push_back(at(std::int64_t{1} << r));
    for (int r = r0; r < r1; ++r) {
        OctaveRow o;
        o.r = r;
        const std::int64_t lo = std::int64_t{1} << r;
        o.dyadic_value = at(lo);
        o.window_max = o.dyadic_value;
        for (std::int64_t n = lo; n <= 2 * lo; ++n) o.window_max = std::max(o.window_max, at(n));
        o.ratio = o.window_max / o.dyadic_value;
        s.octaves.push_back(o);
    }
    return s;
}

GammaFit gamma_fit(std::span<const VariancePoint> points) {
    if (points.size() < 3) throw DomainError("gamma_fit: need at least 3 points");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].n < 1) throw DomainError("gamma_fit: n must be >= 1");
        if (!(points[i].variance > 0.0) || !std::isfinite(points[i].variance))
            throw DomainError("gamma_fit: variances must be positive");
        if (i > 0 && !(points[i].n > points[i - 1].n)) throw DomainError("gamma_fit: n must be increasing");
    }
    const double count = static_cast<double>(points.size());
    long double mx = 0.0L, my = 0.0L;
    for (const auto& p : points) {
        mx += std::log(static_cast<double>(p.n));
        my += std::log(p.variance);
    }
    mx /= count;
    my /= count;
    long double sxx = 0.0L, sxy = 0.0L;
    for (const auto& p : points) {
        const long double dx = std::log(static_cast<double>(p.n)) - mx;
        const long double dy = std::log(p.variance) - my;
        sxx += dx * dx;
        sxy += dx * dy;
    }
    if (!(sxx > 0.0L)) throw DomainError("gamma_fit: degenerate design");
    GammaFit fit;
    const long double slope = sxy / sxx;
    const long double intercept = my - slope * mx;
    fit.gamma_hat = static_cast<double>(slope);
    fit.K0_hat = static_cast<double>(std::exp(intercept));
    long double ss = 0.0L;
    for (const auto& p : points) {
        const long double e = std::log(p.variance) - (intercept + slope * std::log(static_cast<double>(p.n)));
        ss += e * e;
    }
    fit.residual = static_cast<double>(std::sqrt(ss / count));
    return fit;
}

}  // namespace specvar
