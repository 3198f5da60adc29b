#include "specvar/fejer_variance.hpp"

#include "density_quadrature.hpp"
#include "specvar/errors.hpp"
#include "specvar/parallel.hpp"
#include "specvar/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <variant>

namespace specvar {

namespace {

void require_positive_n(std::int64_t n, const char* what) {
    if (n < 1) {
        std::ostringstream os;
        os << what << ": n must be >= 1, got " << n;
        throw DomainError(os.str());
    }
}

// A single flat density on all of [0, pi] integrates the kernel exactly:
// int_0^pi I_n(y) dy = n pi.
bool flat_full_range(const SpectralMeasure& m) {
    const auto pieces = m.density_pieces();
    if (pieces.size() != 1) return false;
    const auto* p = std::get_if<PowerForm>(&pieces[0].form());
    return p && p->exponent == 0.0 && pieces[0].lo() == 0.0 && pieces[0].hi() == kPi;
}

bool has_opaque(const SpectralMeasure& m) {
    for (const auto& p : m.density_pieces())
        if (std::holds_alternative<OpaqueForm>(p.form())) return true;
    return false;
}

}  // namespace

bool BoundsReport::brackets(double rel_slack) const {
    const double slack = rel_slack * std::max(1.0, std::abs(variance));
    return lower <= variance + slack && variance <= upper + slack;
}

double fejer_kernel(std::int64_t n, double y) {
    require_positive_n(n, "fejer_kernel");
    if (!(y >= 0.0) || y > kPi + kPiSlack) throw DomainError("fejer_kernel: y outside [0, pi]");
    const double nd = static_cast<double>(n);
    const double n2 = nd * nd;
    if (y < 1e-6 / nd) return n2 * (1.0 - (n2 - 1.0) * y * y / 12.0);
    const double num = sin_of_half_product(n, y);
    const double den = std::sin(0.5 * y);
    return std::min(n2, (num * num) / (den * den));
}

double variance_spectral(const SpectralMeasure& m, std::int64_t n) {
    require_positive_n(n, "variance_spectral");
    const long double nd = static_cast<long double>(n);
    long double s = m.atom_at_zero() * nd * nd;
    for (const auto& a : m.atoms()) s += a.mass * static_cast<long double>(fejer_kernel(n, a.location));
    if (flat_full_range(m)) {
        s += static_cast<long double>(m.density_pieces()[0].total_mass()) * nd;
    } else if (m.has_density()) {
        const double nn = static_cast<double>(n);
        auto kernel = [nn](double y) {
            if (y < 1e-6 / nn) return nn * nn * (1.0 - (nn * nn - 1.0) * y * y / 12.0);
            const double num = std::sin(0.5 * nn * y);
            const double den = std::sin(0.5 * y);
            return (num * num) / (den * den);
        };
        const auto r = detail::integrate_density(m, kernel, 2.0 * kPi / nn);
        detail::check_tolerance(r, "variance_spectral");
        s += r.value;
    }
    return static_cast<double>(std::max(s, 0.0L));
}

double variance_covariance(const SpectralMeasure& m, std::int64_t n) {
    require_positive_n(n, "variance_covariance");
    const auto r = autocovariances(m, static_cast<std::size_t>(n));
    const long double nd = static_cast<long double>(n);
    long double cross = 0.0L;
    for (std::int64_t k = 1; k < n; ++k) cross += static_cast<long double>(n - k) * r[static_cast<std::size_t>(k)];
    const long double v = nd * r[0] + 2.0L * cross;
    return static_cast<double>(v);
}

std::vector<double> variance_profile(const SpectralMeasure& m, std::int64_t max_n) {
    require_positive_n(max_n, "variance_profile");
    const auto r = autocovariances(m, static_cast<std::size_t>(max_n));
    std::vector<double> out(static_cast<std::size_t>(max_n));
    // Var(S_{n+1}) - Var(S_n) = r_0 + 2 (r_1 + ... + r_n)
    long double partial = 0.0L;
    long double v = 0.0L;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i > 0) partial += r[i];
        v += r[0] + 2.0L * partial;
        out[i] = static_cast<double>(v);
    }
    return out;
}

std::vector<double> variance_many(const SpectralMeasure& m, std::span<const std::int64_t> ns) {
    std::vector<double> out(ns.size());
    if (ns.empty()) return out;
    std::int64_t max_n = 0;
    long double kernel_cost = 0.0L;
    for (auto n : ns) {
        require_positive_n(n, "variance_many");
        max_n = std::max(max_n, n);
        kernel_cost += 0.5L * static_cast<long double>(n);
    }
    if (m.has_density() && !has_opaque(m) && static_cast<long double>(max_n) < kernel_cost) {
        const auto profile = variance_profile(m, max_n);
        for (std::size_t i = 0; i < ns.size(); ++i) out[i] = profile[static_cast<std::size_t>(ns[i] - 1)];
        return out;
    }
    parallel_for(ns.size(), [&](std::size_t i) { out[i] = variance_spectral(m, ns[i]); });
    return out;
}

double g_over_cube_tail(const SpectralMeasure& m, double a) {
    if (!(a > 0.0) || a > kPi + kPiSlack) throw DomainError("g_over_cube_tail: a must lie in (0, pi]");
    a = std::min(a, kPi);
    const long double inv_pi2 = 1.0L / (static_cast<long double>(kPi) * kPi);
    auto step_tail = [&](double from) {
        const long double f = from;
        return 0.5L * (1.0L / (f * f) - inv_pi2);
    };
    long double s = m.atom_at_zero() * step_tail(a);
    for (const auto& atom : m.atoms()) s += atom.mass * step_tail(std::max(a, atom.location));
    if (m.has_density()) {
        std::vector<double> edges{a};
        for (double e = 2.0 * a; e < kPi; e *= 2.0) edges.push_back(e);
        for (const auto& p : m.density_pieces()) {
            if (p.lo() > a && p.lo() < kPi) edges.push_back(p.lo());
            if (p.hi() > a && p.hi() < kPi) edges.push_back(p.hi());
        }
        edges.push_back(kPi);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        auto integrand = [&m](double y) { return g_density_part(m, y) / (y * y * y); };
        quad::Result total;
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) total += quad::integrate(integrand, edges[i], edges[i + 1]);
        detail::check_tolerance(total, "sandwich tail integral");
        s += total.value;
    }
    return static_cast<double>(s);
}

BoundsReport sandwich(const SpectralMeasure& m, std::int64_t n, double A) {
    require_positive_n(n, "sandwich");
    if (!(A > 0.0) || !std::isfinite(A)) throw DomainError("sandwich: A must be positive");
    if (A > static_cast<double>(n)) throw DomainError("sandwich: A must not exceed n");
    const double nd = static_cast<double>(n);
    const double n2 = nd * nd;
    const double pi2 = kPi * kPi;
    BoundsReport r;
    r.n = n;
    r.A = A;
    r.variance = variance_spectral(m, n);
    r.lower = 4.0 / pi2 * n2 * g_eval(m, 1.0 / nd);
    const double a = A / nd;
    r.upper = m.total_mass() + pi2 / 4.0 * n2 * g_eval(m, a) + pi2 * g_over_cube_tail(m, a);
    return r;
}

}  // namespace specvar
