#include "specvar/spectral_measure.hpp"

#include "density_quadrature.hpp"
#include "specvar/errors.hpp"
#include "specvar/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace specvar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp_upper_bound(double hi, const char* what) {
    if (!std::isfinite(hi) || hi > kPi + kPiSlack) {
        std::ostringstream os;
        os << what << " " << hi << " exceeds pi";
        throw ValidationError(os.str());
    }
    return std::min(hi, kPi);
}

void check_interval(double lo, double hi) {
    if (!std::isfinite(lo) || lo < 0.0) throw ValidationError("density interval must start at or after 0");
    if (!(hi > lo)) throw ValidationError("density interval must satisfy lo < hi");
}

double sin_of_product(std::int64_t k, double y) {
    const double kd = static_cast<double>(k);
    const double hi = kd * y;
    const double lo = std::fma(kd, y, -hi);
    return std::sin(hi) + lo * std::cos(hi);
}

// int_0^X cos(u) u^p du at X = k*b for k = 1..count-1, by accumulating
// consecutive increments of length b.
std::vector<long double> scaled_cosine_integrals(double b, double p, std::size_t count, double& error) {
    std::vector<long double> out(count, 0.0L);
    auto integrand = [p](double u) { return std::cos(u) * std::pow(u, p); };
    long double acc = 0.0L;
    double prev = 0.0;
    for (std::size_t k = 1; k < count; ++k) {
        const double next = static_cast<double>(k) * b;
        quad::Result r;
        if (k == 1) {
            auto cosine = [](double u) { return std::cos(u); };
            r = quad::integrate_power_weighted(cosine, next, p);
        } else {
            r = quad::integrate(integrand, prev, next);
        }
        acc += r.value;
        error += r.error;
        out[k] = acc;
        prev = next;
    }
    return out;
}

void power_autocovariances(const DensityPiece& piece, const PowerForm& f, std::vector<long double>& acc,
                           double& error) {
    const std::size_t count = acc.size();
    const double c = f.coef;
    const double p = f.exponent;
    const double lo = piece.lo();
    const double hi = piece.hi();
    if (c == 0.0 || count == 0) return;
    acc[0] += piece.total_mass();
    if (p == 0.0) {
        for (std::size_t k = 1; k < count; ++k) {
            const auto ki = static_cast<std::int64_t>(k);
            acc[k] += c * (static_cast<long double>(sin_of_product(ki, hi)) - sin_of_product(ki, lo)) /
                      static_cast<long double>(k);
        }
        return;
    }
    if (p == 1.0) {
        auto prim = [](std::int64_t k, double y) {
            const long double kd = static_cast<long double>(k);
            return y * static_cast<long double>(sin_of_product(k, y)) / kd +
                   static_cast<long double>(cos_of_product(k, y)) / (kd * kd);
        };
        for (std::size_t k = 1; k < count; ++k) {
            const auto ki = static_cast<std::int64_t>(k);
            acc[k] += c * (prim(ki, hi) - prim(ki, lo));
        }
        return;
    }
    const auto upper = scaled_cosine_integrals(hi, p, count, error);
    std::vector<long double> lower;
    if (lo > 0.0) lower = scaled_cosine_integrals(lo, p, count, error);
    for (std::size_t k = 1; k < count; ++k) {
        const long double diff = upper[k] - (lower.empty() ? 0.0L : lower[k]);
        acc[k] += c * std::pow(static_cast<long double>(k), -(p + 1.0L)) * diff;
    }
}

void table_autocovariances(const TableForm& t, std::vector<long double>& acc) {
    const std::size_t count = acc.size();
    for (std::size_t i = 0; i + 1 < t.ys.size(); ++i) {
        const double a = t.ys[i];
        const double b = t.ys[i + 1];
        const long double fa = t.values[i];
        const long double fb = t.values[i + 1];
        const long double slope = (fb - fa) / (static_cast<long double>(b) - a);
        if (count > 0) acc[0] += 0.5L * (fa + fb) * (static_cast<long double>(b) - a);
        // int cos(ky)(fa + slope (y-a)) dy = [f(y) sin(ky)/k + slope cos(ky)/k^2]_a^b
        for (std::size_t k = 1; k < count; ++k) {
            const auto ki = static_cast<std::int64_t>(k);
            const long double kd = static_cast<long double>(k);
            const long double upper = fb * sin_of_product(ki, b) / kd + slope * cos_of_product(ki, b) / (kd * kd);
            const long double lower = fa * sin_of_product(ki, a) / kd + slope * cos_of_product(ki, a) / (kd * kd);
            acc[k] += upper - lower;
        }
    }
}

}  // namespace

double cos_of_product(std::int64_t k, double y) {
    const double kd = static_cast<double>(k);
    const double hi = kd * y;
    const double lo = std::fma(kd, y, -hi);
    return std::cos(hi) - lo * std::sin(hi);
}

double sin_of_half_product(std::int64_t k, double y) {
    const double kd = static_cast<double>(k);
    const double hi = kd * y;
    const double lo = std::fma(kd, y, -hi);
    const double h = 0.5 * hi;
    return std::sin(h) + 0.5 * lo * std::cos(h);
}

// ---- DensityPiece ----------------------------------------------------------

DensityPiece DensityPiece::power(double lo, double hi, double coef, double exponent) {
    hi = clamp_upper_bound(hi, "power density upper bound");
    check_interval(lo, hi);
    if (!std::isfinite(coef) || coef < 0.0) throw ValidationError("power density coefficient must be >= 0");
    if (!std::isfinite(exponent) || !(exponent > -1.0))
        throw ValidationError("power density exponent must exceed -1");
    return DensityPiece(lo, hi, PowerForm{coef, exponent});
}

DensityPiece DensityPiece::table(std::vector<double> ys, std::vector<double> values) {
    if (ys.size() < 2) throw ValidationError("table density needs at least two grid points");
    if (ys.size() != values.size()) throw ValidationError("table density grid and values differ in length");
    for (std::size_t i = 0; i < ys.size(); ++i) {
        if (!std::isfinite(ys[i])) throw ValidationError("table grid must be finite");
        if (i > 0 && !(ys[i] > ys[i - 1])) throw ValidationError("table grid must be strictly increasing");
        if (!std::isfinite(values[i]) || values[i] < 0.0)
            throw ValidationError("table density values must be finite and >= 0");
    }
    ys.back() = clamp_upper_bound(ys.back(), "table grid end");
    check_interval(ys.front(), ys.back());
    const double lo = ys.front();
    const double hi = ys.back();
    return DensityPiece(lo, hi, TableForm{std::move(ys), std::move(values)});
}

DensityPiece DensityPiece::opaque(double lo, double hi, std::function<double(double)> density) {
    hi = clamp_upper_bound(hi, "opaque density upper bound");
    check_interval(lo, hi);
    if (!density) throw ValidationError("opaque density needs an evaluator");
    return DensityPiece(lo, hi, OpaqueForm{std::move(density)});
}

double DensityPiece::density(double y) const {
    if (!(y > lo_) || y > hi_) return 0.0;
    return std::visit(
        [y](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, PowerForm>) {
                return f.coef * std::pow(y, f.exponent);
            } else if constexpr (std::is_same_v<T, TableForm>) {
                return detail::table_value(f, y);
            } else {
                return f.density(y);
            }
        },
        form_);
}

double DensityPiece::mass_up_to(double x) const {
    if (!(x > lo_)) return 0.0;
    const double u = std::min(x, hi_);
    return std::visit(
        [&](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, PowerForm>) {
                const double q = f.exponent + 1.0;
                return f.coef * (std::pow(u, q) - std::pow(lo_, q)) / q;
            } else if constexpr (std::is_same_v<T, TableForm>) {
                long double s = 0.0L;
                for (std::size_t i = 0; i + 1 < f.ys.size(); ++i) {
                    const double a = f.ys[i];
                    if (!(u > a)) break;
                    const double b = std::min(u, f.ys[i + 1]);
                    const double fb = detail::table_value(f, b);
                    s += 0.5L * (static_cast<long double>(f.values[i]) + fb) * (static_cast<long double>(b) - a);
                }
                return static_cast<double>(s);
            } else {
                const auto r = quad::integrate(f.density, lo_, u);
                detail::check_tolerance(r, "opaque density mass");
                return r.value;
            }
        },
        form_);
}

DensityPiece DensityPiece::scaled(double factor) const {
    if (!std::isfinite(factor) || factor < 0.0) throw DomainError("scale factor must be finite and >= 0");
    return std::visit(
        [&](const auto& f) -> DensityPiece {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, PowerForm>) {
                return DensityPiece(lo_, hi_, PowerForm{f.coef * factor, f.exponent});
            } else if constexpr (std::is_same_v<T, TableForm>) {
                TableForm t = f;
                for (auto& v : t.values) v *= factor;
                return DensityPiece(lo_, hi_, std::move(t));
            } else {
                auto inner = f.density;
                return DensityPiece(lo_, hi_, OpaqueForm{[inner, factor](double y) { return factor * inner(y); }});
            }
        },
        form_);
}

// ---- SpectralMeasure -------------------------------------------------------

SpectralMeasure::SpectralMeasure(double atom_at_zero, std::vector<Atom> atoms, std::vector<DensityPiece> pieces,
                                 MeasureInfo info)
    : atom_at_zero_(atom_at_zero), atoms_(std::move(atoms)), pieces_(std::move(pieces)), info_(std::move(info)) {
    if (!std::isfinite(atom_at_zero_) || atom_at_zero_ < 0.0)
        throw ValidationError("atom_at_zero must be finite and >= 0");
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        Atom& a = atoms_[i];
        if (!std::isfinite(a.location) || !(a.location > 0.0))
            throw ValidationError("atom locations must lie in (0, pi]");
        a.location = clamp_upper_bound(a.location, "atom location");
        if (!std::isfinite(a.mass) || !(a.mass > 0.0)) throw ValidationError("atom masses must be finite and > 0");
        if (i > 0 && !(a.location > atoms_[i - 1].location))
            throw ValidationError("atom locations must be strictly increasing");
    }
    std::sort(pieces_.begin(), pieces_.end(),
              [](const DensityPiece& a, const DensityPiece& b) { return a.lo() < b.lo(); });
    for (std::size_t i = 1; i < pieces_.size(); ++i) {
        if (pieces_[i].lo() < pieces_[i - 1].hi()) throw ValidationError("density pieces must not overlap");
    }
    long double total = atom_at_zero_;
    for (const auto& a : atoms_) total += a.mass;
    for (const auto& p : pieces_) total += p.total_mass();
    total_mass_ = static_cast<double>(total);
    if (!std::isfinite(total_mass_)) throw ValidationError("total mass must be finite");
}

bool SpectralMeasure::serializable() const noexcept {
    return std::all_of(pieces_.begin(), pieces_.end(), [](const DensityPiece& p) { return p.serializable(); });
}

SpectralMeasure SpectralMeasure::scaled(double factor) const {
    if (!std::isfinite(factor) || factor < 0.0) throw DomainError("scale factor must be finite and >= 0");
    std::vector<Atom> atoms;
    if (factor > 0.0) {
        atoms = atoms_;
        for (auto& a : atoms) a.mass *= factor;
    }
    std::vector<DensityPiece> pieces;
    for (const auto& p : pieces_) pieces.push_back(p.scaled(factor));
    return SpectralMeasure(atom_at_zero_ * factor, std::move(atoms), std::move(pieces), info_);
}

SpectralMeasure SpectralMeasure::with_info(MeasureInfo info) const {
    SpectralMeasure copy = *this;
    copy.info_ = std::move(info);
    return copy;
}

// ---- operations ------------------------------------------------------------

double g_density_part(const SpectralMeasure& m, double x) {
    x = std::clamp(x, 0.0, kPi);
    long double s = 0.0L;
    for (const auto& p : m.density_pieces()) s += p.mass_up_to(x);
    return static_cast<double>(s);
}

double g_eval(const SpectralMeasure& m, double x) {
    if (!(x >= 0.0) || x > kPi + kPiSlack) {
        std::ostringstream os;
        os << "g_eval: x = " << x << " outside [0, pi]";
        throw DomainError(os.str());
    }
    x = std::min(x, kPi);
    long double s = m.atom_at_zero();
    for (const auto& a : m.atoms()) {
        if (a.location > x) break;
        s += a.mass;
    }
    s += g_density_part(m, x);
    return static_cast<double>(s);
}

double autocovariance(const SpectralMeasure& m, std::int64_t k) {
    if (k < 0) throw DomainError("autocovariance: lag must be >= 0");
    if (k == 0) return m.total_mass();
    long double s = m.atom_at_zero();
    for (const auto& a : m.atoms()) s += a.mass * static_cast<long double>(cos_of_product(k, a.location));
    if (m.has_density()) {
        const double kd = static_cast<double>(k);
        auto cosine = [kd](double y) { return std::cos(kd * y); };
        // cut at the zeros of cos(k y)
        const auto r = detail::integrate_density(m, cosine, kPi / kd, kPi, 0.5 * kPi / kd);
        detail::check_tolerance(r, "autocovariance");
        s += r.value;
    }
    return static_cast<double>(s);
}

std::vector<double> autocovariances(const SpectralMeasure& m, std::size_t count) {
    std::vector<long double> acc(count, static_cast<long double>(m.atom_at_zero()));
    for (const auto& a : m.atoms()) {
        if (count > 0) acc[0] += a.mass;
        for (std::size_t k = 1; k < count; ++k)
            acc[k] += a.mass * static_cast<long double>(cos_of_product(static_cast<std::int64_t>(k), a.location));
    }
    double error = 0.0;
    double scale = 0.0;
    for (const auto& piece : m.density_pieces()) {
        scale += piece.total_mass();
        std::visit(
            [&](const auto& f) {
                using T = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<T, PowerForm>) {
                    power_autocovariances(piece, f, acc, error);
                } else if constexpr (std::is_same_v<T, TableForm>) {
                    table_autocovariances(f, acc);
                } else {
                    if (count > 0) acc[0] += piece.total_mass();
                    for (std::size_t k = 1; k < count; ++k) {
                        const double kd = static_cast<double>(k);
                        auto phi = [kd](double y) { return std::cos(kd * y); };
                        const auto r =
                            detail::integrate_piece(piece, piece.lo(), piece.hi(), phi, kPi / kd, 0.5 * kPi / kd);
                        acc[k] += r.value;
                        error += r.error;
                    }
                }
            },
            piece.form());
    }
    const double allowed = std::max(detail::kDensityAbsTol, detail::kDensityRelTol * scale) *
                           static_cast<double>(std::max<std::size_t>(count, 1));
    if (!(error <= allowed)) throw NumericError("autocovariances: accumulated quadrature error too large", error);
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) out[k] = static_cast<double>(acc[k]);
    return out;
}

double robinson_integral(const SpectralMeasure& m) {
    if (m.atom_at_zero() > 0.0) return kInf;
    long double s = 0.0L;
    for (const auto& a : m.atoms()) s += a.mass / (static_cast<long double>(a.location) * a.location);
    for (const auto& piece : m.density_pieces()) {
        const double lo = piece.lo();
        const double hi = piece.hi();
        double part = std::visit(
            [&](const auto& f) -> double {
                using T = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<T, PowerForm>) {
                    if (f.coef == 0.0) return 0.0;
                    const double q = f.exponent - 1.0;  // antiderivative of y^(p-2) is y^q / q
                    if (lo == 0.0) return q > 0.0 ? f.coef * std::pow(hi, q) / q : kInf;
                    if (q == 0.0) return f.coef * std::log(hi / lo);
                    return f.coef * (std::pow(hi, q) - std::pow(lo, q)) / q;
                } else if constexpr (std::is_same_v<T, TableForm>) {
                    long double t = 0.0L;
                    for (std::size_t i = 0; i + 1 < f.ys.size(); ++i) {
                        const double a = f.ys[i];
                        const double b = f.ys[i + 1];
                        const double fa = f.values[i];
                        const double fb = f.values[i + 1];
                        if (fa == 0.0 && fb == 0.0) continue;
                        if (a == 0.0) {
                            // Any positive value or slope at the origin gives a y^-2 or y^-1 singularity.
                            return kInf;
                        }
                        const long double slope = (static_cast<long double>(fb) - fa) / (static_cast<long double>(b) - a);
                        const long double intercept = fa - slope * a;
                        t += intercept * (1.0L / a - 1.0L / b) + slope * std::log(static_cast<long double>(b) / a);
                    }
                    return static_cast<double>(t);
                } else {
                    auto weighted = [&](double y) { return f.density(y) / (y * y); };
                    if (lo > 0.0) return quad::integrate(weighted, lo, hi).value;
                    // Dyadic shells toward the origin; a series that has not
                    // settled after many shells is reported as divergent.
                    long double t = 0.0L;
                    double right = hi;
                    for (int j = 0; j < 1000; ++j) {
                        const double left = 0.5 * right;
                        const double shell = quad::integrate(weighted, left, right).value;
                        t += shell;
                        if (j >= 10 && shell <= 1e-15 * static_cast<double>(t)) return static_cast<double>(t);
                        right = left;
                    }
                    return kInf;
                }
            },
            piece.form());
        if (std::isinf(part)) return kInf;
        s += part;
    }
    return static_cast<double>(s);
}

}  // namespace specvar
