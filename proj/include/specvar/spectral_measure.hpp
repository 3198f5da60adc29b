#pragma once

// Folded spectral measures G on [0, pi].
//
// A symmetric spectral measure F on [-pi, pi] is stored through its folding
// G(x) = F([-x, x]): an atom at the origin, atoms in (0, pi] carrying the
// combined mass of the pair at +-t, and absolutely continuous pieces. G is
// right-continuous, so an atom at t counts toward G(x) once x >= t.

#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace specvar {

inline constexpr double kPi = std::numbers::pi;

/// Bounds within this distance above pi are read as pi.
inline constexpr double kPiSlack = 1e-12;

struct Atom {
    double location = 0.0;  ///< in (0, pi]
    double mass = 0.0;      ///< folded mass, > 0
};

/// coef * y^exponent, exponent > -1.
struct PowerForm {
    double coef = 0.0;
    double exponent = 0.0;
};

/// Piecewise-linear interpolation of nonnegative values on a strictly increasing grid.
struct TableForm {
    std::vector<double> ys;
    std::vector<double> values;
};

/// Caller-supplied density. Must be nonnegative and bounded on its interval;
/// integrated by adaptive quadrature and never serialized.
struct OpaqueForm {
    std::function<double(double)> density;
};

class DensityPiece {
public:
    using Form = std::variant<PowerForm, TableForm, OpaqueForm>;

    static DensityPiece power(double lo, double hi, double coef, double exponent);
    static DensityPiece table(std::vector<double> ys, std::vector<double> values);
    static DensityPiece opaque(double lo, double hi, std::function<double(double)> density);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    const Form& form() const noexcept { return form_; }

    /// Density value at y; zero outside (lo, hi].
    double density(double y) const;
    /// Integral of the density over (lo, min(x, hi)].
    double mass_up_to(double x) const;
    double total_mass() const { return mass_up_to(hi_); }
    bool serializable() const noexcept { return !std::holds_alternative<OpaqueForm>(form_); }

    /// Same piece with the density multiplied by factor >= 0.
    DensityPiece scaled(double factor) const;

private:
    DensityPiece(double lo, double hi, Form form) : lo_(lo), hi_(hi), form_(std::move(form)) {}

    double lo_;
    double hi_;
    Form form_;
};

/// Provenance carried by constructed measures (not serialized).
struct MeasureInfo {
    std::string name;
    /// Mass dropped by truncating an infinite construction.
    double truncated_tail_mass = 0.0;
};

/// Immutable folded spectral measure. Construction validates every invariant
/// and throws ValidationError on violation.
class SpectralMeasure {
public:
    /// The zero measure.
    SpectralMeasure() = default;
    SpectralMeasure(double atom_at_zero, std::vector<Atom> atoms, std::vector<DensityPiece> pieces,
                    MeasureInfo info = {});

    double atom_at_zero() const noexcept { return atom_at_zero_; }
    std::span<const Atom> atoms() const noexcept { return atoms_; }
    std::span<const DensityPiece> density_pieces() const noexcept { return pieces_; }
    const MeasureInfo& info() const noexcept { return info_; }

    bool has_density() const noexcept { return !pieces_.empty(); }
    bool serializable() const noexcept;
    /// G(pi) = r_0.
    double total_mass() const noexcept { return total_mass_; }

    SpectralMeasure scaled(double factor) const;
    SpectralMeasure with_info(MeasureInfo info) const;

private:
    double atom_at_zero_ = 0.0;
    std::vector<Atom> atoms_;
    std::vector<DensityPiece> pieces_;
    MeasureInfo info_;
    double total_mass_ = 0.0;
};

/// G(x) for x in [0, pi]; DomainError outside.
double g_eval(const SpectralMeasure& m, double x);

/// Absolutely continuous part of G(x), no domain check (x clamped to [0, pi]).
double g_density_part(const SpectralMeasure& m, double x);

/// r_k = a_0 + sum mass cos(k y) + int cos(k y) f(y) dy, by quadrature split at
/// the zeros of cos(k y). Throws NumericError when the tolerance is missed.
double autocovariance(const SpectralMeasure& m, std::int64_t k);

/// r_0 .. r_{count-1} in one pass. Power pieces use closed forms (exponent 0
/// or 1) or an incremental scaled integral; table pieces are exact. Cost is
/// linear in count except for opaque pieces.
std::vector<double> autocovariances(const SpectralMeasure& m, std::size_t count);

/// int_0^pi y^{-2} dG(y), +infinity when it diverges.
double robinson_integral(const SpectralMeasure& m);

/// Cosine of k*y with the product formed exactly (double-double).
double cos_of_product(std::int64_t k, double y);
/// Sine of k*y/2 with the product formed exactly.
double sin_of_half_product(std::int64_t k, double y);

}  // namespace specvar
