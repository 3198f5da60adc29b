#pragma once

// Integration of a smooth cofactor phi(y) against the density pieces of a
// measure. Each piece is cut on a uniform grid placed at the sign changes of
// phi (the caller's step and offset), plus table nodes; the leftmost segment of a power piece with a
// non-integer exponent at the origin goes through a Gauss-Jacobi rule.

#include "specvar/errors.hpp"
#include "specvar/quadrature.hpp"
#include "specvar/spectral_measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace specvar::detail {

inline constexpr double kDensityAbsTol = 1e-10;
inline constexpr double kDensityRelTol = 1e-12;

inline bool is_nonnegative_integer(double p) { return p >= 0.0 && std::floor(p) == p; }

/// Linear interpolation of a table, clamped to its grid.
inline double table_value(const TableForm& t, double y) {
    if (y <= t.ys.front()) return t.values.front();
    if (y >= t.ys.back()) return t.values.back();
    const auto it = std::upper_bound(t.ys.begin(), t.ys.end(), y);
    const std::size_t j = static_cast<std::size_t>(it - t.ys.begin());
    const double w = (y - t.ys[j - 1]) / (t.ys[j] - t.ys[j - 1]);
    return t.values[j - 1] + w * (t.values[j] - t.values[j - 1]);
}

/// Cut points offset + j * step inside (a, b), plus table nodes.
inline std::vector<double> segment_edges(const DensityPiece& piece, double a, double b, double step,
                                         double offset = 0.0) {
    std::vector<double> edges{a};
    if (step > 0.0) {
        for (double j = std::floor((a - offset) / step) + 1.0;; j += 1.0) {
            const double e = offset + j * step;
            if (!(e < b)) break;
            if (e > a) edges.push_back(e);
        }
    }
    if (const auto* t = std::get_if<TableForm>(&piece.form())) {
        for (double y : t->ys)
            if (y > a && y < b) edges.push_back(y);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    }
    edges.push_back(b);
    return edges;
}

/// int_a^b phi(y) f(y) dy over one piece, (a,b] inside the piece interval.
template <class Phi>
quad::Result integrate_piece(const DensityPiece& piece, double a, double b, Phi&& phi, double step,
                             double offset = 0.0) {
    quad::Result total;
    if (!(b > a)) return total;
    const auto edges = segment_edges(piece, a, b, step, offset);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double s = edges[i];
        const double t = edges[i + 1];
        if (!(t > s)) continue;
        std::visit(
            [&](const auto& form) {
                using T = std::decay_t<decltype(form)>;
                if constexpr (std::is_same_v<T, PowerForm>) {
                    const double c = form.coef;
                    const double p = form.exponent;
                    if (c == 0.0) return;
                    if (s == 0.0 && !is_nonnegative_integer(p)) {
                        auto scaled = [&](double y) { return c * phi(y); };
                        total += quad::integrate_power_weighted(scaled, t, p);
                    } else if (p == 0.0) {
                        total += quad::integrate([&](double y) { return c * phi(y); }, s, t);
                    } else if (p == 1.0) {
                        total += quad::integrate([&](double y) { return c * y * phi(y); }, s, t);
                    } else {
                        total += quad::integrate([&](double y) { return c * std::pow(y, p) * phi(y); }, s, t);
                    }
                } else if constexpr (std::is_same_v<T, TableForm>) {
                    // Edges include every table node, so the density is linear on [s,t].
                    const double fs = table_value(form, s);
                    const double ft = table_value(form, t);
                    const double slope = (ft - fs) / (t - s);
                    total += quad::integrate([&](double y) { return (fs + slope * (y - s)) * phi(y); }, s, t);
                } else {
                    total += quad::integrate([&](double y) { return form.density(y) * phi(y); }, s, t);
                }
            },
            piece.form());
    }
    return total;
}

/// Sum over all pieces of int_{(0, upper]} phi dF_density.
template <class Phi>
quad::Result integrate_density(const SpectralMeasure& m, Phi&& phi, double step, double upper = kPi,
                               double offset = 0.0) {
    quad::Result total;
    for (const auto& piece : m.density_pieces()) {
        const double b = std::min(piece.hi(), upper);
        if (b > piece.lo()) total += integrate_piece(piece, piece.lo(), b, phi, step, offset);
    }
    return total;
}

inline void check_tolerance(const quad::Result& r, const std::string& what) {
    const double allowed = std::max(kDensityAbsTol, kDensityRelTol * r.l1);
    if (!(r.error <= allowed)) {
        std::ostringstream os;
        os << what << ": quadrature error estimate " << r.error << " exceeds tolerance " << allowed;
        throw NumericError(os.str(), r.error);
    }
}

}  // namespace specvar::detail
