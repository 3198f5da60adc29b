#pragma once

// Named measures: every explicit construction used in the test suite.

#include "specvar/spectral_measure.hpp"

#include <map>
#include <string>
#include <vector>

namespace specvar::gallery {

/// Atoms of mass 2^{-k} at 2^{-k}, k = 1..k_max, so that G(x) = 2^{-k} on
/// [2^{-(k+1)}, 2^{-k}). Var(S_{2^r})/2^r converges; Var(S_n)/n does not.
SpectralMeasure counterexample(int k_max = 60);

/// Density scale (2 - gamma) y^{1-gamma} on (0, pi], i.e. G(x) = scale x^{2-gamma}.
SpectralMeasure power_law(double gamma, double scale = 1.0);

/// Density 2y on (0, pi], G(x) = x^2.
SpectralMeasure quadratic();

/// Atoms of mass 4^{-k} at 2 pi 2^{-k}, k = 2..k_max.
SpectralMeasure nonergodic(int k_max = 40);

/// power_law(1, 1/pi): flat spectrum, r_0 = 1, r_k = 0.
SpectralMeasure whitenoise();

/// Copy of base with a added to the origin atom.
SpectralMeasure with_origin_atom(const SpectralMeasure& base, double a);

struct Entry {
    std::string name;
    std::string parameters;
    std::string description;
};

/// Names accepted by make(), in listing order.
const std::vector<Entry>& entries();

/// Builds a gallery measure from its name and key=value parameters. The key
/// "origin" adds an origin atom to any entry. DomainError on unknown names or keys.
SpectralMeasure make(const std::string& name, const std::map<std::string, double>& params = {});

}  // namespace specvar::gallery
