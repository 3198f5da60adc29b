#pragma once

// JSON representation of a SpectralMeasure:
//
//   { "atom_at_zero": a0,
//     "atoms":   [ { "y": loc, "mass": w }, ... ],
//     "density": [ { "type": "power", "coef": c, "exp": p, "lo": lo, "hi": hi }
//                | { "type": "table", "ys": [...], "vals": [...] }, ... ] }
//
// Unknown keys are rejected with their path. Opaque densities cannot be written.

#include "specvar/spectral_measure.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace specvar {

nlohmann::json measure_to_json(const SpectralMeasure& m);
SpectralMeasure measure_from_json(const nlohmann::json& j);

std::string measure_to_string(const SpectralMeasure& m);
SpectralMeasure measure_from_string(const std::string& text);

/// Reads a measure file; IoError when unreadable, ValidationError when malformed.
SpectralMeasure read_measure_file(const std::string& path);

}  // namespace specvar
