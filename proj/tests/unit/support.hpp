#pragma once

#include "specvar/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace testing {

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline std::vector<std::pair<std::string, specvar::SpectralMeasure>> all_gallery() {
    using namespace specvar::gallery;
    return {{"counterexample", counterexample()},
            {"power0.5", power_law(0.5)},
            {"power1.5", power_law(1.5)},
            {"quadratic", quadratic()},
            {"nonergodic", nonergodic()},
            {"whitenoise", whitenoise()}};
}

}  // namespace testing
