#pragma once

#include "specvar/spectral_measure.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace specvar::cli {

enum ExitCode : int { ok = 0, usage = 1, numeric = 2, io = 3 };

/// `gallery:<name>[:<k>=<v>,...]` or `file:<path.json>`.
SpectralMeasure parse_measure_spec(const std::string& spec);

/// `1,2,4`, `a:b[:step]` or `dyadic:r0:r1`; list order is kept.
std::vector<std::int64_t> parse_n_list(const std::string& text);

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace specvar::cli
