#pragma once

// Text formats shared by the CLI and the bindings. Floats are written with 17
// significant digits, '.' as decimal separator and '\n' line endings, so every
// CSV reads back to the same doubles.

#include "specvar/asymptotics.hpp"
#include "specvar/fejer_variance.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace specvar {

/// 17 significant digits, locale independent; "inf", "-inf", "nan" for non-finite values.
std::string format_double(double v);
/// Inverse of format_double; ValidationError on trailing garbage or empty input.
double parse_double(std::string_view text);
std::int64_t parse_int(std::string_view text);

struct ConstantsRow {
    double gamma = 0.0;
    double C = 0.0;
    double D = 0.0;
    double quad_identity_residual = 0.0;
};

ConstantsRow constants_row(double gamma);

void write_variance_csv(std::ostream& out, std::span<const VariancePoint> rows);
std::vector<VariancePoint> read_variance_csv(std::istream& in);

void write_bounds_csv(std::ostream& out, std::span<const BoundsReport> rows);
/// A is not part of the CSV and is supplied by the caller.
std::vector<BoundsReport> read_bounds_csv(std::istream& in, double A);

void write_constants_csv(std::ostream& out, std::span<const ConstantsRow> rows);
std::vector<ConstantsRow> read_constants_csv(std::istream& in);

/// Header `n,variance,g_n,var_ratio,x,G_x,g_ratio`; absent fields are empty.
void write_scan_csv(std::ostream& out, const ScanReport& report);
std::vector<ScanRow> read_scan_csv(std::istream& in);

nlohmann::json scan_to_json(const ScanReport& report);

}  // namespace specvar
