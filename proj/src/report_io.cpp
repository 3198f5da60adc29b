#include "specvar/report_io.hpp"

#include "specvar/errors.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace specvar {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

// Reads a CSV with a fixed header; returns the data rows split into fields.
std::vector<std::vector<std::string>> read_table(std::istream& in, const std::string& header) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("CSV input is empty; expected header '" + header + "'");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header) throw ValidationError("CSV header '" + line + "' does not match '" + header + "'");
    const auto columns = split(header, ',').size();
    std::vector<std::vector<std::string>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split(line, ',');
        if (fields.size() != columns) {
            std::ostringstream os;
            os << "CSV line " << lineno << " has " << fields.size() << " fields, expected " << columns;
            throw ValidationError(os.str());
        }
        rows.push_back(std::move(fields));
    }
    return rows;
}

std::string optional_field(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::optional<double> parse_optional(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return parse_double(s);
}

nlohmann::json optional_json(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json summary_json(const std::optional<RatioSummary>& s) {
    if (!s) return nullptr;
    return {{"sup", s->sup},         {"inf", s->inf},       {"last", s->last},         {"tail_mean", s->tail_mean},
            {"tail_spread", s->tail_spread}, {"settled", s->settled}, {"near_one", s->near_one}};
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
    if (text == "inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (text.empty() || res.ec != std::errc() || res.ptr != end)
        throw ValidationError("not a number: '" + std::string(text) + "'");
    return v;
}

std::int64_t parse_int(std::string_view text) {
    std::int64_t v = 0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (text.empty() || res.ec != std::errc() || res.ptr != end)
        throw ValidationError("not an integer: '" + std::string(text) + "'");
    return v;
}

ConstantsRow constants_row(double gamma) {
    return {gamma, c_gamma(gamma), d_gamma(gamma), constant_identity_residual(gamma)};
}

void write_variance_csv(std::ostream& out, std::span<const VariancePoint> rows) {
    out << "n,variance\n";
    for (const auto& r : rows) out << r.n << ',' << format_double(r.variance) << '\n';
}

std::vector<VariancePoint> read_variance_csv(std::istream& in) {
    std::vector<VariancePoint> out;
    for (const auto& f : read_table(in, "n,variance")) out.push_back({parse_int(f[0]), parse_double(f[1])});
    return out;
}

void write_bounds_csv(std::ostream& out, std::span<const BoundsReport> rows) {
    out << "n,lower,variance,upper\n";
    for (const auto& r : rows)
        out << r.n << ',' << format_double(r.lower) << ',' << format_double(r.variance) << ','
            << format_double(r.upper) << '\n';
}

std::vector<BoundsReport> read_bounds_csv(std::istream& in, double A) {
    std::vector<BoundsReport> out;
    for (const auto& f : read_table(in, "n,lower,variance,upper")) {
        BoundsReport r;
        r.n = parse_int(f[0]);
        r.A = A;
        r.lower = parse_double(f[1]);
        r.variance = parse_double(f[2]);
        r.upper = parse_double(f[3]);
        out.push_back(r);
    }
    return out;
}

void write_constants_csv(std::ostream& out, std::span<const ConstantsRow> rows) {
    out << "gamma,C,D,quad_identity_residual\n";
    for (const auto& r : rows)
        out << format_double(r.gamma) << ',' << format_double(r.C) << ',' << format_double(r.D) << ','
            << format_double(r.quad_identity_residual) << '\n';
}

std::vector<ConstantsRow> read_constants_csv(std::istream& in) {
    std::vector<ConstantsRow> out;
    for (const auto& f : read_table(in, "gamma,C,D,quad_identity_residual"))
        out.push_back({parse_double(f[0]), parse_double(f[1]), parse_double(f[2]), parse_double(f[3])});
    return out;
}

void write_scan_csv(std::ostream& out, const ScanReport& report) {
    out << "n,variance,g_n,var_ratio,x,G_x,g_ratio\n";
    for (const auto& r : report.rows) {
        out << r.n << ',' << format_double(r.variance) << ',' << optional_field(r.g_n) << ','
            << optional_field(r.var_ratio) << ',' << format_double(r.x) << ',' << format_double(r.G_x) << ','
            << optional_field(r.g_ratio) << '\n';
    }
}

std::vector<ScanRow> read_scan_csv(std::istream& in) {
    std::vector<ScanRow> out;
    for (const auto& f : read_table(in, "n,variance,g_n,var_ratio,x,G_x,g_ratio")) {
        ScanRow r;
        r.n = parse_int(f[0]);
        r.variance = parse_double(f[1]);
        r.g_n = parse_optional(f[2]);
        r.var_ratio = parse_optional(f[3]);
        r.x = parse_double(f[4]);
        r.G_x = parse_double(f[5]);
        r.g_ratio = parse_optional(f[6]);
        out.push_back(r);
    }
    return out;
}

nlohmann::json scan_to_json(const ScanReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"n", r.n},
                        {"variance", r.variance},
                        {"g_n", optional_json(r.g_n)},
                        {"var_ratio", optional_json(r.var_ratio)},
                        {"x", r.x},
                        {"G_x", r.G_x},
                        {"g_ratio", optional_json(r.g_ratio)}});
    }
    return {{"gamma", report.gamma},
            {"K0", optional_json(report.K0)},
            {"L", report.L.describe()},
            {"tolerance", report.tolerance},
            {"rows", rows},
            {"var_summary", summary_json(report.var_summary)},
            {"g_summary", summary_json(report.g_summary)}};
}

}  // namespace specvar
