#include "specvar/cli.hpp"

#include "specvar/asymptotics.hpp"
#include "specvar/errors.hpp"
#include "specvar/fejer_variance.hpp"
#include "specvar/gallery.hpp"
#include "specvar/measure_json.hpp"
#include "specvar/report_io.hpp"
#include "specvar/simulate.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

namespace specvar::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split(text, ',')) out.push_back(parse_double(item));
    return out;
}

std::int64_t checked_pow2(std::int64_t r) {
    if (r < 0 || r > 62) throw ValidationError("dyadic exponent must lie in [0, 62]");
    return std::int64_t{1} << r;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    return f;
}

void dump_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << '\n'; }

nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

struct Options {
    std::string measure;
    std::string n_text;
    std::string n_range;
    std::string gamma_text;
    std::string L_text = "const";
    std::string input;
    std::string paths_csv;
    std::string check_n;
    double A = 1.0;
    double gamma = 0.0;
    double tolerance = 0.05;
    std::optional<double> K0;
    std::size_t N = 0;
    std::size_t paths = 0;
    std::uint64_t seed = 0;
    bool json = false;
};

void cmd_variance(const Options& o, std::ostream& out) {
    const auto m = parse_measure_spec(o.measure);
    const auto ns = parse_n_list(o.n_text);
    const auto v = variance_many(m, ns);
    std::vector<VariancePoint> rows;
    for (std::size_t i = 0; i < ns.size(); ++i) rows.push_back({ns[i], v[i]});
    write_variance_csv(out, rows);
}

void cmd_bounds(const Options& o, std::ostream& out) {
    const auto m = parse_measure_spec(o.measure);
    std::vector<BoundsReport> rows;
    for (auto n : parse_n_list(o.n_text)) rows.push_back(sandwich(m, n, o.A));
    write_bounds_csv(out, rows);
}

void cmd_scan(const Options& o, std::ostream& out) {
    const auto m = parse_measure_spec(o.measure);
    const auto grid = parse_n_list(o.n_range);
    const auto report = scan_against_model(m, o.gamma, o.K0, SlowlyVarying::parse(o.L_text), grid, o.tolerance);
    if (o.json)
        dump_json(out, scan_to_json(report));
    else
        write_scan_csv(out, report);
}

void cmd_constants(const Options& o, std::ostream& out) {
    std::vector<ConstantsRow> rows;
    for (double g : parse_real_list(o.gamma_text)) rows.push_back(constants_row(g));
    write_constants_csv(out, rows);
}

void cmd_estimate(const Options& o, std::ostream& out) {
    std::ifstream f(o.input, std::ios::binary);
    if (!f) throw IoError("cannot open '" + o.input + "'");
    const auto points = read_variance_csv(f);
    const auto fit = gamma_fit(points);
    dump_json(out, {{"gamma_hat", fit.gamma_hat}, {"K0_hat", fit.K0_hat}, {"residual", fit.residual}});
}

void cmd_simulate(const Options& o, std::ostream& out) {
    const auto m = parse_measure_spec(o.measure);
    const auto batch = simulate(m, o.N, o.paths, o.seed);
    nlohmann::json checks = nlohmann::json::array();
    if (!o.check_n.empty()) {
        for (auto n : parse_n_list(o.check_n)) {
            if (n > static_cast<std::int64_t>(o.N)) throw ValidationError("--check-n values must not exceed --N");
            const auto est = empirical_variance(batch, static_cast<std::size_t>(n));
            const double spectral = variance_spectral(m, n);
            const double z = (est.estimate - spectral) / est.standard_error;
            checks.push_back({{"n", n},
                              {"estimate", est.estimate},
                              {"standard_error", finite_or_null(est.standard_error)},
                              {"spectral", spectral},
                              {"z", finite_or_null(z)},
                              {"within_4se", std::abs(est.estimate - spectral) <= 4.0 * est.standard_error}});
        }
    }
    if (!o.paths_csv.empty()) {
        auto f = open_output(o.paths_csv);
        write_paths_csv(f, batch);
        if (!f) throw IoError("failed writing '" + o.paths_csv + "'");
    }
    dump_json(out, {{"measure", o.measure},
                    {"N", o.N},
                    {"paths", o.paths},
                    {"seed", o.seed},
                    {"method", to_string(batch.method)},
                    {"embedding_min_eigenvalue", finite_or_null(batch.embedding_min_eigenvalue)},
                    {"checks", checks}});
}

void cmd_gallery_list(std::ostream& out) {
    for (const auto& e : gallery::entries()) {
        out << e.name;
        if (!e.parameters.empty()) out << " [" << e.parameters << ']';
        out << "  " << e.description << '\n';
    }
}

}  // namespace

SpectralMeasure parse_measure_spec(const std::string& spec) {
    if (spec.rfind("file:", 0) == 0) return read_measure_file(spec.substr(5));
    if (spec.rfind("gallery:", 0) != 0)
        throw ValidationError("measure spec must start with 'gallery:' or 'file:', got '" + spec + "'");
    const std::string rest = spec.substr(8);
    const auto colon = rest.find(':');
    const std::string name = rest.substr(0, colon);
    std::map<std::string, double> params;
    if (colon != std::string::npos) {
        for (const auto& kv : split(rest.substr(colon + 1), ',')) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0)
                throw ValidationError("gallery parameter '" + kv + "' is not of the form key=value");
            const auto key = kv.substr(0, eq);
            if (params.count(key)) throw ValidationError("gallery parameter '" + key + "' given twice");
            params[key] = parse_double(kv.substr(eq + 1));
        }
    }
    try {
        return gallery::make(name, params);
    } catch (const DomainError& e) {
        throw ValidationError(e.what());
    }
}

std::vector<std::int64_t> parse_n_list(const std::string& text) {
    std::vector<std::int64_t> out;
    if (text.empty()) throw ValidationError("empty n list");
    const auto parts = split(text, ':');
    if (parts.size() == 3 && parts[0] == "dyadic") {
        const auto r0 = parse_int(parts[1]);
        const auto r1 = parse_int(parts[2]);
        if (r0 > r1) throw ValidationError("dyadic range needs r0 <= r1");
        for (auto r = r0; r <= r1; ++r) out.push_back(checked_pow2(r));
    } else if (parts.size() == 2 || parts.size() == 3) {
        const auto a = parse_int(parts[0]);
        const auto b = parse_int(parts[1]);
        const auto step = parts.size() == 3 ? parse_int(parts[2]) : 1;
        if (step < 1) throw ValidationError("range step must be >= 1");
        if (a > b) throw ValidationError("range needs start <= end");
        if ((b - a) / step > 50'000'000) throw ValidationError("range has too many points");
        for (auto n = a; n <= b; n += step) out.push_back(n);
    } else if (parts.size() == 1) {
        for (const auto& item : split(text, ',')) out.push_back(parse_int(item));
    } else {
        throw ValidationError("cannot parse n list '" + text + "'");
    }
    for (auto n : out)
        if (n < 1) throw ValidationError("n values must be positive");
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Variance of partial sums of stationary sequences from their spectral measure", "specvar"};
    app.require_subcommand(1);
    Options o;

    auto* variance = app.add_subcommand("variance", "Var(S_n) as CSV n,variance");
    variance->add_option("--measure", o.measure, "gallery:<name>[:k=v,...] or file:<path.json>")->required();
    variance->add_option("--n", o.n_text, "list 1,2,4 or range a:b[:step] or dyadic:r0:r1")->required();

    auto* bounds = app.add_subcommand("bounds", "Sandwich bounds as CSV n,lower,variance,upper");
    bounds->add_option("--measure", o.measure, "measure spec")->required();
    bounds->add_option("--n", o.n_text, "n list")->required();
    bounds->add_option("--A", o.A, "cut-off constant, 0 < A <= n")->capture_default_str();

    auto* scan = app.add_subcommand("scan", "Var(S_n) against K0 n^gamma L(n)");
    scan->add_option("--measure", o.measure, "measure spec")->required();
    scan->add_option("--gamma", o.gamma, "index in (0, 2)")->required();
    scan->add_option("--K0", o.K0, "scale; ratio columns stay empty without it");
    scan->add_option("--L", o.L_text, "const or logpow:<a>")->capture_default_str();
    scan->add_option("--n-range", o.n_range, "r0:r1:step or dyadic:r0:r1")->required();
    scan->add_option("--tolerance", o.tolerance, "settling tolerance")->capture_default_str();
    scan->add_flag("--json", o.json, "emit JSON instead of CSV");

    auto* constants = app.add_subcommand("constants", "C(gamma), D(gamma) and the integral identity residual");
    constants->add_option("--gamma", o.gamma_text, "comma-separated list")->required();

    auto* estimate = app.add_subcommand("estimate", "fit Var(S_n) ~ K0 n^gamma to a n,variance CSV");
    estimate->add_option("--input", o.input, "CSV with header n,variance")->required();

    auto* sim = app.add_subcommand("simulate", "Gaussian sample paths with a Monte Carlo check");
    sim->add_option("--measure", o.measure, "measure spec")->required();
    sim->add_option("--N", o.N, "path length")->required();
    sim->add_option("--paths", o.paths, "number of paths")->required();
    sim->add_option("--seed", o.seed, "64-bit seed")->required();
    sim->add_option("--check-n", o.check_n, "n list for empirical vs spectral variance");
    sim->add_option("--paths-csv", o.paths_csv, "write path,t,value rows to this file");

    auto* gal = app.add_subcommand("gallery", "named measures");
    gal->require_subcommand(1);
    auto* gal_list = gal->add_subcommand("list", "names and descriptions");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ExitCode::ok : ExitCode::usage;
    }

    try {
        if (variance->parsed()) cmd_variance(o, out);
        else if (bounds->parsed()) cmd_bounds(o, out);
        else if (scan->parsed()) cmd_scan(o, out);
        else if (constants->parsed()) cmd_constants(o, out);
        else if (estimate->parsed()) cmd_estimate(o, out);
        else if (sim->parsed()) cmd_simulate(o, out);
        else if (gal_list->parsed()) cmd_gallery_list(out);
        out.flush();
        if (!out) throw IoError("failed writing output");
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::io;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << '\n';
        return ExitCode::numeric;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::usage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return ExitCode::numeric;
    }
    return ExitCode::ok;
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace specvar::cli
