#include "specvar/measure_json.hpp"

#include "specvar/errors.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

namespace specvar {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed) known = known || it.key() == k;
        if (!known) throw ValidationError("unknown key '" + path + (path.empty() ? "" : ".") + it.key() + "'");
    }
}

const json& require(const json& obj, const std::string& path, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ValidationError("missing key '" + path + "." + key + "'");
    return *it;
}

double number_at(const json& obj, const std::string& path, const char* key) {
    const json& v = require(obj, path, key);
    if (!v.is_number()) throw ValidationError("'" + path + "." + key + "' must be a number");
    return v.get<double>();
}

std::vector<double> numbers_at(const json& obj, const std::string& path, const char* key) {
    const json& v = require(obj, path, key);
    if (!v.is_array()) throw ValidationError("'" + path + "." + key + "' must be an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number())
            throw ValidationError("'" + path + "." + key + "[" + std::to_string(i) + "]' must be a number");
        out.push_back(v[i].get<double>());
    }
    return out;
}

template <class F>
auto with_path(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

}  // namespace

json measure_to_json(const SpectralMeasure& m) {
    json atoms = json::array();
    for (const auto& a : m.atoms()) atoms.push_back({{"y", a.location}, {"mass", a.mass}});
    json density = json::array();
    for (const auto& p : m.density_pieces()) {
        if (const auto* f = std::get_if<PowerForm>(&p.form())) {
            density.push_back(
                {{"type", "power"}, {"coef", f->coef}, {"exp", f->exponent}, {"lo", p.lo()}, {"hi", p.hi()}});
        } else if (const auto* t = std::get_if<TableForm>(&p.form())) {
            density.push_back({{"type", "table"}, {"ys", t->ys}, {"vals", t->values}});
        } else {
            throw ValidationError("opaque density pieces cannot be serialized");
        }
    }
    return json{{"atom_at_zero", m.atom_at_zero()}, {"atoms", std::move(atoms)}, {"density", std::move(density)}};
}

SpectralMeasure measure_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("measure must be a JSON object");
    reject_unknown_keys(j, "", {"atom_at_zero", "atoms", "density"});
    double a0 = 0.0;
    if (j.contains("atom_at_zero")) {
        if (!j["atom_at_zero"].is_number()) throw ValidationError("'atom_at_zero' must be a number");
        a0 = j["atom_at_zero"].get<double>();
    }
    std::vector<Atom> atoms;
    if (j.contains("atoms")) {
        const json& arr = j["atoms"];
        if (!arr.is_array()) throw ValidationError("'atoms' must be an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string path = "atoms[" + std::to_string(i) + "]";
            if (!arr[i].is_object()) throw ValidationError("'" + path + "' must be an object");
            reject_unknown_keys(arr[i], path, {"y", "mass"});
            atoms.push_back({number_at(arr[i], path, "y"), number_at(arr[i], path, "mass")});
        }
    }
    std::vector<DensityPiece> pieces;
    if (j.contains("density")) {
        const json& arr = j["density"];
        if (!arr.is_array()) throw ValidationError("'density' must be an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string path = "density[" + std::to_string(i) + "]";
            const json& d = arr[i];
            if (!d.is_object()) throw ValidationError("'" + path + "' must be an object");
            const json& type = require(d, path, "type");
            if (!type.is_string()) throw ValidationError("'" + path + ".type' must be a string");
            const auto kind = type.get<std::string>();
            if (kind == "power") {
                reject_unknown_keys(d, path, {"type", "coef", "exp", "lo", "hi"});
                const double coef = number_at(d, path, "coef");
                const double exp = number_at(d, path, "exp");
                const double lo = number_at(d, path, "lo");
                const double hi = number_at(d, path, "hi");
                pieces.push_back(with_path(path, [&] { return DensityPiece::power(lo, hi, coef, exp); }));
            } else if (kind == "table") {
                reject_unknown_keys(d, path, {"type", "ys", "vals"});
                auto ys = numbers_at(d, path, "ys");
                auto vals = numbers_at(d, path, "vals");
                pieces.push_back(with_path(path, [&] { return DensityPiece::table(std::move(ys), std::move(vals)); }));
            } else {
                throw ValidationError("'" + path + ".type' must be \"power\" or \"table\", got \"" + kind + "\"");
            }
        }
    }
    return SpectralMeasure(a0, std::move(atoms), std::move(pieces));
}

std::string measure_to_string(const SpectralMeasure& m) { return measure_to_json(m).dump(2) + "\n"; }

SpectralMeasure measure_from_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("measure JSON does not parse: ") + e.what());
    }
    return measure_from_json(j);
}

SpectralMeasure read_measure_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open measure file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("cannot read measure file '" + path + "'");
    return measure_from_string(buf.str());
}

}  // namespace specvar
