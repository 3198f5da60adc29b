#include "specvar/gallery.hpp"

#include "specvar/errors.hpp"

#include <cmath>
#include <set>

namespace specvar::gallery {

SpectralMeasure counterexample(int k_max) {
    if (k_max < 8 || k_max > 1000) throw DomainError("counterexample: k_max must lie in [8, 1000]");
    std::vector<Atom> atoms;
    for (int k = k_max; k >= 1; --k) {
        const double w = std::ldexp(1.0, -k);
        atoms.push_back({w, w});
    }
    return SpectralMeasure(0.0, std::move(atoms), {},
                           MeasureInfo{"counterexample", std::ldexp(1.0, -k_max)});
}

SpectralMeasure power_law(double gamma, double scale) {
    if (!(gamma > 0.0 && gamma < 2.0)) throw DomainError("power_law: gamma must lie in (0, 2)");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("power_law: scale must be positive");
    auto piece = DensityPiece::power(0.0, kPi, scale * (2.0 - gamma), 1.0 - gamma);
    return SpectralMeasure(0.0, {}, {piece}, MeasureInfo{"power", 0.0});
}

SpectralMeasure quadratic() {
    return SpectralMeasure(0.0, {}, {DensityPiece::power(0.0, kPi, 2.0, 1.0)}, MeasureInfo{"quadratic", 0.0});
}

SpectralMeasure nonergodic(int k_max) {
    if (k_max < 8 || k_max > 500) throw DomainError("nonergodic: k_max must lie in [8, 500]");
    std::vector<Atom> atoms;
    for (int k = k_max; k >= 2; --k) atoms.push_back({2.0 * kPi * std::ldexp(1.0, -k), std::ldexp(1.0, -2 * k)});
    // sum_{k > k_max} 4^{-k} = 4^{-k_max} / 3
    return SpectralMeasure(0.0, std::move(atoms), {},
                           MeasureInfo{"nonergodic", std::ldexp(1.0, -2 * k_max) / 3.0});
}

SpectralMeasure whitenoise() { return power_law(1.0, 1.0 / kPi).with_info(MeasureInfo{"whitenoise", 0.0}); }

SpectralMeasure with_origin_atom(const SpectralMeasure& base, double a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("with_origin_atom: a must be positive");
    std::vector<Atom> atoms(base.atoms().begin(), base.atoms().end());
    std::vector<DensityPiece> pieces(base.density_pieces().begin(), base.density_pieces().end());
    MeasureInfo info = base.info();
    info.name += "+origin";
    return SpectralMeasure(base.atom_at_zero() + a, std::move(atoms), std::move(pieces), std::move(info));
}

const std::vector<Entry>& entries() {
    static const std::vector<Entry> list{
        {"counterexample", "k_max=60", "atoms 2^-k at 2^-k: dyadic Var(S_2^r)/2^r converges, Var(S_n)/n does not"},
        {"power", "gamma=<g>,scale=1", "density scale*(2-g)*y^(1-g): G(x) = scale*x^(2-g), Var(S_n) ~ scale/C(g) n^g"},
        {"quadratic", "", "density 2y: G(x) = x^2, Var(S_n) = 4 ln n + O(1)"},
        {"nonergodic", "k_max=40", "atoms 4^-k at 2*pi*2^-k: bounded on dyadics, unbounded over all n"},
        {"whitenoise", "", "flat density 1/pi: r_0 = 1, r_k = 0, Var(S_n) = n"},
    };
    return list;
}

SpectralMeasure make(const std::string& name, const std::map<std::string, double>& params) {
    std::set<std::string> allowed{"origin"};
    if (name == "counterexample" || name == "nonergodic") allowed.insert("k_max");
    if (name == "power") allowed.insert({"gamma", "scale"});
    for (const auto& [key, value] : params) {
        if (!allowed.count(key)) throw DomainError("gallery '" + name + "' does not accept parameter '" + key + "'");
    }
    auto get = [&](const std::string& key, double fallback) {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    auto as_int = [&](const std::string& key, int fallback) {
        const double v = get(key, fallback);
        if (std::floor(v) != v) throw DomainError("gallery parameter '" + key + "' must be an integer");
        return static_cast<int>(v);
    };
    SpectralMeasure m;
    if (name == "counterexample") {
        m = counterexample(as_int("k_max", 60));
    } else if (name == "power") {
        if (!params.count("gamma")) throw DomainError("gallery 'power' requires gamma=<g>");
        m = power_law(get("gamma", 1.0), get("scale", 1.0));
    } else if (name == "quadratic") {
        m = quadratic();
    } else if (name == "nonergodic") {
        m = nonergodic(as_int("k_max", 40));
    } else if (name == "whitenoise") {
        m = whitenoise();
    } else {
        throw DomainError("unknown gallery measure '" + name + "'");
    }
    if (auto it = params.find("origin"); it != params.end()) m = with_origin_atom(m, it->second);
    return m;
}

}  // namespace specvar::gallery
