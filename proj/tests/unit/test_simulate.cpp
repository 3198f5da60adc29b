#include "specvar/errors.hpp"
#include "specvar/fejer_variance.hpp"
#include "specvar/random.hpp"
#include "specvar/simulate.hpp"

#include "frozen_values.hpp"
#include "support.hpp"

#include <catch2/catch.hpp>

#include <sstream>

using namespace specvar;

TEST_CASE("Philox4x32-10 known answers", "[random]") {
    const auto z = philox4x32({0, 0, 0, 0}, {0, 0});
    CHECK(z == PhiloxCounter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    const auto f = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
    CHECK(f == PhiloxCounter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    const auto p = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
    CHECK(p == PhiloxCounter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("normal quantile", "[random]") {
    CHECK(std::abs(normal_quantile(1e-10) - frozen::normal_quantile_1em10) < 1e-12);
    CHECK(std::abs(normal_quantile(0.001) - frozen::normal_quantile_0p001) < 1e-13);
    CHECK(std::abs(normal_quantile(0.3) - frozen::normal_quantile_0p3) < 1e-14);
    CHECK(normal_quantile(0.5) == Approx(0.0).margin(1e-15));
    CHECK(std::abs(normal_quantile(0.975) - frozen::normal_quantile_0p975) < 1e-14);
    // the decimal 0.999999 is off by ~1e-17 in binary; dx/dp is ~2e5 there
    CHECK(std::abs(normal_quantile(0.999999) - frozen::normal_quantile_0p999999) < 1e-10);
    CHECK_THROWS_AS(normal_quantile(0.0), DomainError);
    CHECK_THROWS_AS(normal_quantile(1.0), DomainError);
    for (double p = 0.01; p < 1.0; p += 0.01) CHECK(normal_quantile(p) == Approx(-normal_quantile(1.0 - p)).margin(1e-13));
}

TEST_CASE("uniforms stay in the open interval", "[random]") {
    CHECK(uniform_open01(0) > 0.0);
    CHECK(uniform_open01(~std::uint64_t{0}) < 1.0);
}

TEST_CASE("stream normals are pure functions of their inputs", "[random]") {
    CHECK(stream_normal(42, 3, 0, 17) == stream_normal(42, 3, 0, 17));
    CHECK(stream_normal(42, 3, 0, 17) != stream_normal(42, 4, 0, 17));
    CHECK(stream_normal(42, 3, 0, 17) != stream_normal(43, 3, 0, 17));
    CHECK(stream_normal(42, 3, 0, 17) != stream_normal(42, 3, 1, 17));
    double s = 0.0, s2 = 0.0;
    const int count = 200000;
    for (int i = 0; i < count; ++i) {
        const double z = stream_normal(9, 0, 0, static_cast<std::uint64_t>(i));
        s += z;
        s2 += z * z;
    }
    CHECK(std::abs(s / count) < 4.0 / std::sqrt(double(count)));
    CHECK(std::abs(s2 / count - 1.0) < 4.0 * std::sqrt(2.0 / count));
}

TEST_CASE("simulation is bit-reproducible", "[simulate]") {
    for (const auto& m : {gallery::quadratic(), gallery::counterexample(), gallery::with_origin_atom(gallery::whitenoise(), 0.5)}) {
        const auto a = simulate(m, 512, 16, 77);
        const auto b = simulate(m, 512, 16, 77);
        CHECK(a.values == b.values);
        const auto c = simulate(m, 512, 16, 78);
        CHECK(a.values != c.values);
    }
}

TEST_CASE("simulation argument checks", "[simulate]") {
    const auto wn = gallery::whitenoise();
    CHECK_THROWS_AS(simulate(wn, 0, 1, 0), DomainError);
    CHECK_THROWS_AS(simulate(wn, kMaxSimulationLength + 1, 1, 0), DomainError);
    CHECK_THROWS_AS(simulate(wn, 8, 0, 0), DomainError);
    const auto one = simulate(wn, 1, 3, 0);
    CHECK(one.values.size() == 3);
    const auto b = simulate(wn, 16, 1, 5);
    const auto e = empirical_variance(b, 4);
    CHECK(std::isinf(e.standard_error));
    CHECK(std::isfinite(e.estimate));
    CHECK_THROWS_AS(empirical_variance(b, 17), DomainError);
    CHECK_THROWS_AS(empirical_autocovariance(b, 16), DomainError);
}

TEST_CASE("methods and embedding diagnostics", "[simulate]") {
    const auto q = simulate(gallery::quadratic(), 1024, 2, 1);
    CHECK(q.method == SimulationMethod::circulant);
    CHECK(q.embedding_min_eigenvalue > -1e-10);
    const auto ce = simulate(gallery::counterexample(), 1024, 2, 1);
    CHECK(ce.method == SimulationMethod::harmonic);
    CHECK(std::isnan(ce.embedding_min_eigenvalue));
    CHECK(to_string(SimulationMethod::cholesky) == "cholesky");
}

TEST_CASE("dense fallback when the embedding is indefinite", "[simulate]") {
    // a narrow bump near pi has slowly decaying oscillating covariances
    const SpectralMeasure bump(0.0, {}, {DensityPiece::table({3.0, 3.05, 3.1}, {0.0, 40.0, 0.0})});
    const auto b = simulate(bump, 256, 400, 3);
    INFO("min eigenvalue " << b.embedding_min_eigenvalue);
    if (b.embedding_min_eigenvalue < -1e-10 * bump.total_mass()) {
        CHECK(b.method == SimulationMethod::cholesky);
    } else {
        CHECK(b.method == SimulationMethod::circulant);
    }
    const auto e = empirical_variance(b, 64);
    CHECK(std::abs(e.estimate - variance_spectral(bump, 64)) <= 4.0 * e.standard_error);
}

TEST_CASE("white noise lag-1 autocovariance", "[simulate]") {
    const auto b = simulate(gallery::whitenoise(), 4096, 250, 2024);
    const auto e = empirical_autocovariance(b, 1);
    CHECK(std::abs(e.estimate) < 4.0 / std::sqrt(250.0 * 4096.0));
    const auto v = empirical_variance(b, 16);
    CHECK(std::abs(v.estimate - 16.0) < 4.0 * v.standard_error);
}

TEST_CASE("single atom at pi alternates", "[simulate]") {
    const SpectralMeasure m(0.0, {{kPi, 1.0}}, {});
    const auto b = simulate(m, 256, 2000, 8);
    const auto e = empirical_autocovariance(b, 1);
    CHECK(std::abs(e.estimate + 1.0) <= std::max(4.0 * e.standard_error, 1e-9));
}

TEST_CASE("sample covariances match r_0..r_8", "[simulate][property]") {
    for (const auto& m : {gallery::quadratic(), gallery::power_law(1.5), gallery::nonergodic()}) {
        INFO(m.info().name);
        const auto b = simulate(m, 2048, 300, 99);
        const auto r = autocovariances(m, 9);
        for (std::size_t lag = 0; lag <= 8; ++lag) {
            const auto e = empirical_autocovariance(b, lag);
            CHECK(std::abs(e.estimate - r[lag]) <= 5.0 * e.standard_error);
        }
    }
}

TEST_CASE("4 standard error gate over the gallery", "[simulate][property][slow]") {
    const std::uint64_t seeds[] = {20240611u, 8675309u};
    for (const auto& [name, m] : testing::all_gallery()) {
        std::vector<PathBatch> batches;
        for (auto seed : seeds) batches.push_back(simulate(m, 4096, 2000, seed));
        for (std::size_t n : {16u, 256u, 4096u}) {
            INFO(name << " n=" << n);
            const double spectral = variance_spectral(m, static_cast<std::int64_t>(n));
            bool ok = false;
            for (const auto& b : batches) {
                const auto e = empirical_variance(b, n);
                ok = ok || std::abs(e.estimate - spectral) <= 4.0 * e.standard_error;
            }
            CHECK(ok);
        }
    }
}

TEST_CASE("paths CSV layout", "[simulate]") {
    const auto b = simulate(gallery::whitenoise(), 3, 2, 1);
    std::ostringstream os;
    write_paths_csv(os, b);
    const auto text = os.str();
    CHECK(text.rfind("path,t,value\n0,0,", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 7);
}
