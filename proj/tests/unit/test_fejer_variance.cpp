#include "specvar/errors.hpp"
#include "specvar/fejer_variance.hpp"

#include "frozen_values.hpp"
#include "support.hpp"

#include <catch2/catch.hpp>

#include <random>

using namespace specvar;
using testing::rel_err;

TEST_CASE("Fejer kernel identities", "[fejer]") {
    CHECK(fejer_kernel(1, 0.3) == Approx(1.0).epsilon(1e-15));
    CHECK(fejer_kernel(17, 0.0) == 289.0);
    CHECK(fejer_kernel(4, kPi) == Approx(0.0).margin(1e-20));
    CHECK(fejer_kernel(5, kPi) == Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(fejer_kernel(0, 1.0), DomainError);
    CHECK_THROWS_AS(fejer_kernel(3, -1.0), DomainError);
}

TEST_CASE("Fejer kernel equals its cosine expansion", "[fejer][property]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uy(0.0, kPi);
    std::uniform_int_distribution<int> un(1, 300);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = un(rng);
        const double y = trial % 10 == 0 ? 1e-9 * uy(rng) : uy(rng);
        long double s = n;
        for (int k = 1; k < n; ++k) s += 2.0L * (n - k) * std::cos(static_cast<long double>(k) * y);
        INFO("n=" << n << " y=" << y);
        CHECK(std::abs(fejer_kernel(n, y) - static_cast<double>(s)) < 1e-10 * n * n);
        CHECK(fejer_kernel(n, y) >= 0.0);
        CHECK(fejer_kernel(n, y) <= double(n) * n);
    }
}

TEST_CASE("white noise has Var(S_n) = n", "[fejer]") {
    const auto wn = gallery::whitenoise();
    for (std::int64_t n : {1, 2, 3, 10, 257, 4096, 100000}) {
        CHECK(rel_err(variance_spectral(wn, n), double(n)) < 1e-12);
        if (n <= 4096) CHECK(rel_err(variance_covariance(wn, n), double(n)) < 1e-12);
    }
}

TEST_CASE("quadratic variances match exact covariance sums", "[fejer]") {
    const auto q = gallery::quadratic();
    const std::pair<std::int64_t, double> want[] = {{1, frozen::quadratic_var_1},       {2, frozen::quadratic_var_2},
                                                    {3, frozen::quadratic_var_3},       {10, frozen::quadratic_var_10},
                                                    {100, frozen::quadratic_var_100},   {1000, frozen::quadratic_var_1000},
                                                    {16384, frozen::quadratic_var_16384}};
    for (auto [n, v] : want) {
        INFO("n=" << n);
        CHECK(rel_err(variance_spectral(q, n), v) < 1e-10);
        CHECK(rel_err(variance_covariance(q, n), v) < 1e-10);
    }
}

TEST_CASE("power-law variances match the oracle", "[fejer]") {
    const auto p05 = gallery::power_law(0.5);
    const auto p15 = gallery::power_law(1.5);
    const std::tuple<const SpectralMeasure*, std::int64_t, double> want[] = {
        {&p05, 1, frozen::power0p5_var_1},  {&p05, 8, frozen::power0p5_var_8},  {&p05, 64, frozen::power0p5_var_64},
        {&p15, 1, frozen::power1p5_var_1},  {&p15, 8, frozen::power1p5_var_8},  {&p15, 64, frozen::power1p5_var_64}};
    for (auto [m, n, v] : want) {
        INFO("n=" << n);
        CHECK(rel_err(variance_spectral(*m, n), v) < 1e-10);
        CHECK(rel_err(variance_covariance(*m, n), v) < 1e-10);
    }
}

TEST_CASE("atomic variances match the oracle", "[fejer]") {
    const auto ce = gallery::counterexample();
    const auto ne = gallery::nonergodic();
    const std::pair<std::int64_t, double> want_ce[] = {{1, frozen::counterexample_var_1},
                                                       {5, frozen::counterexample_var_5},
                                                       {1024, frozen::counterexample_var_1024},
                                                       {3000, frozen::counterexample_var_3000},
                                                       {4096, frozen::counterexample_var_4096}};
    const std::pair<std::int64_t, double> want_ne[] = {{1, frozen::nonergodic_var_1},
                                                       {3, frozen::nonergodic_var_3},
                                                       {1024, frozen::nonergodic_var_1024},
                                                       {174762, frozen::nonergodic_var_174762},
                                                       {262144, frozen::nonergodic_var_262144}};
    for (auto [n, v] : want_ce) {
        INFO("n=" << n);
        CHECK(rel_err(variance_spectral(ce, n), v) < 1e-12);
        if (n <= 4096) CHECK(rel_err(variance_covariance(ce, n), v) < 1e-9);
    }
    for (auto [n, v] : want_ne) {
        INFO("n=" << n);
        CHECK(rel_err(variance_spectral(ne, n), v) < 1e-10);
        if (n <= 4096) CHECK(rel_err(variance_covariance(ne, n), v) < 1e-9);
    }
}

TEST_CASE("profile, batch and per-n routes agree", "[fejer][property]") {
    for (const auto& [name, m] : testing::all_gallery()) {
        INFO(name);
        const auto profile = variance_profile(m, 300);
        std::vector<std::int64_t> ns;
        for (std::int64_t n = 1; n <= 300; ++n) ns.push_back(n);
        const auto many = variance_many(m, ns);
        const std::vector<std::int64_t> sparse{1, 10, 299};
        const auto few = variance_many(m, sparse);
        for (std::int64_t n : {1, 2, 7, 64, 300}) {
            const double v = variance_spectral(m, n);
            CHECK(rel_err(profile[n - 1], v) < 1e-9);
            CHECK(rel_err(many[n - 1], v) < 1e-9);
        }
        for (std::size_t i = 0; i < sparse.size(); ++i) CHECK(rel_err(few[i], variance_spectral(m, sparse[i])) < 1e-12);
    }
}

TEST_CASE("origin atom adds a n^2", "[fejer]") {
    const auto m = gallery::with_origin_atom(gallery::whitenoise(), 0.7);
    for (std::int64_t n : {1, 5, 100, 10000}) {
        const double nd = double(n);
        CHECK(rel_err(variance_spectral(m, n), 0.7 * nd * nd + nd) < 1e-13);
    }
    CHECK(rel_err(variance_covariance(m, 100), 0.7 * 1e4 + 100) < 1e-13);
}

TEST_CASE("variance is nonnegative", "[fejer][property]") {
    for (const auto& [name, m] : testing::all_gallery()) {
        INFO(name);
        for (std::int64_t n = 1; n < 200; n += 7) CHECK(variance_spectral(m, n) >= 0.0);
    }
}

TEST_CASE("tail integral of G / y^3", "[fejer]") {
    const auto wn = gallery::whitenoise();
    for (double a : {1e-4, 0.01, 1.0, 3.0}) {
        const double want = (1.0 / a - 1.0 / kPi) / kPi;
        CHECK(rel_err(g_over_cube_tail(wn, a), want) < 1e-11);
    }
    const SpectralMeasure atom(0.0, {{1.0, 2.0}}, {});
    CHECK(rel_err(g_over_cube_tail(atom, 0.5), 2.0 * 0.5 * (1.0 - 1.0 / (kPi * kPi))) < 1e-14);
    CHECK_THROWS_AS(g_over_cube_tail(wn, 0.0), DomainError);
}

TEST_CASE("sandwich bounds bracket the variance", "[fejer][property]") {
    for (const auto& [name, m] : testing::all_gallery()) {
        for (double A : {1.0, 2.0, 8.0}) {
            for (std::int64_t n : {8, 100, 1024}) {
                INFO(name << " A=" << A << " n=" << n);
                const auto r = sandwich(m, n, A);
                CHECK(r.brackets());
                CHECK(r.lower >= 0.0);
            }
        }
    }
    CHECK_THROWS_AS(sandwich(gallery::whitenoise(), 2, 3.0), DomainError);
    CHECK_THROWS_AS(sandwich(gallery::whitenoise(), 2, 0.0), DomainError);
    CHECK_THROWS_AS(variance_spectral(gallery::whitenoise(), 0), DomainError);
}
