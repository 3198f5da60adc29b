#include "specvar/asymptotics.hpp"
#include "specvar/errors.hpp"
#include "specvar/fejer_variance.hpp"
#include "specvar/special_functions.hpp"

#include "frozen_values.hpp"
#include "support.hpp"

#include <catch2/catch.hpp>

#include <random>

using namespace specvar;
using testing::rel_err;

TEST_CASE("C and D constants", "[asymptotics]") {
    CHECK(std::abs(c_gamma(1.0) - 1.0 / kPi) < 1e-15);
    CHECK(std::abs(d_gamma(1.0) - 2.0 / kPi) < 1e-15);
    CHECK_THROWS_AS(c_gamma(0.0), DomainError);
    CHECK_THROWS_AS(c_gamma(2.0), DomainError);
    CHECK_THROWS_AS(d_gamma(-1.0), DomainError);
}

TEST_CASE("C = gamma/(2-gamma) 2^{gamma-2} D", "[asymptotics][property]") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(1e-3, 2.0 - 1e-3);
    for (int i = 0; i < 200; ++i) {
        const double g = u(rng);
        const double rhs = g / (2.0 - g) * std::pow(2.0, g - 2.0) * d_gamma(g);
        INFO("gamma=" << g);
        CHECK(std::abs(c_gamma(g) - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
        CHECK(c_gamma(g) > 0.0);
    }
}

TEST_CASE("sine-squared integral against its closed form", "[asymptotics]") {
    const std::pair<double, double> want[] = {{0.25, frozen::sinsq_0p25},
                                              {0.5, frozen::sinsq_0p5},
                                              {1.0, frozen::sinsq_1},
                                              {1.5, frozen::sinsq_1p5},
                                              {1.75, frozen::sinsq_1p75}};
    for (auto [g, v] : want) {
        INFO("gamma=" << g);
        const auto r = sine_squared_integral(g);
        CHECK(std::abs(r.value - v) < 1e-9);
        CHECK(r.tail_remainder_bound < 1e-9);
        CHECK(r.truncation_point >= 1e4 / g);
        CHECK(std::fmod(r.truncation_point / kPi, 1.0) < 1e-9);
        CHECK(constant_identity_residual(g) < 1e-8);
    }
}

TEST_CASE("slowly varying functions", "[asymptotics]") {
    const auto c = SlowlyVarying::constant();
    CHECK(c(1e9) == 1.0);
    CHECK(c.describe() == "const");
    const auto l = SlowlyVarying::log_power(2.0);
    CHECK(rel_err(l(10.0), std::pow(std::log(std::exp(1.0) + 10.0), 2.0)) < 1e-15);
    CHECK(l.describe() == "logpow:2");
    const auto p = SlowlyVarying::parse("logpow:-0.5");
    CHECK(p.kind() == SlowlyVarying::Kind::log_power);
    CHECK(p.exponent() == -0.5);
    CHECK(SlowlyVarying::parse(p.describe()).exponent() == -0.5);
    CHECK(SlowlyVarying::parse("const").kind() == SlowlyVarying::Kind::constant);
    CHECK_THROWS_AS(SlowlyVarying::parse("logpow:"), ValidationError);
    CHECK_THROWS_AS(SlowlyVarying::parse("log"), ValidationError);
    // L(lambda x) / L(x) -> 1, slowly
    CHECK(std::abs(l(2e100) / l(1e100) - 1.0) < 0.01);
    CHECK(std::abs(l(2e100) / l(1e100) - 1.0) < std::abs(l(2e10) / l(1e10) - 1.0));
}

TEST_CASE("regular variation model validation", "[asymptotics]") {
    CHECK_THROWS_AS(RegularVariationModel(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(RegularVariationModel(1.0, 0.0), DomainError);
    const RegularVariationModel m(1.5, 2.0);
    CHECK(rel_err(m.g(4.0), 8.0) < 1e-15);
}

TEST_CASE("white noise scan sits at ratio one", "[asymptotics]") {
    const auto wn = gallery::whitenoise();
    const std::vector<std::int64_t> grid{16, 64, 256, 1024, 4096, 16384, 65536, 262144};
    const auto r = theorem_check(wn, RegularVariationModel(1.0, 1.0), grid);
    REQUIRE(r.rows.size() == grid.size());
    REQUIRE(r.var_summary);
    REQUIRE(r.g_summary);
    for (const auto& row : r.rows) {
        CHECK(std::abs(*row.var_ratio - 1.0) < 1e-12);
        CHECK(std::abs(*row.g_ratio - 1.0) < 1e-12);
        CHECK(row.x == 1.0 / double(row.n));
    }
    CHECK(r.var_summary->settled);
    CHECK(r.var_summary->near_one);
    const auto no_k0 = scan_against_model(wn, 1.0, std::nullopt, SlowlyVarying::constant(), grid);
    CHECK_FALSE(no_k0.var_summary);
    CHECK_FALSE(no_k0.rows[0].var_ratio);
    CHECK(no_k0.rows[0].g_n);
    const std::vector<std::int64_t> bad{4, 2};
    CHECK_THROWS_AS(scan_against_model(wn, 1.0, 1.0, SlowlyVarying::constant(), bad), DomainError);
}

TEST_CASE("power-law scans approach the predicted constant", "[asymptotics]") {
    for (double g : {0.5, 1.5}) {
        INFO("gamma=" << g);
        const auto m = gallery::power_law(g);
        const std::vector<std::int64_t> grid{1024, 4096, 16384, 65536};
        const auto r = theorem_check(m, RegularVariationModel(g, 1.0 / c_gamma(g)), grid, 0.05);
        double prev = 1e300;
        for (const auto& row : r.rows) {
            const double dev = std::abs(*row.var_ratio - 1.0);
            CHECK(dev <= prev);
            prev = dev;
            CHECK(std::abs(*row.g_ratio - 1.0) < 1e-12);
        }
        CHECK(prev < 0.05);
        CHECK(r.var_summary->near_one);
    }
}

TEST_CASE("ratio summaries use the last quarter", "[asymptotics]") {
    const std::vector<double> v{5.0, 4.0, 3.0, 2.0, 1.0, 1.0, 1.02, 0.99};
    const auto s = summarize_ratios(v, 0.05);
    CHECK(s.sup == 5.0);
    CHECK(s.inf == 0.99);
    CHECK(s.last == 0.99);
    CHECK(s.tail_mean == Approx(1.005));
    CHECK(s.tail_spread == Approx(0.015));
    CHECK(s.settled);
    CHECK(s.near_one);
}

TEST_CASE("growth bound report on the counterexample", "[asymptotics]") {
    const auto m = gallery::counterexample();
    std::vector<std::int64_t> sub;
    for (int r = 6; r <= 12; ++r) sub.push_back(std::int64_t{1} << r);
    const auto rep = growth_bound_report(m, 1.0, SlowlyVarying::constant(), sub);
    CHECK(rep.kappa == 2.0);
    CHECK(rep.kappa_finite);
    CHECK(rep.n_first == 64);
    CHECK(rep.n_last == 4096);
    CHECK(rep.sup_var_all >= rep.sup_var_subsequence);
    CHECK(rep.inf_var_all <= rep.inf_var_subsequence);
    double sup = 0.0;
    for (auto n : sub) sup = std::max(sup, variance_spectral(m, n) / double(n));
    CHECK(rep.sup_var_subsequence == Approx(sup).epsilon(1e-12));
    // between dyadics the ratio overshoots the subsequence
    CHECK(rep.sup_var_all > 1.01 * rep.sup_var_subsequence);
    // G(1/n) / (1/n) = 2 n G at dyadic points
    CHECK(rep.sup_g == Approx(2.0).epsilon(1e-12));
    CHECK(rep.inf_g == Approx(2.0).epsilon(1e-12));
}

TEST_CASE("dichotomy check", "[asymptotics]") {
    const std::vector<std::int64_t> grid{10, 100, 1000, 10000};
    const auto with = dichotomy_check(gallery::with_origin_atom(gallery::whitenoise(), 0.7), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(with.ratio[i] - 0.7 - 1.0 / double(grid[i])) < 1e-12);
    CHECK(with.positive_liminf);
    CHECK(with.atom_at_zero == 0.7);
    CHECK(std::abs(with.tail_gap - 1e-4) < 1e-12);
    const auto without = dichotomy_check(gallery::whitenoise(), grid);
    CHECK_FALSE(without.positive_liminf);
    CHECK(without.tail_value < 1e-3);
}

TEST_CASE("subsequence scan of the counterexample", "[asymptotics]") {
    const auto s = subsequence_scan(gallery::counterexample(), 1.0, 10, 12);
    REQUIRE(s.dyadic.size() == 3);
    CHECK(rel_err(s.dyadic[0], frozen::counterexample_dyadic_10) < 1e-12);
    CHECK(rel_err(s.dyadic[2], frozen::counterexample_dyadic_12) < 1e-12);
    CHECK(s.ns.front() == 1024);
    CHECK(s.ns.back() == 4096);
    REQUIRE(s.octaves.size() == 2);
    CHECK(s.octaves[0].ratio > 1.0);
}

TEST_CASE("subsequence scan of the nonergodic measure", "[asymptotics]") {
    const auto s = subsequence_scan(gallery::nonergodic(), 0.0, 0, 18);
    const double dyadic_max = *std::max_element(s.dyadic.begin(), s.dyadic.end());
    const double full_max = *std::max_element(s.full.begin(), s.full.end());
    CHECK(rel_err(dyadic_max, frozen::nonergodic_dyadic_max_j18) < 1e-10);
    CHECK(rel_err(full_max, frozen::nonergodic_var_174762) < 1e-10);
    // oracle: the growth factor at this scale is about 7.23
    CHECK(full_max / dyadic_max == Approx(7.2348).epsilon(1e-4));
}

TEST_CASE("gamma fit", "[asymptotics]") {
    std::vector<VariancePoint> pts;
    for (std::int64_t n : {10, 100, 1000, 10000}) pts.push_back({n, 3.0 * std::pow(double(n), 1.3)});
    const auto f = gamma_fit(pts);
    CHECK(f.gamma_hat == Approx(1.3).epsilon(1e-12));
    CHECK(f.K0_hat == Approx(3.0).epsilon(1e-11));
    CHECK(f.residual < 1e-12);
    CHECK_THROWS_AS(gamma_fit(std::span(pts).first(2)), DomainError);
    pts[1].variance = -1.0;
    CHECK_THROWS_AS(gamma_fit(pts), DomainError);
}
