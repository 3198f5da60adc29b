#include "specvar/quadrature.hpp"
#include "specvar/special_functions.hpp"

#include "frozen_values.hpp"
#include "support.hpp"

#include <catch2/catch.hpp>

#include <numbers>

using namespace specvar;
using testing::rel_err;

TEST_CASE("power weight rule integrates monomials exactly", "[quadrature]") {
    for (double p : {-0.75, -0.5, 0.0, 0.5, 1.5}) {
        const auto& rule = quad::power_weight_rule(p, 20);
        REQUIRE(rule.nodes.size() == 20);
        for (int j = 0; j <= 39; j += 3) {
            double s = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], j);
            CHECK(rel_err(s, 1.0 / (j + p + 1.0)) < 1e-12);
        }
        for (double u : rule.nodes) {
            CHECK(u > 0.0);
            CHECK(u < 1.0);
        }
    }
}

TEST_CASE("power weight rules are cached", "[quadrature]") {
    const auto& a = quad::power_weight_rule(-0.25, 32);
    const auto& b = quad::power_weight_rule(-0.25, 32);
    CHECK(&a == &b);
}

TEST_CASE("singular integrals through the Jacobi route", "[quadrature]") {
    // int_0^1 y^{-1/2} cos(y) dy by its Taylor series
    double series = 0.0, term = 1.0;
    for (int k = 0; k < 30; ++k) {
        series += term / (2.0 * k + 0.5);
        term *= -1.0 / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
    }
    const auto r = quad::integrate_power_weighted([](double y) { return std::cos(y); }, 1.0, -0.5);
    CHECK(rel_err(r.value, series) < 1e-13);
    CHECK(r.error < 1e-12);
}

TEST_CASE("adaptive Gauss-Kronrod on smooth integrands", "[quadrature]") {
    const auto r = quad::integrate([](double y) { return std::exp(y); }, 0.0, 2.0);
    CHECK(rel_err(r.value, std::exp(2.0) - 1.0) < 1e-14);
    CHECK(quad::integrate([](double) { return 1.0; }, 1.0, 1.0).value == 0.0);
}

TEST_CASE("Lanczos gamma against high-precision values", "[special]") {
    CHECK(rel_err(lanczos_gamma(0.1), frozen::gamma_0p1) < 1e-14);
    CHECK(rel_err(lanczos_gamma(0.5), frozen::gamma_0p5) < 1e-14);
    CHECK(rel_err(lanczos_gamma(1.0), frozen::gamma_1) < 1e-14);
    CHECK(rel_err(lanczos_gamma(2.5), frozen::gamma_2p5) < 1e-14);
    CHECK(rel_err(lanczos_gamma(7.25), frozen::gamma_7p25) < 1e-13);
    CHECK(rel_err(lanczos_gamma(20.0), frozen::gamma_20) < 1e-13);
}

TEST_CASE("Lanczos gamma satisfies the recurrence", "[special][property]") {
    for (double x = 0.05; x < 10.0; x += 0.173) CHECK(rel_err(lanczos_gamma(x + 1.0), x * lanczos_gamma(x)) < 1e-13);
}
