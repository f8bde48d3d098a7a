#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "serrinlab/numerics.hpp"
#include "serrinlab/radial.hpp"

using namespace serrinlab;

namespace {

// Closed forms derived by hand for the acceptance pairs (unit R, c unless
// stated): (p=2,n=2): v = c R ln(R/r); (p=2,n=3): v = K (1/r - 1/R) with
// K = R^2 c; (p=3,n=2): v = 2 c sqrt(R) (sqrt(R) - sqrt(r)).
double closed_form_22(double R, double c, double r) { return c * R * std::log(R / r); }
double closed_form_23(double R, double c, double r) { return R * R * c * (1.0 / r - 1.0 / R); }
double closed_form_32(double R, double c, double r) {
    return 2.0 * c * std::sqrt(R) * (std::sqrt(R) - std::sqrt(r));
}

}  // namespace

TEST_CASE("K from the boundary data") {
    CHECK(RadialSolution(Nonlinearity::p_laplacian(2.0), 2, 1.0, 1.0).K() == doctest::Approx(1.0));
    CHECK(RadialSolution(Nonlinearity::p_laplacian(3.0), 2, 1.0, 1.0).K() == doctest::Approx(1.0));
    CHECK(RadialSolution(Nonlinearity::p_laplacian(2.0), 3, 2.0, 0.5).K() == doctest::Approx(2.0));
}

TEST_CASE("pointwise v against the hand-derived forms") {
    const RadialSolution harmonic(Nonlinearity::p_laplacian(2.0), 2, 1.0, 1.0);
    CHECK(harmonic.v(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(harmonic.v(1.0) == 0.0);
    const RadialSolution cubic(Nonlinearity::p_laplacian(3.0), 2, 1.0, 1.0);
    CHECK(cubic.v(0.25) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(cubic.v(1.0) == 0.0);
}

TEST_CASE("v_prime identities") {
    for (auto [p, n] : {std::pair{2.0, 2}, {3.0, 2}, {2.0, 3}}) {
        const RadialSolution rs(Nonlinearity::p_laplacian(p), n, 1.0, 1.0);
        CHECK(std::abs(rs.v_prime(1.0) + 1.0) <= 1e-10);
    }
    const RadialSolution rs23(Nonlinearity::p_laplacian(2.0), 3, 1.0, 1.0);
    CHECK(rs23.v_prime(0.5) == doctest::Approx(-4.0).epsilon(1e-10));
    const RadialSolution rs32(Nonlinearity::p_laplacian(3.0), 2, 1.0, 1.0);
    CHECK(rs32.v_prime(0.25) == doctest::Approx(-2.0).epsilon(1e-10));
}

TEST_CASE("closed-form agreement on 50 radii") {
    const double R = 1.0, c = 1.0;
    const RadialSolution rs22(Nonlinearity::p_laplacian(2.0), 2, R, c);
    const RadialSolution rs23(Nonlinearity::p_laplacian(2.0), 3, R, c);
    const RadialSolution rs32(Nonlinearity::p_laplacian(3.0), 2, R, c);
    for (double r : log_spaced(0.01 * R, R, 50)) {
        CHECK(std::abs(rs22.v(r) - closed_form_22(R, c, r)) <= 1e-8);
        CHECK(std::abs(rs23.v(r) - closed_form_23(R, c, r)) <= 1e-8);
        CHECK(std::abs(rs32.v(r) - closed_form_32(R, c, r)) <= 1e-8);
    }
}

TEST_CASE("first integral r^(n-1) flux(|v'|) = K") {
    const auto radii = log_spaced(1e-4, 1.0, 100);
    for (auto [p, n] : {std::pair{1.5, 2}, {2.0, 2}, {3.0, 2}, {2.0, 3}, {4.0, 3}}) {
        const RadialSolution rs(Nonlinearity::p_laplacian(p), n, 1.0, 1.0);
        CHECK(rs.first_integral_defect(radii) <= 1e-10);
    }
    const RadialSolution bg(Nonlinearity::bounded_gradient(4.0), 2, 1.0, 1.0);
    CHECK(bg.first_integral_defect(radii) <= 1e-10);
}

TEST_CASE("v is strictly decreasing in r") {
    const RadialSolution rs(Nonlinearity::bounded_gradient(4.0), 2, 1.0, 1.0);
    double prev = rs.v(1e-3);
    for (double r : log_spaced(2e-3, 1.0, 30)) {
        const double val = rs.v(r);
        CHECK(val < prev);
        prev = val;
    }
}

TEST_CASE("v_prime matches central differences of v") {
    for (auto [p, n] : {std::pair{2.0, 2}, {3.0, 2}, {2.0, 3}}) {
        const RadialSolution rs(Nonlinearity::p_laplacian(p), n, 1.0, 1.0);
        for (double r : {0.1, 0.3, 0.62}) {
            const double d = 1e-5 * r;
            const double fd = (rs.v(r + d) - rs.v(r - d)) / (2.0 * d);
            CHECK(rs.v_prime(r) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("singular value: finite case with its closed form") {
    const RadialSolution rs(Nonlinearity::p_laplacian(3.0), 2, 1.0, 1.0);
    const SingularValue m = rs.singular_value();
    REQUIRE(m.finite());
    CHECK(m.value == doctest::Approx(2.0).epsilon(1e-8));  // M = 2 c R
    // scaled variant
    const RadialSolution rs2(Nonlinearity::p_laplacian(3.0), 2, 2.0, 1.5);
    REQUIRE(rs2.singular_value().finite());
    CHECK(rs2.singular_value().value == doctest::Approx(6.0).epsilon(1e-7));
}

TEST_CASE("singular value of the bounded-gradient family") {
    // K = 2 and b inverts t(1+t^2); substituting t = b(2/rho) and splitting
    // into partial fractions gives M = 2 int_1^inf (1+3t^2)/(t(1+t^2)^2) dt
    // = [2 ln t - ln(1+t^2) - 2/(1+t^2)]_1^inf = 1 + ln 2
    const RadialSolution rs(Nonlinearity::bounded_gradient(4.0), 2, 1.0, 1.0);
    const SingularValue m = rs.singular_value();
    REQUIRE(m.finite());
    CHECK(m.value == doctest::Approx(1.0 + std::log(2.0)).epsilon(1e-8));
}

TEST_CASE("singular value dichotomy matches sign(p - n)") {
    for (double p : {1.5, 2.0, 2.5, 3.0, 4.0}) {
        for (int n : {2, 3}) {
            const RadialSolution rs(Nonlinearity::p_laplacian(p), n, 1.0, 1.0);
            const SingularValue m = rs.singular_value();
            if (p > n) {
                CHECK(m.finite());
            } else {
                CHECK(m.infinite());
            }
        }
    }
}

TEST_CASE("sampled table is consistent with pointwise evaluation") {
    const RadialSolution rs(Nonlinearity::p_laplacian(3.0), 2, 1.0, 1.0);
    const auto table = rs.table(128);
    REQUIRE(table.size() == 128);
    CHECK(table.back().v == 0.0);
    CHECK(table.back().r == doctest::Approx(1.0));
    for (size_t i = 1; i < table.size(); ++i) CHECK(table[i].v < table[i - 1].v);
    for (size_t i = 0; i < table.size(); i += 17) {
        CHECK(table[i].v == doctest::Approx(rs.v(table[i].r)).epsilon(1e-9));
        CHECK(table[i].first_integral_defect <= 1e-10);
    }
}

TEST_CASE("constructor validation") {
    CHECK_THROWS(RadialSolution(Nonlinearity::p_laplacian(2.0), 1, 1.0, 1.0));
    CHECK_THROWS(RadialSolution(Nonlinearity::p_laplacian(2.0), 2, -1.0, 1.0));
    CHECK_THROWS(RadialSolution(Nonlinearity::p_laplacian(2.0), 2, 1.0, 0.0));
    const RadialSolution rs(Nonlinearity::p_laplacian(2.0), 2, 1.0, 1.0);
    CHECK_THROWS_AS(rs.v(0.0), std::domain_error);
    CHECK_THROWS_AS(rs.v(1.5), std::domain_error);
}
