#include "bbdrag/error.hpp"
#include "bbdrag/kernels.hpp"

#include <doctest.h>

#include <cmath>

using namespace bbdrag;

TEST_CASE("Bose occupation")
{
    CHECK(bose_occupation(3.0, 0.0) == 0.0);
    CHECK(bose_occupation(std::log(2.0), 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(bose_occupation(2.0 * std::log(2.0), 2.0) == doctest::Approx(1.0).epsilon(1e-15));

    // e^-50 / (1 - e^-50) in extended precision
    const long double e50 = std::exp(-50.0L);
    const double reference = static_cast<double>(e50 / (1.0L - e50));
    CHECK(std::abs(bose_occupation(50.0, 1.0) - reference) <= 1e-10 * reference);

    CHECK_THROWS_AS(bose_occupation(0.0, 1.0), InputError);
    CHECK_THROWS_AS(bose_occupation(-1.0, 1.0), InputError);
    CHECK_THROWS_AS(bose_occupation(1.0, -1.0), InputError);
}

TEST_CASE("kernels stay finite up to hbar omega / k_B T = 1e4")
{
    for (double y = 1e-8; y <= 1e4; y *= 1.7) {
        const double n = bose_occupation(y, 1.0);
        CHECK(std::isfinite(n));
        CHECK(n >= 0.0);
        CHECK(std::isfinite(coth_zero_point_subtracted(y)));
    }
    CHECK(bose_occupation(1e4, 1.0) == 0.0);
}

TEST_CASE("zero-point subtracted coth")
{
    CHECK(coth_zero_point_subtracted(1.0) == doctest::Approx(2.0 / std::expm1(2.0)).epsilon(1e-15));
    const double big = coth_zero_point_subtracted(400.0);
    CHECK(std::isfinite(big));
    CHECK(big <= 1e-14);

    const long double y = 0.01L;
    const double naive = static_cast<double>(std::cosh(y) / std::sinh(y));
    CHECK(std::abs(coth_zero_point_subtracted(0.01) + 1.0 - naive) <= 1e-12 * naive);

    double previous = coth_zero_point_subtracted(1e-3);
    for (double v = 2e-3; v < 50.0; v *= 1.3) {
        const double current = coth_zero_point_subtracted(v);
        CHECK(current < previous);
        previous = current;
    }
    CHECK_THROWS_AS(coth_zero_point_subtracted(0.0), InputError);
}

TEST_CASE("Doppler frequency")
{
    CHECK(doppler_frequency(2.5, 0.3, 0.0) == 2.5);
    CHECK(doppler_frequency(1.0, 1.0, 0.6) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(doppler_frequency(1.0, -1.0, 0.6) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(doppler_frequency(1.0, 1.5, 0.5), InputError);
    CHECK_THROWS_AS(doppler_frequency(1.0, 0.0, 1.0), InputError);
    CHECK_THROWS_AS(doppler_frequency(1.0, 0.0, -0.1), InputError);
}

TEST_CASE("speed guard")
{
    CHECK_NOTHROW(check_speed(0.0));
    CHECK_NOTHROW(check_speed(beta_max));
    CHECK_THROWS_AS(check_speed(1.0), InputError);
    CHECK(lorentz_factor(0.6) == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(std::isfinite(lorentz_factor(beta_max)));
}

TEST_CASE("frequency cutoff")
{
    CHECK(omega_cutoff(0.0, 1.0, 0.5, 40.0) == doctest::Approx(40.0));
    CHECK(omega_cutoff(1.0, 0.0, 0.0, 40.0) == doctest::Approx(40.0));
    CHECK(omega_cutoff(1.0, 1.0, 0.8, 40.0) == doctest::Approx(120.0).epsilon(1e-14));
    CHECK_THROWS_AS(omega_cutoff(0.0, 0.0, 0.5, 40.0), InputError);
}

TEST_CASE("quadrature spec validation")
{
    QuadratureSpec spec;
    CHECK_NOTHROW(spec.validate());
    spec.u_max = 5.0;
    CHECK_THROWS_AS(spec.validate(), InputError);
    spec = {};
    spec.inner_nodes = 4;
    CHECK_THROWS_AS(spec.validate(), InputError);
    spec = {};
    spec.rel_tol = 0.0;
    CHECK_THROWS_AS(spec.validate(), InputError);
}
