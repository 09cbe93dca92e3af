#include "bbdrag/frame_consistency.hpp"

#include <doctest.h>

#include <cmath>

using namespace bbdrag;

namespace {

const QuadratureSpec spec;
const std::vector<PolarizabilityModel> models = {
    LorentzOscillator{1.0, 1.0, 0.5}, DrudeSphere{1.0, 3.0, 1.0}, TopHat{1.0, 0.5, 1.5}, Ohmic{1.0, 5.0}};

} // namespace

TEST_CASE("check verdicts follow the error budget")
{
    CHECK(make_check("a", 1.0, 1.0 + 5e-10, 1e-10, std::nullopt).passed);
    CHECK_FALSE(make_check("b", 1.0, 1.0 + 2e-9, 1e-10, std::nullopt).passed);
    CHECK(make_check("c", 0.0, 5e-13, 0.0, std::nullopt).passed);
    CHECK_FALSE(make_check("d", 0.0, 5e-12, 0.0, std::nullopt).passed);
}

TEST_CASE("energy balance residual")
{
    CHECK(energy_balance_residual({0.0, 1.0, 1.0}, {1.0}, TopHat{1.0, 0.5, 1.5}, spec).residual <= 1e-12);
    CHECK(energy_balance_residual({0.5, 1.0, 2.0}, {1.0}, TopHat{1.0, 0.5, 1.5}, spec).passed);
    CHECK(energy_balance_residual({0.9, 1.0, 0.1}, {1.0}, LorentzOscillator{1.0, 1.0, 0.5}, spec).passed);
}

TEST_CASE("frame force residual")
{
    CHECK(frame_force_residual({0.0, 1.0, 3.0}, {1.0}, LorentzOscillator{}, spec).residual <= 1e-12);
    CHECK(frame_force_residual({0.5, 1.0, 3.0}, {1.0}, LorentzOscillator{}, spec).passed);
    CHECK(frame_force_residual({0.7, 1.0, 0.0}, {1.0}, LorentzOscillator{}, spec).passed);
}

TEST_CASE("particle-temperature terms cancel")
{
    const auto rest = appendix_J({0.0, 1.0, 1.0}, LorentzOscillator{}, spec);
    CHECK(std::abs(rest.j1.value) <= 1e-12);
    CHECK(rest.j2.value == 0.0);

    for (const auto& m : models) {
        CAPTURE(model_name(m));
        const auto j = appendix_J({0.5, 1.0, 1.0}, m, spec);
        CHECK(j.j1.value > 0.0);
        CHECK(j.residual <= 1e-7 * std::abs(j.j1.value));
        CHECK(std::abs(j.j1.value - j.j1_reduced.value) <= 1e-7 * std::abs(j.j1.value));
        CHECK(std::abs(j.j2.value - j.j2_reduced.value) <= 1e-7 * std::abs(j.j2.value));
    }
}

TEST_CASE("inner integrals match their closed forms")
{
    const auto zero = inner_closed_forms(0.0);
    CHECK(std::abs(zero.odd.value) <= 1e-15);
    CHECK(zero.even.value == doctest::Approx(2.0).epsilon(1e-15));

    const auto half = inner_closed_forms(0.5);
    CHECK(std::abs(half.odd.value + 16.0 / 9.0) <= 1e-10 * 16.0 / 9.0);
    CHECK(std::abs(half.even.value - 8.0 / 3.0) <= 1e-10 * 8.0 / 3.0);

    for (int k = 1; k <= 9; ++k) {
        const double beta = 0.1 * k;
        const double g2 = 1.0 / (1.0 - beta * beta);
        const auto r = inner_closed_forms(beta);
        CHECK(std::abs(r.odd.value + 2.0 * beta * g2 * g2) <= 1e-10 * 2.0 * beta * g2 * g2);
        CHECK(std::abs(r.even.value - 2.0 * g2) <= 1e-10 * 2.0 * g2);
    }
}

TEST_CASE("full suite")
{
    SUBCASE("global equilibrium")
    {
        const auto report = verify_all({0.0, 1.0, 1.0}, {1.0}, LorentzOscillator{}, spec);
        CHECK(report.passed());
        for (const auto& c : report.checks) {
            CAPTURE(c.name);
            CHECK(c.passed);
        }
    }
    SUBCASE("moving hot particle, every model")
    {
        for (const auto& m : models) {
            CAPTURE(model_name(m));
            const auto report = verify_all({0.6, 1.0, 2.0}, {1.0}, m, spec);
            for (const auto& c : report.checks) {
                CAPTURE(c.name);
                CAPTURE(c.residual);
                CHECK(c.passed);
            }
        }
    }
    SUBCASE("null coupling")
    {
        const auto report = verify_all({0.6, 1.0, 2.0}, {1.0}, TopHat{0.0, 0.5, 1.5}, spec);
        CHECK(report.passed());
        for (const auto& c : report.checks) {
            if (c.name.rfind("inner_integral", 0) != 0) {
                CAPTURE(c.name);
                CHECK(c.left == 0.0);
            }
        }
    }
}

TEST_CASE("report does not depend on the thread count")
{
    const ParticleState state{0.3, 1.0, 0.1};
    const auto one = verify_all(state, {10.0}, DrudeSphere{1.0, 3.0, 1.0}, spec, 1);
    const auto four = verify_all(state, {10.0}, DrudeSphere{1.0, 3.0, 1.0}, spec, 4);
    REQUIRE(one.checks.size() == four.checks.size());
    for (std::size_t i = 0; i < one.checks.size(); ++i) {
        CHECK(one.checks[i].name == four.checks[i].name);
        CHECK(one.checks[i].left == four.checks[i].left);
        CHECK(one.checks[i].right == four.checks[i].right);
        CHECK(one.checks[i].combined_error == four.checks[i].combined_error);
    }
}
