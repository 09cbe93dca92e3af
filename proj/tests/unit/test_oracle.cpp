#include "bbdrag/error.hpp"
#include "bbdrag/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

using namespace bbdrag;
using namespace bbdrag::oracle;

TEST_CASE("midpoint sums of simple integrands")
{
    const GridSpec unit{64, 64, 0.0, 1.0};
    CHECK(riemann_2d([](double, double) { return 1.0; }, unit) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(riemann_2d([](double w, double x) { return w * x; }, unit)) <= 1e-15);
}

TEST_CASE("midpoint error falls as n^-2")
{
    const auto f = [](double w, double x) { return w * w * std::exp(x); };
    const double exact = (1.0 / 3.0) * (std::exp(1.0) - std::exp(-1.0));
    const double e1 = std::abs(riemann_2d(f, {64, 64, 0.0, 1.0}) - exact);
    const double e2 = std::abs(riemann_2d(f, {128, 128, 0.0, 1.0}) - exact);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.01));
}

TEST_CASE("grid validation and non-finite samples")
{
    CHECK_THROWS_AS(GridSpec({32, 64, 0.0, 1.0}).validate(), InputError);
    CHECK_THROWS_AS(GridSpec({64, 64, 1.0, 1.0}).validate(), InputError);
    try {
        riemann_2d([](double w, double) { return w > 0.5 ? std::nan("") : 0.0; }, {64, 64, 0.0, 1.0});
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        CHECK(std::string(e.what()).find("omega = 0.5") != std::string::npos);
    }
    const auto d = GridSpec{100, 70, 0.0, 2.0}.doubled();
    CHECK(d.n_omega == 200);
    CHECK(d.n_x == 140);
}

TEST_CASE("oracle reproduces the emitted-power closed form")
{
    const GoldenCase c{"emitted", Observable::emitted, 0.0, 1.0, 0.0, Ohmic{1.0, std::nullopt}};
    const double exact = 32.0 * std::pow(std::numbers::pi, 5) / 63.0;
    CHECK(std::abs(evaluate(c, 512, 128).value - exact) <= 1e-5 * exact);
}

TEST_CASE("standard cases cover every observable family")
{
    const auto cases = standard_cases();
    CHECK(cases.size() >= 6);
    std::set<Observable> kinds;
    std::set<std::string> names;
    for (const auto& c : cases) {
        kinds.insert(c.observable);
        names.insert(c.name);
    }
    CHECK(names.size() == cases.size());
    for (auto o : {Observable::force_lab, Observable::heating_rate, Observable::intensity, Observable::drag,
                   Observable::rest_frame})
        CHECK(kinds.count(o) == 1);
}

TEST_CASE("convergence gate rejects a coarse grid")
{
    const GoldenCase c{"coarse", Observable::absorbed, 0.6, 0.0, 1.0, LorentzOscillator{1.0, 1.0, 0.5}};
    CHECK_THROWS_AS(mint_golden(c, 64, 64), NumericalError);
}

TEST_CASE("golden records round-trip through JSON lines")
{
    GoldenRecord r;
    r.golden_case = {"x", Observable::drag, 0.3, 0.0, 1.0, TopHat{1.0, 0.5, 1.5}};
    r.grid = {2048, 1024, 0.5, 1.5};
    r.value = -0.141338334380987;
    r.value_doubled = -0.1413383343809873;
    r.relative_change = 2e-15;
    const auto back = parse_json_line(to_json_line(r));
    CHECK(back.golden_case.name == "x");
    CHECK(back.golden_case.observable == Observable::drag);
    CHECK(back.value == r.value);
    CHECK(back.value_doubled == r.value_doubled);
    CHECK(back.grid.omega_max == 1.5);
    CHECK(to_json_line(back) == to_json_line(r));
    CHECK_THROWS_AS(parse_json_line("{\"case\": 1}"), InputError);
    CHECK_THROWS_AS(parse_observable("torque"), InputError);
}
