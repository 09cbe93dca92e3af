#include "bbdrag/dynamics.hpp"

#include "bbdrag/error.hpp"
#include "bbdrag/frame_consistency.hpp"
#include "bbdrag/units.hpp"

#include <boost/math/tools/toms748_solve.hpp>
#include <boost/numeric/odeint/stepper/generation.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_dopri5.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace bbdrag {

namespace odeint = boost::numeric::odeint;

void MaterialThermo::validate() const
{
    if (!(specific_heat > 0.0) || !std::isfinite(specific_heat))
        throw InputError("specific_heat must be finite and > 0");
}

std::string_view to_string(EvolveMode mode)
{
    switch (mode) {
    case EvolveMode::full:
        return "full";
    case EvolveMode::quasi_static_temperature:
        return "quasi-static-T1";
    case EvolveMode::fixed_velocity:
        return "fixed-velocity";
    }
    return "full";
}

EvolveMode parse_evolve_mode(std::string_view name)
{
    for (auto mode : {EvolveMode::full, EvolveMode::quasi_static_temperature, EvolveMode::fixed_velocity}) {
        if (to_string(mode) == name)
            return mode;
    }
    throw InputError("unknown evolve mode '" + std::string(name) + "'");
}

void EvolveConfig::validate(const QuadratureSpec& quadrature) const
{
    const auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw InputError(std::string("evolve.") + name + " must be finite and > 0");
    };
    positive(t_end, "t_end");
    positive(initial_step, "initial_step");
    positive(rel_tol, "rel_tol");
    positive(abs_tol, "abs_tol");
    positive(monitor_tol, "monitor_tol");
    positive(temperature_tol, "temperature_tol");
    if (!(max_step >= 0.0))
        throw InputError("evolve.max_step must be >= 0");
    if (!(beta_floor >= 0.0))
        throw InputError("evolve.beta_floor must be >= 0");
    if (output_stride < 1)
        throw InputError("evolve.output_stride must be >= 1");
    if (abs_tol < 10.0 * quadrature.abs_tol)
        throw InputError("evolve.abs_tol must be at least 10x quadrature.abs_tol");
}

namespace {

struct Rates {
    double temperature = 0.0;  // T1 actually used (T1* in quasi-static mode)
    Estimate drag;
    Estimate heating;
};

Rates rates_at(const ParticleState& state, const BathSpec& bath, const PolarizabilityModel& model,
               const QuadratureSpec& spec, EvolveMode mode)
{
    Rates r;
    r.temperature = state.temperature;
    if (mode == EvolveMode::quasi_static_temperature && bath.temperature > 0.0 && !is_null(model))
        r.temperature = equilibrium_temperature(state.beta, bath, model, spec);
    ParticleState s = state;
    s.temperature = r.temperature;
    if (mode != EvolveMode::fixed_velocity)
        r.drag = drag_combination(s, bath, model, spec);
    r.heating = heating_rate(s, bath, model, spec);
    return r;
}

Derivatives derivatives_from(const ParticleState& state, const Rates& r, const MaterialThermo& thermo,
                             EvolveMode mode)
{
    const double beta = state.beta;
    const double gamma = lorentz_factor(beta);
    const double one_minus_b2 = (1.0 - beta) * (1.0 + beta);
    Derivatives d;
    // isotropic at rest: no force, only quadrature noise
    if (mode != EvolveMode::fixed_velocity && beta > 0.0)
        d.beta = one_minus_b2 * std::sqrt(one_minus_b2) * r.drag.value / state.mass;
    d.mass = gamma * r.heating.value;
    if (mode != EvolveMode::quasi_static_temperature) {
        const double correction = thermo.heat_correction(state.temperature);
        const double factor = correction < 1e-12 ? 1.0 : 1.0 - correction;
        d.temperature = gamma * r.heating.value * factor / (thermo.specific_heat * state.mass);
    }
    return d;
}

using StateVector = std::array<double, 3>;

ParticleState to_state(const StateVector& x)
{
    // the stepper may probe slightly negative values near zero
    return ParticleState{std::max(x[0], 0.0), x[1], std::max(x[2], 0.0)};
}

} // namespace

Derivatives derivatives(const ParticleState& state, const BathSpec& bath, const PolarizabilityModel& model,
                        const MaterialThermo& thermo, const QuadratureSpec& spec, EvolveMode mode)
{
    state.validate();
    bath.validate();
    validate(model);
    thermo.validate();
    spec.validate();
    return derivatives_from(state, rates_at(state, bath, model, spec, mode), thermo, mode);
}

double equilibrium_temperature(double beta, const BathSpec& bath, const PolarizabilityModel& model,
                               const QuadratureSpec& spec)
{
    check_speed(beta);
    bath.validate();
    validate(model);
    const double t2 = bath.temperature;
    if (!(t2 > 0.0))
        throw InputError("equilibrium_temperature: bath temperature must be > 0");
    if (is_null(model))
        throw InputError("equilibrium_temperature: polarizability vanishes identically");
    if (beta == 0.0)
        return t2;

    const auto qdot = [&](double t1) {
        return heating_rate(ParticleState{beta, 1.0, t1}, bath, model, spec).value;
    };
    double lo = t2 * std::sqrt((1.0 - beta) / (1.0 + beta));
    double hi = t2 * std::sqrt((1.0 + beta) / (1.0 - beta));
    const double q_lo = qdot(lo);
    const double q_hi = qdot(hi);
    if (q_lo == 0.0)
        return lo;
    if (q_hi == 0.0)
        return hi;
    if ((q_lo > 0.0) == (q_hi > 0.0)) {
        std::ostringstream msg;
        msg << "equilibrium_temperature: no sign change on [" << lo << ", " << hi << "] (dQ/dt = " << q_lo << ", "
            << q_hi << ")";
        throw NumericalError(msg.str());
    }
    std::uintmax_t iterations = 200;
    const auto converged = [](double a, double b) { return std::abs(b - a) <= 1e-10 * std::min(a, b); };
    const auto [a, b] = boost::math::tools::toms748_solve(qdot, lo, hi, q_lo, q_hi, converged, iterations);
    if (!converged(a, b))
        throw NumericalError("equilibrium_temperature: root solver did not converge");
    return 0.5 * (a + b);
}

Trajectory evolve(const ParticleState& state0, const BathSpec& bath, const PolarizabilityModel& model,
                  const MaterialThermo& thermo, const EvolveConfig& cfg, const QuadratureSpec& spec)
{
    state0.validate();
    bath.validate();
    validate(model);
    thermo.validate();
    spec.validate();
    cfg.validate(spec);

    Trajectory out;
    if (thermo.heat_correction(state0.temperature) > 1e-6) {
        std::ostringstream msg;
        msg << "C_s T1 / c^2 = " << thermo.heat_correction(state0.temperature)
            << " is not small; the heating law keeps the correction factor";
        out.warnings.push_back(msg.str());
    }

    const EvolveMode mode = cfg.mode;
    const auto system = [&](const StateVector& x, StateVector& dxdt, double /*t*/) {
        const ParticleState s = to_state(x);
        const Derivatives d = derivatives_from(s, rates_at(s, bath, model, spec, mode), thermo, mode);
        dxdt = {d.beta, d.mass, d.temperature};
    };

    const auto sample = [&](double t, const StateVector& x, double radiated) {
        ParticleState s = to_state(x);
        const Rates r = rates_at(s, bath, model, spec, mode);
        s.temperature = r.temperature;
        const double gamma = lorentz_factor(s.beta);
        const Estimate drag =
            mode == EvolveMode::fixed_velocity ? drag_combination(s, bath, model, spec) : r.drag;
        const Estimate force = force_lab(s, bath, model, spec);
        const Estimate power = intensity(s, bath, model, spec).net;

        TrajectoryPoint p;
        p.t = t;
        p.beta = s.beta;
        p.mass = s.mass;
        p.temperature = s.temperature;
        p.force_lab = force.value;
        p.heating_rate = r.heating.value;
        p.intensity = power.value;
        const double kinetic = s.beta * drag.value;
        const double internal = gamma * gamma * r.heating.value;
        p.balance_residual = kinetic + internal + power.value;
        p.radiated_energy = radiated;

        const double scale = std::max({std::abs(kinetic), std::abs(internal), std::abs(power.value)});
        if (std::abs(p.balance_residual) > std::max(cfg.monitor_tol * scale, identity_abs_floor)) {
            std::ostringstream msg;
            msg << "evolve: energy-balance monitor violated at t = " << t << " (residual " << p.balance_residual
                << ", scale " << scale << ")";
            throw NumericalError(msg.str());
        }
        return p;
    };

    auto stepper = odeint::make_controlled(cfg.abs_tol, cfg.rel_tol, odeint::runge_kutta_dopri5<StateVector>());

    StateVector x{state0.beta, state0.mass, state0.temperature};
    double t = 0.0;
    double dt = cfg.initial_step;
    const double min_step = 1e-14 * cfg.t_end;

    TrajectoryPoint last = sample(t, x, 0.0);
    out.points.push_back(last);

    while (t < cfg.t_end) {
        double trial = std::min(dt, cfg.t_end - t);
        if (cfg.max_step > 0.0)
            trial = std::min(trial, cfg.max_step);
        const double t_prev = t;
        const auto result = stepper.try_step(system, x, t, trial);
        if (result == odeint::fail) {
            ++out.rejected_steps;
            dt = trial;
            if (dt < min_step) {
                std::ostringstream msg;
                msg << "evolve: step size underflow at t = " << t << " (dt = " << dt << ")";
                throw NumericalError(msg.str());
            }
            continue;
        }
        ++out.accepted_steps;
        dt = trial;
        // land exactly on t_end despite rounding in t += dt
        if (cfg.t_end - t <= 1e-12 * cfg.t_end)
            t = cfg.t_end;

        TrajectoryPoint p = sample(t, x, 0.0);
        p.radiated_energy = last.radiated_energy + 0.5 * (last.intensity + p.intensity) * (t - t_prev);
        last = p;

        bool settled = false;
        if (cfg.beta_floor > 0.0 && p.beta < cfg.beta_floor && bath.temperature > 0.0 && !is_null(model)) {
            const double target = equilibrium_temperature(p.beta, bath, model, spec);
            settled = std::abs(p.temperature - target) <= cfg.temperature_tol * target;
        }
        const bool done = t >= cfg.t_end || settled;
        if (done || out.accepted_steps % cfg.output_stride == 0)
            out.points.push_back(p);
        if (done)
            break;
    }
    return out;
}

ReferenceParameters reference_parameter_set()
{
    const UnitSystem units(300.0);
    const double radius = 100e-9;  // m
    const double density = 2200.0; // kg/m^3
    const double mass = density * 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;

    ReferenceParameters p;
    p.state.beta = 0.5;
    p.state.mass = units.to_internal(mass, QuantityKind::mass);
    p.state.temperature = units.to_internal(600.0, QuantityKind::temperature);
    p.bath.temperature = units.to_internal(300.0, QuantityKind::temperature);
    p.model = LorentzOscillator{
        units.to_internal(radius * radius * radius, QuantityKind::polarizability_volume),
        units.to_internal(1.0e14, QuantityKind::frequency),
        units.to_internal(1.0e13, QuantityKind::frequency),
    };
    p.thermo.specific_heat = units.to_internal(740.0, QuantityKind::specific_heat);
    return p;
}

} // namespace bbdrag
