#pragma once

#include "bbdrag/observables.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace bbdrag {

/// Constant specific heat per unit mass (internal units: energy / (mass temperature)).
struct MaterialThermo {
    double specific_heat = 1.0;

    void validate() const;

    /// C_s T1 / c^2, the relativistic correction dropped in the simplified heating law.
    double heat_correction(double temperature) const noexcept { return specific_heat * temperature; }
};

enum class EvolveMode {
    full,                     // beta, m, T1 all evolve
    quasi_static_temperature, // T1 pinned to the equilibrium temperature T1*(beta)
    fixed_velocity,           // beta held constant; heating kinetics only
};

std::string_view to_string(EvolveMode mode);
EvolveMode parse_evolve_mode(std::string_view name);

struct EvolveConfig {
    double t_end = 1.0;
    double initial_step = 1e-3;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    EvolveMode mode = EvolveMode::full;
    std::size_t output_stride = 1;  // keep every n-th accepted step (first and last always kept)
    double max_step = 0.0;          // 0 = unlimited
    double beta_floor = 0.0;        // stop once beta < beta_floor and T1 has settled
    double temperature_tol = 1e-8;  // relative, for the settled-T1 test
    double monitor_tol = 1e-6;      // energy-balance monitor, relative to the largest power term

    /// Throws InputError on non-positive times/tolerances, and when abs_tol is
    /// not at least 10x the quadrature abs_tol.
    void validate(const QuadratureSpec& quadrature) const;
};

struct Derivatives {
    double beta = 0.0;
    double mass = 0.0;
    double temperature = 0.0;
};

/// Right-hand side of the coupled system:
///   d beta/dt = (1 - beta^2)^{3/2} F'_x / m       (F'_x from drag_combination)
///   dm/dt     = gamma dQ/dt
///   dT1/dt    = gamma dQ/dt (1 - C_s T1) / (C_s m)
/// The correction factor is dropped when C_s T1 < 1e-12.
Derivatives derivatives(const ParticleState& state, const BathSpec& bath, const PolarizabilityModel& model,
                        const MaterialThermo& thermo, const QuadratureSpec& spec,
                        EvolveMode mode = EvolveMode::full);

struct TrajectoryPoint {
    double t = 0.0;
    double beta = 0.0;
    double mass = 0.0;
    double temperature = 0.0;
    double force_lab = 0.0;
    double heating_rate = 0.0;
    double intensity = 0.0;
    /// beta F'_x + gamma^2 dQ/dt + I, i.e. d(gamma m)/dt + I with the
    /// radiation force alone driving beta.
    double balance_residual = 0.0;
    /// Trapezoidal integral of I over every accepted step up to t.
    double radiated_energy = 0.0;
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
    std::vector<std::string> warnings;
};

/// Adaptive Dormand-Prince 5(4) integration from state0 until cfg.t_end.
/// Throws NumericalError on step-size underflow or when the energy-balance
/// monitor exceeds cfg.monitor_tol at an accepted step.
Trajectory evolve(const ParticleState& state0, const BathSpec& bath, const PolarizabilityModel& model,
                  const MaterialThermo& thermo, const EvolveConfig& cfg, const QuadratureSpec& spec);

/// T1* with dQ/dt(beta, T1*, T2) = 0, bracketed by the Doppler range
/// [T2 sqrt((1-b)/(1+b)), T2 sqrt((1+b)/(1-b))] and solved to relative 1e-8.
double equilibrium_temperature(double beta, const BathSpec& bath, const PolarizabilityModel& model,
                               const QuadratureSpec& spec);

/// Silica-like 100 nm sphere at beta = 0.5 in a 300 K bath, converted to
/// internal units with T_ref = 300 K. Used to exhibit the separation between
/// heating and deceleration timescales.
struct ReferenceParameters {
    ParticleState state;
    BathSpec bath;
    PolarizabilityModel model;
    MaterialThermo thermo;
};

ReferenceParameters reference_parameter_set();

} // namespace bbdrag
