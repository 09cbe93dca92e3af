#pragma once

#include "bbdrag/polarizability.hpp"
#include "bbdrag/quadrature.hpp"

namespace bbdrag {

/// Instantaneous particle state in the lab (radiation) frame. The
/// temperature is the proper temperature T1 of the particle.
struct ParticleState {
    double beta = 0.0;
    double mass = 1.0;
    double temperature = 0.0;

    /// Throws InputError unless 0 <= beta <= beta_max, mass > 0, T1 >= 0.
    void validate() const;
};

/// Photon-gas temperature T2 of the background radiation.
struct BathSpec {
    double temperature = 0.0;

    void validate() const;
};

/// I = I1 - I2: net radiated power, power emitted by the particle (T1 term)
/// and power absorbed from the bath (T2 term). I > 0 means net emission.
struct IntensitySplit {
    Estimate net;
    Estimate emitted;
    Estimate absorbed;
};

struct ObservableBundle {
    Estimate force_lab;         // F_x
    Estimate heating_rate;      // dQ/dt
    IntensitySplit intensity;   // I, I1, I2
    Estimate force_rest_frame;  // F'_x
    /// Largest rest-frame frequency at which alpha'' was sampled.
    double max_rest_frequency = 0.0;
};

// Every observable below is in internal units (hbar = c = k_B = 1) and
// returns its quadrature error estimate alongside the value.

/// Lab-frame force along the velocity; negative values oppose the motion.
///   F_x = -(2 gamma/pi) Int dw w^4 Int dx x (1+bx)^2 a''(w_b) [n(w,T2) - n(w_b,T1)]
Estimate force_lab(const ParticleState& state, const BathSpec& bath, const PolarizabilityModel& model,
                   const QuadratureSpec& spec);

/// Heating rate dQ/dt, positive when the particle absorbs net energy.
///   dQ/dt = (2 gamma/pi) Int dw w^4 Int dx (1+bx)^3 a''(w_b) [n(w,T2) - n(w_b,T1)]
Estimate heating_rate(const ParticleState& state, const BathSpec& bath, const PolarizabilityModel& model,
                      const QuadratureSpec& spec);

/// Net intensity and its emitted/absorbed parts, each from its own quadrature.
IntensitySplit intensity(const ParticleState& state, const BathSpec& bath, const PolarizabilityModel& model,
                         const QuadratureSpec& spec);

/// F_x - gamma^2 beta dQ/dt written as a bath-only integral (the particle
/// temperature drops out):
///   -(2 gamma^3/pi) Int dw w^4 Int dx a''(w_b) (x+b)(1+bx)^2 n(w,T2)
Estimate drag_combination(const ParticleState& state, const BathSpec& bath, const PolarizabilityModel& model,
                          const QuadratureSpec& spec);

/// Rest-frame friction force with the polarizability at its own frequency:
///   F'_x = (2/pi) Int dw w^4 a''(w) Int dx x n(gamma w (1+bx), T2)
Estimate force_rest_frame(const ParticleState& state, const BathSpec& bath, const PolarizabilityModel& model,
                          const QuadratureSpec& spec);

/// Rest-frame force from the Doppler-kernel form (same integral as
/// drag_combination, kept as a separate entry point for the dual-form check).
Estimate force_rest_frame_alt(const ParticleState& state, const BathSpec& bath, const PolarizabilityModel& model,
                              const QuadratureSpec& spec);

/// Linear-in-beta rest-frame force for beta in (0, 0.1]:
///   -(beta / (3 pi T2)) Int dw w^5 a''(w) / sinh^2(w / 2T2)
Estimate force_rest_frame_nr(double beta, const BathSpec& bath, const PolarizabilityModel& model,
                             const QuadratureSpec& spec);

ObservableBundle evaluate_all(const ParticleState& state, const BathSpec& bath, const PolarizabilityModel& model,
                              const QuadratureSpec& spec);

/// Upper end of the rest-frame frequencies gamma omega (1 + beta x) at which
/// the lab-frame observables sample alpha''. Zero when both temperatures vanish.
double max_rest_frequency(const ParticleState& state, const BathSpec& bath, const QuadratureSpec& spec);

} // namespace bbdrag
