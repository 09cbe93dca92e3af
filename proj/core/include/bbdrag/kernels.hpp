#pragma once

#include <cstddef>

namespace bbdrag {

/// Largest admissible speed; keeps gamma below ~2.2e4.
inline constexpr double beta_max = 1.0 - 1e-9;

/// Controls for the nested (omega, x) quadrature.
struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-14;
    double u_max = 40.0;                 // cutoff in units of the hottest Doppler-shifted thermal frequency
    std::size_t max_subdivisions = 200;  // adaptive panels over omega
    std::size_t inner_nodes = 64;        // Gauss-Legendre order per x sub-interval

    /// Throws InputError on rel_tol <= 0, abs_tol <= 0, u_max < 10, inner_nodes < 8.
    void validate() const;
};

/// Throws InputError unless 0 <= beta <= beta_max.
void check_speed(double beta);

/// 1 / sqrt(1 - beta^2), speed-checked.
double lorentz_factor(double beta);

/// Bose occupation 1 / (exp(omega/T) - 1), evaluated through expm1. Exactly 0
/// for T = 0 and for arguments beyond the double range.
double bose_occupation(double omega, double temperature);

/// coth(y) - 1 = 2 / (exp(2y) - 1) for y > 0.
double coth_zero_point_subtracted(double y);

/// Rest-frame frequency gamma * omega * (1 + beta x) of a lab-frame photon
/// arriving at direction cosine x.
double doppler_frequency(double omega, double x, double beta);

/// Upper frequency cutoff u_max * max(T2, T1 sqrt((1+beta)/(1-beta))). T1 is
/// the temperature whose occupation is evaluated at the Doppler-shifted
/// frequency, T2 the one evaluated at the lab frequency.
double omega_cutoff(double t1, double t2, double beta, double u_max);

} // namespace bbdrag
