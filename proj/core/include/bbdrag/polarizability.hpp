#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bbdrag {

// Models of alpha''(omega), the imaginary part of the summed electric and
// magnetic polarizability. All parameters are in internal units.

/// alpha'' = alpha0 w0^2 g w / ((w0^2 - w^2)^2 + g^2 w^2)
struct LorentzOscillator {
    double alpha0 = 1.0;
    double omega0 = 1.0;
    double damping = 0.5;
};

/// Sphere of radius R with Drude permittivity eps = 1 - wp^2 / (w (w + i nu))
/// and Clausius-Mossotti polarizability R^3 (eps - 1) / (eps + 2).
struct DrudeSphere {
    double radius = 1.0;
    double plasma_frequency = 3.0;
    double collision_rate = 1.0;
};

/// Synthetic band model: alpha'' = A on [omega_low, omega_high], zero elsewhere.
/// A = 0 is accepted and gives the null-coupling particle.
struct TopHat {
    double amplitude = 1.0;
    double omega_low = 0.5;
    double omega_high = 1.5;
};

/// alpha'' = A w exp(-w / wc); no cutoff means wc = infinity.
struct Ohmic {
    double slope = 1.0;
    std::optional<double> cutoff;
};

using PolarizabilityModel = std::variant<LorentzOscillator, DrudeSphere, TopHat, Ohmic>;

/// Throws InputError when a parameter is non-finite, non-positive, or the
/// band edges are out of order.
void validate(const PolarizabilityModel& model);

/// alpha''(omega) for omega >= 0. Throws InputError for negative omega.
double alpha_im(const PolarizabilityModel& model, double omega);

/// Drude-sphere alpha'' evaluated through complex permittivity arithmetic;
/// the production path uses the expanded real formula.
double drude_alpha_im_complex(const DrudeSphere& model, double omega);

/// Frequencies at which alpha'' has a jump or a resonance peak. The quadrature
/// engine splits its panels there.
std::vector<double> breakpoints(const PolarizabilityModel& model);

/// True when alpha'' vanishes identically.
bool is_null(const PolarizabilityModel& model);

std::string_view model_name(const PolarizabilityModel& model);

/// Largest physical size associated with the model, if any (DrudeSphere radius).
std::optional<double> model_radius(const PolarizabilityModel& model);

/// Tagged JSON object in internal units, e.g. {"type":"tophat","A":1,...}.
std::string model_to_json(const PolarizabilityModel& model);
PolarizabilityModel model_from_json(std::string_view json_text);

} // namespace bbdrag
