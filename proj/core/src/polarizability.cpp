#include "bbdrag/polarizability.hpp"

#include "bbdrag/error.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace bbdrag {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double value, std::string_view name)
{
    if (!std::isfinite(value) || value <= 0.0)
        throw InputError(std::string(name) + " must be finite and > 0");
}

} // namespace

void validate(const PolarizabilityModel& model)
{
    std::visit(overloaded{
                   [](const LorentzOscillator& m) {
                       require_positive(m.alpha0, "polarizability.alpha0");
                       require_positive(m.omega0, "polarizability.omega0");
                       require_positive(m.damping, "polarizability.gamma");
                   },
                   [](const DrudeSphere& m) {
                       require_positive(m.radius, "polarizability.radius");
                       require_positive(m.plasma_frequency, "polarizability.omega_p");
                       require_positive(m.collision_rate, "polarizability.nu");
                   },
                   [](const TopHat& m) {
                       if (!std::isfinite(m.amplitude) || m.amplitude < 0.0)
                           throw InputError("polarizability.A must be finite and >= 0");
                       require_positive(m.omega_low, "polarizability.omega1");
                       require_positive(m.omega_high, "polarizability.omega2");
                       if (!(m.omega_low < m.omega_high))
                           throw InputError("polarizability.omega1 must be < polarizability.omega2");
                   },
                   [](const Ohmic& m) {
                       require_positive(m.slope, "polarizability.A");
                       if (m.cutoff)
                           require_positive(*m.cutoff, "polarizability.omega_c");
                   },
               },
               model);
}

double alpha_im(const PolarizabilityModel& model, double omega)
{
    if (!(omega >= 0.0))
        throw InputError("alpha_im: omega must be >= 0");
    return std::visit(
        overloaded{
            [omega](const LorentzOscillator& m) {
                const double w0sq = m.omega0 * m.omega0;
                const double detune = w0sq - omega * omega;
                const double gw = m.damping * omega;
                return m.alpha0 * w0sq * gw / (detune * detune + gw * gw);
            },
            [omega](const DrudeSphere& m) {
                // Im[-wp^2 / (3 w^2 - wp^2 + 3 i w nu)] times R^3
                const double wpsq = m.plasma_frequency * m.plasma_frequency;
                const double re = 3.0 * omega * omega - wpsq;
                const double im = 3.0 * omega * m.collision_rate;
                const double r3 = m.radius * m.radius * m.radius;
                return r3 * wpsq * im / (re * re + im * im);
            },
            [omega](const TopHat& m) {
                return (omega >= m.omega_low && omega <= m.omega_high) ? m.amplitude : 0.0;
            },
            [omega](const Ohmic& m) {
                return m.cutoff ? m.slope * omega * std::exp(-omega / *m.cutoff) : m.slope * omega;
            },
        },
        model);
}

double drude_alpha_im_complex(const DrudeSphere& model, double omega)
{
    if (!(omega > 0.0))
        return 0.0;
    using cplx = std::complex<double>;
    const double wpsq = model.plasma_frequency * model.plasma_frequency;
    // (eps - 1) / (eps + 2) = 1 / (1 + 3 / chi) with chi = eps - 1; this keeps
    // the small imaginary part free of cancellation when |chi| >> 1
    const cplx chi = -wpsq / (omega * cplx(omega, model.collision_rate));
    const cplx alpha = model.radius * model.radius * model.radius / (1.0 + 3.0 / chi);
    return alpha.imag();
}

std::vector<double> breakpoints(const PolarizabilityModel& model)
{
    return std::visit(overloaded{
                          [](const LorentzOscillator& m) { return std::vector<double>{m.omega0}; },
                          [](const DrudeSphere& m) {
                              return std::vector<double>{m.plasma_frequency / std::sqrt(3.0)};
                          },
                          [](const TopHat& m) { return std::vector<double>{m.omega_low, m.omega_high}; },
                          [](const Ohmic&) { return std::vector<double>{}; },
                      },
                      model);
}

bool is_null(const PolarizabilityModel& model)
{
    const auto* top_hat = std::get_if<TopHat>(&model);
    return top_hat != nullptr && top_hat->amplitude == 0.0;
}

std::string_view model_name(const PolarizabilityModel& model)
{
    return std::visit(overloaded{
                          [](const LorentzOscillator&) { return std::string_view("lorentz"); },
                          [](const DrudeSphere&) { return std::string_view("drude"); },
                          [](const TopHat&) { return std::string_view("tophat"); },
                          [](const Ohmic&) { return std::string_view("ohmic"); },
                      },
                      model);
}

std::optional<double> model_radius(const PolarizabilityModel& model)
{
    if (const auto* drude = std::get_if<DrudeSphere>(&model))
        return drude->radius;
    return std::nullopt;
}

} // namespace bbdrag
