#include "bbdrag/observables.hpp"

#include "bbdrag/error.hpp"

#include <cmath>
#include <numbers>

namespace bbdrag {

using std::numbers::pi;

void ParticleState::validate() const
{
    check_speed(beta);
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw InputError("particle mass must be finite and > 0");
    if (!(temperature >= 0.0) || !std::isfinite(temperature))
        throw InputError("particle temperature must be finite and >= 0");
}

void BathSpec::validate() const
{
    if (!(temperature >= 0.0) || !std::isfinite(temperature))
        throw InputError("bath temperature must be finite and >= 0");
}

namespace {

void check_inputs(const ParticleState& state, const BathSpec& bath, const PolarizabilityModel& model,
                  const QuadratureSpec& spec)
{
    state.validate();
    bath.validate();
    validate(model);
    spec.validate();
}

// Occupation without the argument checks of bose_occupation; callers only
// pass omega > 0 and T >= 0.
inline double occupation(double omega, double temperature)
{
    return temperature > 0.0 ? 1.0 / std::expm1(omega / temperature) : 0.0;
}

inline double pow4(double w)
{
    const double w2 = w * w;
    return w2 * w2;
}

// Shared shape of the lab-frame integrals: w^4 * weight(x) * a''(w_b) * occupation difference.
template <class Weight>
Estimate lab_frame_integral(const ParticleState& state, double t_lab, double t_rest, bool lab_term, bool rest_term,
                            const PolarizabilityModel& model, const QuadratureSpec& spec, Weight weight)
{
    const double beta = state.beta;
    const double gamma = lorentz_factor(beta);
    const double tl = lab_term ? t_lab : 0.0;
    const double tr = rest_term ? t_rest : 0.0;
    if (is_null(model) || (tl == 0.0 && tr == 0.0))
        return {};
    const auto kernel = [&](double omega, double x) {
        const double s = 1.0 + beta * x;
        const double wb = gamma * omega * s;
        const double a = alpha_im(model, wb);
        if (a == 0.0)
            return 0.0;
        double occ = 0.0;
        if (lab_term)
            occ += occupation(omega, t_lab);
        if (rest_term)
            occ -= occupation(wb, t_rest);
        return pow4(omega) * weight(x, s) * a * occ;
    };
    return integrate_omega_x(kernel, tr, tl, beta, spec, breakpoints(model));
}

} // namespace

Estimate force_lab(const ParticleState& state, const BathSpec& bath, const PolarizabilityModel& model,
                   const QuadratureSpec& spec)
{
    check_inputs(state, bath, model, spec);
    const double gamma = lorentz_factor(state.beta);
    const auto weight = [](double x, double s) { return x * s * s; };
    return lab_frame_integral(state, bath.temperature, state.temperature, true, true, model, spec, weight) *
           (-2.0 * gamma / pi);
}

Estimate heating_rate(const ParticleState& state, const BathSpec& bath, const PolarizabilityModel& model,
                      const QuadratureSpec& spec)
{
    check_inputs(state, bath, model, spec);
    const double gamma = lorentz_factor(state.beta);
    const auto weight = [](double, double s) { return s * s * s; };
    return lab_frame_integral(state, bath.temperature, state.temperature, true, true, model, spec, weight) *
           (2.0 * gamma / pi);
}

IntensitySplit intensity(const ParticleState& state, const BathSpec& bath, const PolarizabilityModel& model,
                         const QuadratureSpec& spec)
{
    check_inputs(state, bath, model, spec);
    const double gamma = lorentz_factor(state.beta);
    const double prefactor = 2.0 * gamma / pi;
    const auto weight = [](double, double s) { return s * s; };
    const double t1 = state.temperature;
    const double t2 = bath.temperature;

    IntensitySplit out;
    out.net = lab_frame_integral(state, t2, t1, true, true, model, spec, weight) * (-prefactor);
    // emitted: +n(w_b, T1); the helper subtracts the rest term, hence the sign flip
    out.emitted = lab_frame_integral(state, t2, t1, false, true, model, spec, weight) * (-prefactor);
    out.absorbed = lab_frame_integral(state, t2, t1, true, false, model, spec, weight) * prefactor;
    return out;
}

Estimate drag_combination(const ParticleState& state, const BathSpec& bath, const PolarizabilityModel& model,
                          const QuadratureSpec& spec)
{
    check_inputs(state, bath, model, spec);
    const double beta = state.beta;
    const double gamma = lorentz_factor(beta);
    const auto weight = [beta](double x, double s) { return (x + beta) * s * s; };
    return lab_frame_integral(state, bath.temperature, 0.0, true, false, model, spec, weight) *
           (-2.0 * gamma * gamma * gamma / pi);
}

Estimate force_rest_frame_alt(const ParticleState& state, const BathSpec& bath, const PolarizabilityModel& model,
                              const QuadratureSpec& spec)
{
    return drag_combination(state, bath, model, spec);
}

Estimate force_rest_frame(const ParticleState& state, const BathSpec& bath, const PolarizabilityModel& model,
                          const QuadratureSpec& spec)
{
    check_inputs(state, bath, model, spec);
    const double beta = state.beta;
    const double t2 = bath.temperature;
    if (beta == 0.0 || t2 == 0.0 || is_null(model))
        return {};
    const double gamma = lorentz_factor(beta);
    // coth - 1 = 2 n: the dropped constant integrates to zero against x
    const auto kernel = [&](double omega, double x) {
        const double a = alpha_im(model, omega);
        if (a == 0.0)
            return 0.0;
        return pow4(omega) * x * a * occupation(gamma * omega * (1.0 + beta * x), t2);
    };
    OmegaXDomain domain;
    domain.beta = beta;
    domain.omega_max = omega_cutoff(t2, 0.0, beta, spec.u_max);
    domain.lab_breaks = breakpoints(model);
    return integrate_omega_x(kernel, domain, spec) * (2.0 / pi);
}

Estimate force_rest_frame_nr(double beta, const BathSpec& bath, const PolarizabilityModel& model,
                             const QuadratureSpec& spec)
{
    if (!(beta > 0.0 && beta <= 0.1))
        throw InputError("force_rest_frame_nr: beta must lie in (0, 0.1]");
    bath.validate();
    validate(model);
    spec.validate();
    const double t2 = bath.temperature;
    if (!(t2 > 0.0))
        throw InputError("force_rest_frame_nr: bath temperature must be > 0");
    if (is_null(model))
        return {};
    // 1/sinh^2(y) = 4 n (1 + n) with n = 1/expm1(2y)
    const auto integrand = [&](double omega) {
        const double n = 1.0 / std::expm1(omega / t2);
        const double w2 = omega * omega;
        return w2 * w2 * omega * alpha_im(model, omega) * 4.0 * n * (1.0 + n);
    };
    const auto breaks = breakpoints(model);
    return integrate_1d(integrand, 0.0, spec.u_max * t2, spec, breaks) * (-beta / (3.0 * pi * t2));
}

ObservableBundle evaluate_all(const ParticleState& state, const BathSpec& bath, const PolarizabilityModel& model,
                              const QuadratureSpec& spec)
{
    ObservableBundle out;
    out.force_lab = force_lab(state, bath, model, spec);
    out.heating_rate = heating_rate(state, bath, model, spec);
    out.intensity = intensity(state, bath, model, spec);
    out.force_rest_frame = force_rest_frame(state, bath, model, spec);
    out.max_rest_frequency = max_rest_frequency(state, bath, spec);
    return out;
}

double max_rest_frequency(const ParticleState& state, const BathSpec& bath, const QuadratureSpec& spec)
{
    if (state.temperature == 0.0 && bath.temperature == 0.0)
        return 0.0;
    return lorentz_factor(state.beta) * (1.0 + state.beta) *
           omega_cutoff(state.temperature, bath.temperature, state.beta, spec.u_max);
}

} // namespace bbdrag
