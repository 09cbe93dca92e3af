#pragma once

#include "bbdrag/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace bbdrag {

/// Quadrature result with its error estimate and work counters.
struct Estimate {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
    std::size_t panels = 0;

    Estimate& operator*=(double factor) noexcept
    {
        value *= factor;
        error *= factor < 0.0 ? -factor : factor;
        return *this;
    }
};

inline Estimate operator*(Estimate e, double factor) noexcept { return e *= factor; }
inline Estimate operator*(double factor, Estimate e) noexcept { return e *= factor; }

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached rule of the given order; safe to call concurrently.
const GaussLegendreRule& gauss_legendre(std::size_t order);

/// Globally adaptive 21-point Gauss-Kronrod integration of f over [a, b].
/// Panels start split at `breakpoints` inside (a, b). Converges when the summed
/// error estimate is below max(abs_tol, rel_tol |value|) or is limited by
/// roundoff; throws NumericalError once max_subdivisions panels are in use.
Estimate integrate_1d(const std::function<double(double)>& f, double a, double b,
                      const QuadratureSpec& spec, std::span<const double> breakpoints = {});

/// Integrand value plus the absolute scale of the terms that produced it,
/// which sets the roundoff floor of the adaptive driver.
struct IntegrandSample {
    double value = 0.0;
    double magnitude = 0.0;
};

Estimate integrate_1d_sampled(const std::function<IntegrandSample(double)>& f, double a, double b,
                              const QuadratureSpec& spec, std::span<const double> breakpoints = {});

/// Integration domain (0, omega_max] x [-1, 1] for Doppler-kernel integrals.
/// `rest_breaks` are rest-frame frequencies w_b at which the kernel is not
/// smooth in gamma*omega*(1+beta x); `lab_breaks` are lab frequencies at which
/// it is not smooth in omega.
struct OmegaXDomain {
    double beta = 0.0;
    double omega_max = 0.0;
    std::vector<double> rest_breaks;
    std::vector<double> lab_breaks;
};

namespace detail {

/// Ascending x edges -1 = e0 < ... < en = 1 splitting [-1, 1] where
/// gamma*omega*(1+beta x) crosses a rest break.
void cosine_edges(double omega, double gamma, double beta, std::span<const double> rest_breaks,
                  std::vector<double>& edges);

/// Sorted lab-frequency breakpoints inside (0, omega_max), including the
/// images w_b / (gamma (1 -+ beta)) of every rest break.
std::vector<double> outer_breakpoints(const OmegaXDomain& domain, double gamma);

} // namespace detail

/// Nested quadrature of kernel(omega, x): adaptive Gauss-Kronrod over omega,
/// fixed-order Gauss-Legendre over each x sub-interval.
template <class Kernel>
Estimate integrate_omega_x(Kernel&& kernel, const OmegaXDomain& domain, const QuadratureSpec& spec)
{
    spec.validate();
    if (!(domain.omega_max > 0.0))
        return {};

    const auto& rule = gauss_legendre(spec.inner_nodes);
    const double gamma = lorentz_factor(domain.beta);
    std::vector<double> edges;
    std::size_t kernel_calls = 0;

    const auto inner = [&](double omega) {
        detail::cosine_edges(omega, gamma, domain.beta, domain.rest_breaks, edges);
        double sum = 0.0;
        double magnitude = 0.0;
        for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
            const double half = 0.5 * (edges[s + 1] - edges[s]);
            const double mid = 0.5 * (edges[s + 1] + edges[s]);
            double part = 0.0;
            double part_abs = 0.0;
            for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
                const double term = rule.weights[k] * kernel(omega, mid + half * rule.nodes[k]);
                part += term;
                part_abs += std::abs(term);
            }
            sum += half * part;
            magnitude += half * part_abs;
        }
        kernel_calls += (edges.size() - 1) * rule.nodes.size();
        return IntegrandSample{sum, magnitude};
    };

    const auto outer_breaks = detail::outer_breakpoints(domain, gamma);
    Estimate result = integrate_1d_sampled(inner, 0.0, domain.omega_max, spec, outer_breaks);
    result.evaluations = kernel_calls;
    return result;
}

/// Same, with omega_max = omega_cutoff(t_rest, t_lab, beta, spec.u_max).
/// Returns zero when both temperatures vanish.
template <class Kernel>
Estimate integrate_omega_x(Kernel&& kernel, double t_rest, double t_lab, double beta,
                           const QuadratureSpec& spec, std::vector<double> rest_breaks = {})
{
    if (t_rest == 0.0 && t_lab == 0.0)
        return {};
    OmegaXDomain domain;
    domain.beta = beta;
    domain.omega_max = omega_cutoff(t_rest, t_lab, beta, spec.u_max);
    domain.rest_breaks = std::move(rest_breaks);
    return integrate_omega_x(std::forward<Kernel>(kernel), domain, spec);
}

} // namespace bbdrag
