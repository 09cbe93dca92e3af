#include "bbdrag/kernels.hpp"

#include "bbdrag/error.hpp"

#include <algorithm>
#include <cmath>

namespace bbdrag {

void QuadratureSpec::validate() const
{
    if (!(rel_tol > 0.0) || !std::isfinite(rel_tol))
        throw InputError("quadrature.rel_tol must be > 0");
    if (!(abs_tol > 0.0) || !std::isfinite(abs_tol))
        throw InputError("quadrature.abs_tol must be > 0");
    if (!(u_max >= 10.0) || !std::isfinite(u_max))
        throw InputError("quadrature.u_max must be >= 10");
    if (inner_nodes < 8)
        throw InputError("quadrature.inner_nodes must be >= 8");
    if (max_subdivisions < 1)
        throw InputError("quadrature.max_subdivisions must be >= 1");
}

void check_speed(double beta)
{
    if (!(beta >= 0.0 && beta <= beta_max))
        throw InputError("beta must lie in [0, 1 - 1e-9]");
}

double lorentz_factor(double beta)
{
    check_speed(beta);
    return 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
}

double bose_occupation(double omega, double temperature)
{
    if (!(omega > 0.0))
        throw InputError("bose_occupation: omega must be > 0");
    if (!(temperature >= 0.0))
        throw InputError("bose_occupation: temperature must be >= 0");
    if (temperature == 0.0)
        return 0.0;
    // expm1 saturates to +inf past ~709.78, giving exactly 0
    return 1.0 / std::expm1(omega / temperature);
}

double coth_zero_point_subtracted(double y)
{
    if (!(y > 0.0))
        throw InputError("coth_zero_point_subtracted: y must be > 0");
    return 2.0 / std::expm1(2.0 * y);
}

double doppler_frequency(double omega, double x, double beta)
{
    if (!(x >= -1.0 && x <= 1.0))
        throw InputError("doppler_frequency: |x| must be <= 1");
    return lorentz_factor(beta) * omega * (1.0 + beta * x);
}

double omega_cutoff(double t1, double t2, double beta, double u_max)
{
    if (!(t1 >= 0.0) || !(t2 >= 0.0))
        throw InputError("omega_cutoff: temperatures must be >= 0");
    if (t1 == 0.0 && t2 == 0.0)
        throw InputError("omega_cutoff: both temperatures are zero");
    check_speed(beta);
    const double blue = std::sqrt((1.0 + beta) / (1.0 - beta));
    return u_max * std::max(t2, t1 * blue);
}

} // namespace bbdrag
