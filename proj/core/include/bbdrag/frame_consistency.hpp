#pragma once

#include "bbdrag/observables.hpp"
#include "bbdrag/units.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bbdrag {

/// Residuals below this (internal units) always pass.
inline constexpr double identity_abs_floor = 1e-12;

/// One identity left == right, judged against the quadrature error budget.
struct IdentityCheck {
    std::string name;
    double left = 0.0;
    double right = 0.0;
    double residual = 0.0;
    double combined_error = 0.0;  // root-sum-square of the constituent estimates
    bool passed = false;
    std::optional<QuantityKind> kind;  // physical kind of left/right, if dimensional
};

/// passed = residual <= max(10 * combined_error, identity_abs_floor)
IdentityCheck make_check(std::string name, double left, double right, double combined_error,
                         std::optional<QuantityKind> kind);

struct ConsistencyReport {
    std::vector<IdentityCheck> checks;

    bool passed() const;
};

/// I + dQ/dt + F_x beta == 0 from three independent quadratures.
IdentityCheck energy_balance_residual(const ParticleState& state, const BathSpec& bath,
                                      const PolarizabilityModel& model, const QuadratureSpec& spec);

/// F'_x == F_x - gamma^2 beta dQ/dt with F'_x from the rest-frame integral.
IdentityCheck frame_force_residual(const ParticleState& state, const BathSpec& bath,
                                   const PolarizabilityModel& model, const QuadratureSpec& spec);

/// The particle-temperature terms of F_x - gamma^2 beta dQ/dt, each by direct
/// double quadrature, written so that the combination equals -J1 + J2:
///   J1 = -(2 gamma/pi)       Int dw w^4 Int dx x (1+bx)^2 a''(w_b) n(w_b, T1)
///   J2 =  (2 gamma^3 beta/pi) Int dw w^4 Int dx (1+bx)^3 a''(w_b) n(w_b, T1)
/// The reduced forms substitute w' = w_b and use the closed inner integrals:
///   J1 = -(2/(pi gamma^4)) * (quadrature of Int x/(1+bx)^3) * K
///   J2 =  (2 beta/(pi gamma^2)) * (quadrature of Int 1/(1+bx)^2) * K
/// with K = Int dw' w'^4 a''(w') n(w', T1).
struct AppendixTerms {
    Estimate j1;
    Estimate j2;
    Estimate j1_reduced;
    Estimate j2_reduced;
    double residual = 0.0;  // |J1 - J2|
};

AppendixTerms appendix_J(const ParticleState& state, const PolarizabilityModel& model, const QuadratureSpec& spec);

/// Quadratures of Int_{-1}^{1} x (1+bx)^-3 dx and Int_{-1}^{1} (1+bx)^-2 dx.
struct InnerIntegrals {
    Estimate odd;   // closed form -2 beta gamma^4
    Estimate even;  // closed form 2 gamma^2
};

InnerIntegrals inner_closed_forms(double beta);

/// Runs every identity for one parameter point. Checks may be evaluated on up
/// to `threads` threads; the report order and content do not depend on it.
ConsistencyReport verify_all(const ParticleState& state, const BathSpec& bath, const PolarizabilityModel& model,
                             const QuadratureSpec& spec, unsigned threads = 1);

} // namespace bbdrag
