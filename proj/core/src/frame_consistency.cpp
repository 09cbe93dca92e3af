#include "bbdrag/frame_consistency.hpp"

#include "bbdrag/error.hpp"
#include "bbdrag/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

namespace bbdrag {

using std::numbers::pi;

void run_tasks(const std::vector<std::function<void()>>& tasks, unsigned threads)
{
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto work = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            try {
                tasks[i]();
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < workers; ++t)
        pool.emplace_back(work);
    work();
    pool.clear();
    if (failure)
        std::rethrow_exception(failure);
}

namespace {

double rss(std::initializer_list<double> errors)
{
    double s = 0.0;
    for (double e : errors)
        s += e * e;
    return std::sqrt(s);
}

IdentityCheck sign_check(std::string name, const Estimate& e)
{
    // non-positive within the error budget
    IdentityCheck c = make_check(std::move(name), e.value, 0.0, e.error, QuantityKind::force);
    c.residual = std::max(e.value, 0.0);
    c.passed = c.residual <= std::max(10.0 * c.combined_error, identity_abs_floor);
    return c;
}

} // namespace

IdentityCheck make_check(std::string name, double left, double right, double combined_error,
                         std::optional<QuantityKind> kind)
{
    IdentityCheck c;
    c.name = std::move(name);
    c.left = left;
    c.right = right;
    c.residual = std::abs(left - right);
    c.combined_error = combined_error;
    c.passed = c.residual <= std::max(10.0 * combined_error, identity_abs_floor);
    c.kind = kind;
    return c;
}

bool ConsistencyReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed; });
}

IdentityCheck energy_balance_residual(const ParticleState& state, const BathSpec& bath,
                                      const PolarizabilityModel& model, const QuadratureSpec& spec)
{
    const Estimate f = force_lab(state, bath, model, spec);
    const Estimate q = heating_rate(state, bath, model, spec);
    const IntensitySplit i = intensity(state, bath, model, spec);
    return make_check("energy_balance", i.net.value + q.value + f.value * state.beta, 0.0,
                      rss({i.net.error, q.error, state.beta * f.error}), QuantityKind::power);
}

IdentityCheck frame_force_residual(const ParticleState& state, const BathSpec& bath,
                                   const PolarizabilityModel& model, const QuadratureSpec& spec)
{
    const double g2b = lorentz_factor(state.beta) * lorentz_factor(state.beta) * state.beta;
    const Estimate rest = force_rest_frame(state, bath, model, spec);
    const Estimate f = force_lab(state, bath, model, spec);
    const Estimate q = heating_rate(state, bath, model, spec);
    return make_check("frame_force", rest.value, f.value - g2b * q.value, rss({rest.error, f.error, g2b * q.error}),
                      QuantityKind::force);
}

InnerIntegrals inner_closed_forms(double beta)
{
    check_speed(beta);
    QuadratureSpec tight;
    tight.rel_tol = 1e-14;
    tight.abs_tol = 1e-16;
    tight.max_subdivisions = 500;
    InnerIntegrals out;
    out.odd = integrate_1d(
        [beta](double x) {
            const double s = 1.0 + beta * x;
            return x / (s * s * s);
        },
        -1.0, 1.0, tight);
    out.even = integrate_1d(
        [beta](double x) {
            const double s = 1.0 + beta * x;
            return 1.0 / (s * s);
        },
        -1.0, 1.0, tight);
    return out;
}

AppendixTerms appendix_J(const ParticleState& state, const PolarizabilityModel& model, const QuadratureSpec& spec)
{
    state.validate();
    validate(model);
    spec.validate();
    AppendixTerms out;
    const double t1 = state.temperature;
    if (t1 == 0.0 || is_null(model))
        return out;

    const double beta = state.beta;
    const double gamma = lorentz_factor(beta);
    const auto breaks = breakpoints(model);

    const auto rest_occupation = [&](double omega, double x, double& s) {
        s = 1.0 + beta * x;
        const double wb = gamma * omega * s;
        const double a = alpha_im(model, wb);
        return a == 0.0 ? 0.0 : a / std::expm1(wb / t1);
    };
    const auto j1_kernel = [&](double omega, double x) {
        double s = 0.0;
        const double an = rest_occupation(omega, x, s);
        const double w2 = omega * omega;
        return w2 * w2 * x * s * s * an;
    };
    const auto j2_kernel = [&](double omega, double x) {
        double s = 0.0;
        const double an = rest_occupation(omega, x, s);
        const double w2 = omega * omega;
        return w2 * w2 * s * s * s * an;
    };
    out.j1 = integrate_omega_x(j1_kernel, t1, 0.0, beta, spec, breaks) * (-2.0 * gamma / pi);
    if (beta > 0.0)
        out.j2 = integrate_omega_x(j2_kernel, t1, 0.0, beta, spec, breaks) * (2.0 * gamma * gamma * gamma * beta / pi);

    const Estimate k = integrate_1d(
        [&](double w) {
            const double w2 = w * w;
            return w2 * w2 * alpha_im(model, w) / std::expm1(w / t1);
        },
        0.0, spec.u_max * t1, spec, breaks);
    const InnerIntegrals inner = inner_closed_forms(beta);
    const double g4 = gamma * gamma * gamma * gamma;
    out.j1_reduced = k * (-2.0 / (pi * g4) * inner.odd.value);
    out.j1_reduced.error += std::abs(2.0 / (pi * g4) * k.value) * inner.odd.error;
    out.j2_reduced = k * (2.0 * beta / (pi * gamma * gamma) * inner.even.value);
    out.j2_reduced.error += std::abs(2.0 * beta / (pi * gamma * gamma) * k.value) * inner.even.error;
    out.residual = std::abs(out.j1.value - out.j2.value);
    return out;
}

ConsistencyReport verify_all(const ParticleState& state, const BathSpec& bath, const PolarizabilityModel& model,
                             const QuadratureSpec& spec, unsigned threads)
{
    state.validate();
    bath.validate();
    validate(model);
    spec.validate();

    Estimate f, q, drag, rest;
    IntensitySplit split;
    AppendixTerms j;
    InnerIntegrals inner;
    run_tasks(
        {
            [&] { f = force_lab(state, bath, model, spec); },
            [&] { q = heating_rate(state, bath, model, spec); },
            [&] { split = intensity(state, bath, model, spec); },
            [&] { drag = drag_combination(state, bath, model, spec); },
            [&] { rest = force_rest_frame(state, bath, model, spec); },
            [&] { j = appendix_J(state, model, spec); },
            [&] { inner = inner_closed_forms(state.beta); },
        },
        threads);

    const double beta = state.beta;
    const double gamma = lorentz_factor(beta);
    const double g2b = gamma * gamma * beta;
    const double composite = f.value - g2b * q.value;
    const double composite_err = rss({f.error, g2b * q.error});

    ConsistencyReport report;
    auto& c = report.checks;
    c.push_back(make_check("energy_balance", split.net.value + q.value + beta * f.value, 0.0,
                           rss({split.net.error, q.error, beta * f.error}), QuantityKind::power));
    c.push_back(make_check("intensity_split", split.net.value, split.emitted.value - split.absorbed.value,
                           rss({split.net.error, split.emitted.error, split.absorbed.error}), QuantityKind::power));
    c.push_back(make_check("frame_force", rest.value, composite, rss({rest.error, composite_err}),
                           QuantityKind::force));
    c.push_back(make_check("drag_temperature_independence", drag.value, composite, rss({drag.error, composite_err}),
                           QuantityKind::force));
    c.push_back(make_check("rest_force_dual_form", rest.value, drag.value, rss({rest.error, drag.error}),
                           QuantityKind::force));
    c.push_back(make_check("j1_j2_cancellation", j.j1.value, j.j2.value, rss({j.j1.error, j.j2.error}),
                           QuantityKind::force));
    c.push_back(make_check("j1_reduced_form", j.j1.value, j.j1_reduced.value,
                           rss({j.j1.error, j.j1_reduced.error}), QuantityKind::force));
    c.push_back(make_check("j2_reduced_form", j.j2.value, j.j2_reduced.value,
                           rss({j.j2.error, j.j2_reduced.error}), QuantityKind::force));
    c.push_back(make_check("inner_integral_odd", inner.odd.value, -2.0 * beta * gamma * gamma * gamma * gamma,
                           inner.odd.error, std::nullopt));
    c.push_back(make_check("inner_integral_even", inner.even.value, 2.0 * gamma * gamma, inner.even.error,
                           std::nullopt));
    c.push_back(sign_check("drag_sign", drag));
    c.push_back(sign_check("rest_force_sign", rest));
    return report;
}

} // namespace bbdrag
