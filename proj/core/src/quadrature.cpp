#include "bbdrag/quadrature.hpp"

#include "bbdrag/error.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

namespace bbdrag {

namespace {

GaussLegendreRule build_gauss_legendre(std::size_t order)
{
    // Newton iteration on P_n from the Tricomi initial guess.
    const std::size_t n = order;
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = pk;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0;
        double p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
            p0 = p1;
            p1 = pk;
        }
        dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1)
        rule.nodes[n / 2] = 0.0;
    return rule;
}

struct Panel {
    double a = 0.0;
    double b = 0.0;
    double value = 0.0;
    double error = 0.0;
    double roundoff = 0.0;
};

constexpr double epsilon = std::numeric_limits<double>::epsilon();

// QUADPACK qk21 error heuristics on the Boost node tables.
Panel gauss_kronrod_21(const std::function<IntegrandSample(double)>& f, double a, double b)
{
    using kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
    using gauss = boost::math::quadrature::gauss<double, 10>;
    const auto& xk = kronrod::abscissa();
    const auto& wk = kronrod::weights();
    const auto& wg = gauss::weights();

    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<double, 21> fv{};
    std::array<double, 21> mv{};
    const auto sample = [&](std::size_t j, double x) {
        const IntegrandSample s = f(x);
        fv[j] = s.value;
        mv[j] = s.magnitude;
    };
    sample(0, center);
    for (std::size_t i = 1; i < xk.size(); ++i) {
        sample(2 * i - 1, center - half * xk[i]);
        sample(2 * i, center + half * xk[i]);
    }

    double res_k = wk[0] * fv[0];
    double res_g = 0.0;
    double res_abs = wk[0] * mv[0];
    for (std::size_t i = 1; i < xk.size(); ++i) {
        const double pair = fv[2 * i - 1] + fv[2 * i];
        res_k += wk[i] * pair;
        res_abs += wk[i] * (mv[2 * i - 1] + mv[2 * i]);
        if (i % 2 == 1)
            res_g += wg[i / 2] * pair;
    }
    const double mean = 0.5 * res_k;
    double res_asc = wk[0] * std::abs(fv[0] - mean);
    for (std::size_t i = 1; i < xk.size(); ++i)
        res_asc += wk[i] * (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean));

    res_abs *= std::abs(half);
    res_asc *= std::abs(half);
    double err = std::abs((res_k - res_g) * half);
    if (res_asc != 0.0 && err != 0.0)
        err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));

    Panel p;
    p.a = a;
    p.b = b;
    p.value = res_k * half;
    p.roundoff = 50.0 * epsilon * res_abs;
    p.error = std::max(err, p.roundoff);
    return p;
}

} // namespace

const GaussLegendreRule& gauss_legendre(std::size_t order)
{
    static std::mutex mutex;
    static std::map<std::size_t, std::unique_ptr<GaussLegendreRule>> cache;
    if (order < 1)
        throw InputError("gauss_legendre: order must be >= 1");
    std::lock_guard lock(mutex);
    auto& slot = cache[order];
    if (!slot)
        slot = std::make_unique<GaussLegendreRule>(build_gauss_legendre(order));
    return *slot;
}

Estimate integrate_1d(const std::function<double(double)>& f, double a, double b, const QuadratureSpec& spec,
                      std::span<const double> breakpoints)
{
    return integrate_1d_sampled(
        [&](double x) {
            const double y = f(x);
            return IntegrandSample{y, std::abs(y)};
        },
        a, b, spec, breakpoints);
}

Estimate integrate_1d_sampled(const std::function<IntegrandSample(double)>& f, double a, double b,
                              const QuadratureSpec& spec, std::span<const double> breakpoints)
{
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw InputError("integrate_1d: need finite a < b");

    std::vector<double> edges{a};
    {
        std::vector<double> inside;
        for (double p : breakpoints) {
            if (p > a && p < b)
                inside.push_back(p);
        }
        std::sort(inside.begin(), inside.end());
        for (double p : inside) {
            if (p - edges.back() > 1e-13 * (b - a))
                edges.push_back(p);
        }
        if (b - edges.back() <= 1e-13 * (b - a))
            edges.pop_back();
        edges.push_back(b);
    }

    std::size_t evaluations = 0;
    const auto counted = [&](double x) {
        ++evaluations;
        const IntegrandSample y = f(x);
        if (!std::isfinite(y.value)) {
            std::ostringstream msg;
            msg << "integrate_1d: non-finite integrand at x = " << x;
            throw NumericalError(msg.str());
        }
        return y;
    };
    const std::function<IntegrandSample(double)> g = counted;

    // panels stay sorted by left edge so the final sum has a fixed order
    std::vector<Panel> panels;
    panels.reserve(std::max<std::size_t>(spec.max_subdivisions, edges.size()) + 1);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        panels.push_back(gauss_kronrod_21(g, edges[i], edges[i + 1]));

    for (;;) {
        double value = 0.0;
        double error = 0.0;
        for (const auto& p : panels) {
            value += p.value;
            error += p.error;
        }
        const double target = std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i) {
            if (panels[i].error > panels[worst].error)
                worst = i;
        }
        const Panel& w = panels[worst];
        const bool roundoff_limited =
            w.error <= w.roundoff || (w.b - w.a) <= 64.0 * epsilon * std::max(std::abs(w.a), std::abs(w.b));
        if (error <= target || roundoff_limited)
            return Estimate{value, error, evaluations, panels.size()};

        if (panels.size() >= spec.max_subdivisions) {
            std::ostringstream msg;
            msg << "integrate_1d: no convergence on [" << a << ", " << b << "] after " << panels.size()
                << " panels (error " << error << " > target " << target << ")";
            throw NumericalError(msg.str());
        }
        const double mid = 0.5 * (w.a + w.b);
        const double left_a = w.a;
        const double right_b = w.b;
        panels[worst] = gauss_kronrod_21(g, left_a, mid);
        panels.insert(panels.begin() + static_cast<std::ptrdiff_t>(worst) + 1, gauss_kronrod_21(g, mid, right_b));
    }
}

namespace detail {

void cosine_edges(double omega, double gamma, double beta, std::span<const double> rest_breaks,
                  std::vector<double>& edges)
{
    edges.clear();
    edges.push_back(-1.0);
    if (beta > 0.0) {
        const double scale = gamma * omega;
        for (double wb : rest_breaks) {
            const double x = (wb / scale - 1.0) / beta;
            if (x > -1.0 + 1e-14 && x < 1.0 - 1e-14)
                edges.push_back(x);
        }
        std::sort(edges.begin() + 1, edges.end());
    }
    edges.push_back(1.0);
}

std::vector<double> outer_breakpoints(const OmegaXDomain& domain, double gamma)
{
    std::vector<double> out;
    const auto keep = [&](double w) {
        if (w > 0.0 && w < domain.omega_max)
            out.push_back(w);
    };
    for (double w : domain.lab_breaks)
        keep(w);
    for (double wb : domain.rest_breaks) {
        if (domain.beta > 0.0) {
            keep(wb / (gamma * (1.0 + domain.beta)));
            keep(wb / (gamma * (1.0 - domain.beta)));
        } else {
            keep(wb);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

} // namespace bbdrag
