// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only if
// every criterion passes.

#include "../support/engine_eval.hpp"

#include "bbdrag/dynamics.hpp"
#include "bbdrag/frame_consistency.hpp"
#include "bbdrag/oracle.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace bbdrag;

namespace {

const QuadratureSpec spec;

const std::vector<PolarizabilityModel>& models()
{
    static const std::vector<PolarizabilityModel> m = {
        LorentzOscillator{1.0, 1.0, 0.5}, DrudeSphere{1.0, 3.0, 1.0}, TopHat{1.0, 0.5, 1.5}, Ohmic{1.0, 5.0}};
    return m;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

struct Outcome {
    bool passed = true;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// 1
Outcome j_cancellation()
{
    double worst = 0.0;
    double worst_reduced = 0.0;
    for (double beta : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (double t1 : {0.5, 1.0, 5.0}) {
            for (const auto& m : models()) {
                const auto j = appendix_J({beta, 1.0, t1}, m, spec);
                worst = std::max(worst, j.residual / std::abs(j.j1.value));
                worst_reduced = std::max(worst_reduced, rel(j.j1.value, j.j1_reduced.value));
            }
        }
    }
    return {worst <= 1e-7 && worst_reduced <= 1e-7,
            fmt("max |J1-J2|/|J1| = %.2e, max J1 vs reduced form = %.2e (limit 1e-7)", worst, worst_reduced)};
}

template <class Residual>
Outcome identity_grid(Residual residual)
{
    std::size_t points = 0;
    std::size_t failures = 0;
    double worst_ratio = 0.0;
    for (double beta : {0.0, 0.1, 0.3, 0.6, 0.9}) {
        for (double t1 : {0.0, 0.1, 1.0, 10.0}) {
            for (double t2 : {0.0, 0.1, 1.0, 10.0}) {
                for (const auto& m : models()) {
                    const IdentityCheck c = residual(ParticleState{beta, 1.0, t1}, BathSpec{t2}, m, spec);
                    ++points;
                    if (!c.passed) {
                        ++failures;
                        std::printf("  failed at beta=%g T1=%g T2=%g %s: residual %.3e, error %.3e\n", beta, t1, t2,
                                    std::string(model_name(m)).c_str(), c.residual, c.combined_error);
                    }
                    const double allowed = std::max(10.0 * c.combined_error, identity_abs_floor);
                    worst_ratio = std::max(worst_ratio, c.residual / allowed);
                }
            }
        }
    }
    return {failures == 0, fmt("%zu points, %zu failures, worst residual / allowed = %.3f", points, failures,
                               worst_ratio)};
}

// 4
Outcome drag_temperature_independence()
{
    double worst = 0.0;
    const double beta = 0.5;
    const double g2 = 1.0 / (1.0 - beta * beta);
    for (const auto& m : models()) {
        const double ref = drag_combination({beta, 1.0, 0.0}, {1.0}, m, spec).value;
        for (double t1 : {0.0, 0.1, 1.0, 10.0}) {
            const ParticleState s{beta, 1.0, t1};
            worst = std::max(worst, rel(drag_combination(s, {1.0}, m, spec).value, ref));
            const double composed = force_lab(s, {1.0}, m, spec).value - g2 * beta * heating_rate(s, {1.0}, m, spec).value;
            worst = std::max(worst, rel(composed, ref));
        }
    }
    return {worst <= 1e-7, fmt("max relative change over T1 in {0, 0.1, 1, 10} = %.2e (limit 1e-7)", worst)};
}

// 5
Outcome dual_form()
{
    double worst = 0.0;
    for (double beta : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (double t2 : {0.1, 1.0, 10.0}) {
            for (const auto& m : models()) {
                const ParticleState s{beta, 1.0, 0.0};
                worst = std::max(worst, rel(force_rest_frame(s, {t2}, m, spec).value,
                                            force_rest_frame_alt(s, {t2}, m, spec).value));
            }
        }
    }
    return {worst <= 1e-6, fmt("max relative difference for beta <= 0.9 = %.2e (limit 1e-6)", worst)};
}

// 6
Outcome closed_forms()
{
    const double pi = std::numbers::pi;
    const Ohmic ohmic{1.0, std::nullopt};
    const double emitted = intensity({0.0, 1.0, 1.0}, {0.0}, ohmic, spec).net.value;
    const double ea = rel(emitted, 32.0 * std::pow(pi, 5) / 63.0);

    double eb = 0.0;
    for (double beta : {1e-3, 1e-2, 0.1})
        for (double t2 : {0.5, 1.0, 2.0})
            eb = std::max(eb, rel(force_rest_frame_nr(beta, {t2}, ohmic, spec).value,
                                  -(64.0 * std::pow(pi, 5) / 63.0) * beta * std::pow(t2, 6)));

    double ec = 0.0;
    for (int k = 0; k <= 9; ++k) {
        const double beta = 0.1 * k;
        const double g2 = 1.0 / (1.0 - beta * beta);
        const auto inner = inner_closed_forms(beta);
        ec = std::max(ec, beta == 0.0 ? std::abs(inner.odd.value) : rel(inner.odd.value, -2.0 * beta * g2 * g2));
        ec = std::max(ec, rel(inner.even.value, 2.0 * g2));
    }
    return {ea <= 1e-6 && eb <= 1e-6 && ec <= 1e-10,
            fmt("emitted power %.2e, linear-limit force %.2e (limits 1e-6); inner integrals %.2e (limit 1e-10)", ea,
                eb, ec)};
}

// 7
Outcome nonrelativistic_limit()
{
    const Ohmic ohmic{1.0, std::nullopt};
    std::vector<double> deviation;
    double ratio_at_smallest = 0.0;
    for (double beta : {1e-2, 3e-3, 1e-3}) {
        const double ratio = force_rest_frame({beta, 1.0, 0.0}, {1.0}, ohmic, spec).value /
                             force_rest_frame_nr(beta, {1.0}, ohmic, spec).value;
        deviation.push_back(std::abs(ratio - 1.0));
        ratio_at_smallest = ratio;
    }
    const bool decreasing = deviation[1] < deviation[0] && deviation[2] < deviation[1];
    const bool within = ratio_at_smallest >= 0.99 && ratio_at_smallest <= 1.01;
    return {decreasing && within, fmt("ratio at beta=1e-3 is %.8f; |ratio-1| = %.2e, %.2e, %.2e at 1e-2, 3e-3, 1e-3",
                                      ratio_at_smallest, deviation[0], deviation[1], deviation[2])};
}

// 8
Outcome oracle_equivalence()
{
    const auto records = oracle::read_golden_file(std::string(BBDRAG_SOURCE_DIR) + "/golden/cases.jsonl");
    double worst_engine = 0.0;
    double worst_gate = 0.0;
    double worst_frozen = 0.0;
    for (const auto& r : records) {
        const auto fresh = oracle::mint_golden(r.golden_case, r.grid.n_omega, r.grid.n_x);
        worst_gate = std::max(worst_gate, fresh.relative_change);
        worst_frozen = std::max(worst_frozen, rel(fresh.value, r.value));
        const double engine = testing::engine_value(r.golden_case).value;
        worst_engine = std::max(worst_engine, rel(engine, fresh.value));
    }
    const bool ok = records.size() >= 6 && worst_engine <= 1e-6 && worst_gate <= oracle::convergence_gate &&
                    worst_frozen <= 1e-12;
    return {ok, fmt("%zu cases; engine vs oracle %.2e (limit 1e-6); grid doubling %.2e (gate 1e-6); "
                    "recomputed vs committed %.2e",
                    records.size(), worst_engine, worst_gate, worst_frozen)};
}

// 9
Outcome dynamics_bookkeeping()
{
    const ParticleState s0{0.5, 1e3, 2.0};
    const BathSpec bath{1.0};
    const LorentzOscillator model{1.0, 1.0, 0.5};
    const MaterialThermo thermo{1e-2};
    const double rate = derivatives(s0, bath, model, thermo, spec).beta;
    EvolveConfig cfg;
    cfg.t_end = 0.01 * s0.beta / std::abs(rate);
    cfg.max_step = cfg.t_end / 2500.0;
    const Trajectory tr = evolve(s0, bath, model, thermo, cfg, spec);

    const auto energy = [](const TrajectoryPoint& p) { return p.mass / std::sqrt(1.0 - p.beta * p.beta); };
    const auto& first = tr.points.front();
    const auto& last = tr.points.back();
    const double radiated = last.radiated_energy;
    const double imbalance = std::abs(energy(last) - energy(first) + radiated) / std::abs(radiated);
    bool decreasing = true;
    for (std::size_t i = 1; i < tr.points.size(); ++i)
        decreasing = decreasing && tr.points[i].beta < tr.points[i - 1].beta;
    const double drop = 1.0 - last.beta / first.beta;
    return {imbalance <= 1e-6 && decreasing && drop >= 0.01,
            fmt("%zu steps, beta dropped %.3f%%, |d(gamma m) + int I dt| / int I dt = %.2e (limit 1e-6), "
                "beta strictly decreasing: %s",
                tr.accepted_steps, 100.0 * drop, imbalance, decreasing ? "yes" : "no")};
}

// least-squares slope of y against t
double slope(const std::vector<double>& t, const std::vector<double>& y)
{
    const double n = static_cast<double>(t.size());
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        st += t[i];
        sy += y[i];
        stt += t[i] * t[i];
        sty += t[i] * y[i];
    }
    return (n * sty - st * sy) / (n * stt - st * st);
}

// 10
Outcome timescale_separation()
{
    const auto ref = reference_parameter_set();
    const double t_star = equilibrium_temperature(ref.state.beta, ref.bath, ref.model, spec);

    // heating kinetics at fixed velocity
    const auto d0 = derivatives(ref.state, ref.bath, ref.model, ref.thermo, spec);
    const double t_guess = std::abs(ref.state.temperature - t_star) / std::abs(d0.temperature);
    EvolveConfig heat;
    heat.mode = EvolveMode::fixed_velocity;
    heat.t_end = 20.0 * t_guess;
    heat.initial_step = 1e-4 * t_guess;
    const Trajectory th = evolve(ref.state, ref.bath, ref.model, ref.thermo, heat, spec);
    const double gap0 = std::abs(ref.state.temperature - t_star);
    std::vector<double> tt, lt;
    for (const auto& p : th.points) {
        const double gap = std::abs(p.temperature - t_star);
        if (gap < 0.1 * gap0 && gap > 1e-6 * gap0) {
            tt.push_back(p.t);
            lt.push_back(std::log(gap));
        }
    }
    if (tt.size() < 3)
        return {false, fmt("temperature relaxation not resolved (%zu usable points)", tt.size())};
    const double tau_t = -1.0 / slope(tt, lt);

    // deceleration with the temperature slaved to T1*
    ParticleState slaved = ref.state;
    slaved.temperature = t_star;
    const auto dq = derivatives(slaved, ref.bath, ref.model, ref.thermo, spec, EvolveMode::quasi_static_temperature);
    EvolveConfig drag;
    drag.mode = EvolveMode::quasi_static_temperature;
    drag.t_end = 0.01 * slaved.beta / std::abs(dq.beta);
    drag.initial_step = 1e-3 * drag.t_end;
    const Trajectory tb = evolve(slaved, ref.bath, ref.model, ref.thermo, drag, spec);
    std::vector<double> tv, lb;
    for (const auto& p : tb.points) {
        tv.push_back(p.t);
        lb.push_back(std::log(p.beta));
    }
    const double tau_beta = -1.0 / slope(tv, lb);
    const double ratio = tau_beta / tau_t;
    return {tau_t > 0.0 && ratio >= 10.0,
            fmt("tau(T1 - T1*) = %.4g s, tau(beta) = %.4g s, ratio %.3g (limit >= 10)",
                UnitSystem().from_internal(tau_t, QuantityKind::time),
                UnitSystem().from_internal(tau_beta, QuantityKind::time), ratio)};
}

// 11
Outcome determinism()
{
    const auto dir = std::filesystem::temp_directory_path();
    const auto verify_cfg = dir / "bbdrag_acceptance_verify.json";
    const auto evolve_cfg = dir / "bbdrag_acceptance_evolve.json";
    std::ofstream(verify_cfg) << R"({"units": {"input": "internal"}, "particle": {"beta": 0.6, "T1": 2},
        "bath": {"T2": 1}, "polarizability": {"type": "drude", "radius": 1, "omega_p": 3, "nu": 1}})";
    std::ofstream(evolve_cfg) << R"({"units": {"input": "internal"},
        "particle": {"beta": 0.5, "T1": 2, "mass": 10, "specific_heat": 0.01}, "bath": {"T2": 1},
        "evolve": {"t_end": 0.5}})";

    std::vector<std::string> outputs;
    bool exits_ok = true;
    bool identical = true;
    for (const std::string& cmd : std::vector<std::string>{"verify --config " + verify_cfg.string(), "evolve --config " + evolve_cfg.string(),
                                  "evolve --format json --config " + evolve_cfg.string(),
                                  "sweep --units internal --beta 0:0.9:4 --t1 0:2:3 --observable heat"}) {
        std::string first;
        for (const char* threads : {"BBDRAG_THREADS=1", "BBDRAG_THREADS=4", "BBDRAG_THREADS=1", "BBDRAG_THREADS=2"}) {
            const auto r = testing::run_cli(cmd, threads);
            exits_ok = exits_ok && r.exit_code == 0;
            if (first.empty())
                first = r.out;
            identical = identical && !r.out.empty() && r.out == first;
        }
    }
    std::filesystem::remove(verify_cfg);
    std::filesystem::remove(evolve_cfg);
    return {exits_ok && identical, fmt("verify, evolve (csv, json) and sweep under 1, 4, 1, 2 threads: %s",
                                       identical ? "byte-identical" : "outputs differ")};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 J1-J2 cancellation", j_cancellation},
        {"2 energy balance grid", [] { return identity_grid(energy_balance_residual); }},
        {"3 frame relation grid", [] { return identity_grid(frame_force_residual); }},
        {"4 drag independent of T1", drag_temperature_independence},
        {"5 dual-form rest-frame force", dual_form},
        {"6 closed forms", closed_forms},
        {"7 nonrelativistic limit", nonrelativistic_limit},
        {"8 oracle equivalence", oracle_equivalence},
        {"9 dynamics bookkeeping", dynamics_bookkeeping},
        {"10 timescale separation", timescale_separation},
        {"11 determinism", determinism},
    };

    int failures = 0;
    for (const auto& [name, run] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %s: %s [%.1f s]\n", o.passed ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += o.passed ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
