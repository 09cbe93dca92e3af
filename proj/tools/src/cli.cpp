#include "bbdrag/cli/cli.hpp"

#include "bbdrag/cli/config.hpp"
#include "bbdrag/cli/output.hpp"
#include "bbdrag/error.hpp"
#include "bbdrag/frame_consistency.hpp"
#include "bbdrag/oracle.hpp"
#include "bbdrag/parallel.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <thread>

namespace bbdrag::cli {

namespace {

using K = QuantityKind;

struct Options {
    std::string config;
    std::string units;
    std::string beta;
    std::string t1;
    std::string t2;
    std::string mass;
    std::string model;
    std::string format;
    std::string output;

    // evolve
    std::string t_end;
    std::string mode;
    std::size_t stride = 0;

    // sweep
    std::string observable = "force";

    // mint-golden
    std::size_t n_omega = 2048;
    std::size_t n_x = 1024;
};

void warn(const std::vector<std::string>& warnings)
{
    for (const auto& w : warnings)
        std::cerr << "bbdrag: warning: " << w << '\n';
}

double single_value(const std::string& text, const std::string& option)
{
    const auto values = parse_range(text, option);
    if (values.size() != 1)
        throw InputError(option + ": a range is only accepted by the sweep subcommand");
    return values.front();
}

RunConfig build_config(const Options& o)
{
    std::optional<InputUnits> units;
    if (!o.units.empty())
        units = parse_input_units(o.units);
    RunConfig cfg = o.config.empty() ? default_config(units) : load_config(o.config, units);

    if (!o.beta.empty())
        cfg.particle.beta = single_value(o.beta, "--beta");
    if (!o.t1.empty())
        cfg.particle.temperature = to_internal(cfg, single_value(o.t1, "--t1"), K::temperature);
    if (!o.t2.empty())
        cfg.bath.temperature = to_internal(cfg, single_value(o.t2, "--t2"), K::temperature);
    if (!o.mass.empty())
        cfg.particle.mass = to_internal(cfg, single_value(o.mass, "--mass"), K::mass);
    if (!o.model.empty())
        cfg.model = parse_model(cfg, o.model);
    if (!o.format.empty())
        cfg.format = parse_output_format(o.format);
    if (!o.output.empty())
        cfg.target = o.output;
    if (!o.t_end.empty())
        cfg.evolve.t_end = to_internal(cfg, single_value(o.t_end, "--t-end"), K::time);
    if (!o.mode.empty())
        cfg.evolve.mode = parse_evolve_mode(o.mode);
    if (o.stride > 0)
        cfg.evolve.output_stride = o.stride;
    revalidate(cfg);
    warn(cfg.warnings);
    return cfg;
}

void emit(const Table& table, const RunConfig& cfg, OutputFormat fallback)
{
    write_text(render(table, cfg.format.value_or(fallback), cfg.units), cfg.target);
}

std::vector<Column> state_columns()
{
    return {{"beta", std::nullopt}, {"T1", K::temperature}, {"T2", K::temperature}};
}

std::vector<Cell> state_cells(const RunConfig& cfg)
{
    return {cfg.particle.beta, cfg.particle.temperature, cfg.bath.temperature};
}

int cmd_single(const Options& o, const std::string& name)
{
    const RunConfig cfg = build_config(o);
    Table t;
    t.columns = state_columns();
    auto row = state_cells(cfg);
    const auto add = [&](const std::string& col, K kind, const Estimate& e) {
        t.columns.push_back({col, kind});
        t.columns.push_back({col + "_error", kind});
        row.push_back(e.value);
        row.push_back(e.error);
    };

    const auto& p = cfg.particle;
    if (name == "force") {
        add("F_x", K::force, force_lab(p, cfg.bath, cfg.model, cfg.quadrature));
    } else if (name == "heat") {
        add("Qdot", K::power, heating_rate(p, cfg.bath, cfg.model, cfg.quadrature));
    } else if (name == "intensity") {
        const auto split = intensity(p, cfg.bath, cfg.model, cfg.quadrature);
        add("I", K::power, split.net);
        add("I1", K::power, split.emitted);
        add("I2", K::power, split.absorbed);
    } else if (name == "restframe-force") {
        add("F_rest", K::force, force_rest_frame(p, cfg.bath, cfg.model, cfg.quadrature));
        add("F_rest_doppler", K::force, force_rest_frame_alt(p, cfg.bath, cfg.model, cfg.quadrature));
        if (p.beta > 0.0 && p.beta <= 0.1 && cfg.bath.temperature > 0.0)
            add("F_rest_linear", K::force, force_rest_frame_nr(p.beta, cfg.bath, cfg.model, cfg.quadrature));
    } else if (name == "equilibrium-temp") {
        const double t_star = equilibrium_temperature(p.beta, cfg.bath, cfg.model, cfg.quadrature);
        ParticleState at = p;
        at.temperature = t_star;
        t.columns = {{"beta", std::nullopt}, {"T2", K::temperature}, {"T1_star", K::temperature}};
        row = {p.beta, cfg.bath.temperature, t_star};
        add("Qdot_at_T1_star", K::power, heating_rate(at, cfg.bath, cfg.model, cfg.quadrature));
    }
    t.rows.push_back(std::move(row));
    t.warnings = cfg.warnings;
    emit(t, cfg, OutputFormat::csv);
    return exit_ok;
}

int cmd_evolve(const Options& o)
{
    const RunConfig cfg = build_config(o);
    const Trajectory traj = evolve(cfg.particle, cfg.bath, cfg.model, cfg.thermo, cfg.evolve, cfg.quadrature);
    warn(traj.warnings);
    Table t = trajectory_table(traj);
    t.warnings.insert(t.warnings.begin(), cfg.warnings.begin(), cfg.warnings.end());
    emit(t, cfg, OutputFormat::csv);
    return exit_ok;
}

int cmd_verify(const Options& o)
{
    const RunConfig cfg = build_config(o);
    const ConsistencyReport report = verify_all(cfg.particle, cfg.bath, cfg.model, cfg.quadrature, thread_count());

    const auto fmt = cfg.format.value_or(OutputFormat::json);
    if (fmt == OutputFormat::csv) {
        Table t;
        t.columns = {{"check", std::nullopt},    {"left", std::nullopt},           {"right", std::nullopt},
                     {"residual", std::nullopt}, {"combined_error", std::nullopt}, {"passed", std::nullopt}};
        for (const auto& c : report.checks)
            t.rows.push_back({c.name, c.left, c.right, c.residual, c.combined_error, c.passed});
        write_text(render_csv(t), cfg.target);
    } else {
        using nlohmann::ordered_json;
        const auto quantity = [&](double v, const std::optional<K>& kind) {
            if (!kind)
                return ordered_json(v);
            return ordered_json{{"internal", v}, {"si", cfg.units.from_internal(v, *kind)},
                                {"unit", std::string(si_unit(*kind))}};
        };
        ordered_json doc;
        doc["unit_system"] = {{"hbar", si::hbar},
                              {"c", si::c},
                              {"k_B", si::k_B},
                              {"reference_temperature", cfg.units.reference_temperature()}};
        doc["state"] = {{"beta", cfg.particle.beta},
                        {"T1", quantity(cfg.particle.temperature, K::temperature)},
                        {"T2", quantity(cfg.bath.temperature, K::temperature)},
                        {"polarizability", ordered_json::parse(model_to_json(cfg.model))}};
        ordered_json checks = ordered_json::array();
        for (const auto& c : report.checks) {
            checks.push_back({{"name", c.name},
                              {"left", quantity(c.left, c.kind)},
                              {"right", quantity(c.right, c.kind)},
                              {"residual", quantity(c.residual, c.kind)},
                              {"combined_error", quantity(c.combined_error, c.kind)},
                              {"passed", c.passed}});
        }
        doc["checks"] = checks;
        doc["diagnostics"] = {
            {"max_rest_frequency",
             quantity(max_rest_frequency(cfg.particle, cfg.bath, cfg.quadrature), K::frequency)}};
        doc["passed"] = report.passed();
        doc["warnings"] = cfg.warnings;
        write_text(doc.dump(2) + "\n", cfg.target);
    }
    for (const auto& c : report.checks) {
        if (!c.passed)
            std::cerr << "bbdrag: check failed: " << c.name << " (residual " << c.residual << ", allowed "
                      << std::max(10.0 * c.combined_error, identity_abs_floor) << ")\n";
    }
    return report.passed() ? exit_ok : exit_verify_failed;
}

struct SweepObservable {
    std::string column;
    K kind;
    std::function<Estimate(const ParticleState&, const BathSpec&, const RunConfig&)> eval;
};

SweepObservable sweep_observable(const std::string& name)
{
    if (name == "force")
        return {"F_x", K::force, [](auto& p, auto& b, auto& c) { return force_lab(p, b, c.model, c.quadrature); }};
    if (name == "heat")
        return {"Qdot", K::power, [](auto& p, auto& b, auto& c) { return heating_rate(p, b, c.model, c.quadrature); }};
    if (name == "intensity")
        return {"I", K::power, [](auto& p, auto& b, auto& c) { return intensity(p, b, c.model, c.quadrature).net; }};
    if (name == "emitted")
        return {"I1", K::power,
                [](auto& p, auto& b, auto& c) { return intensity(p, b, c.model, c.quadrature).emitted; }};
    if (name == "absorbed")
        return {"I2", K::power,
                [](auto& p, auto& b, auto& c) { return intensity(p, b, c.model, c.quadrature).absorbed; }};
    if (name == "drag")
        return {"drag", K::force,
                [](auto& p, auto& b, auto& c) { return drag_combination(p, b, c.model, c.quadrature); }};
    if (name == "restframe-force")
        return {"F_rest", K::force,
                [](auto& p, auto& b, auto& c) { return force_rest_frame(p, b, c.model, c.quadrature); }};
    if (name == "equilibrium-temp")
        return {"T1_star", K::temperature, [](auto& p, auto& b, auto& c) {
                    return Estimate{equilibrium_temperature(p.beta, b, c.model, c.quadrature), 0.0, 0, 0};
                }};
    throw InputError("--observable: unknown observable '" + name +
                     "' (force, heat, intensity, emitted, absorbed, drag, restframe-force, equilibrium-temp)");
}

int cmd_sweep(Options o)
{
    // ranges are consumed here; the config sees only the first point
    const Options ranges = o;
    o.beta.clear();
    o.t1.clear();
    o.t2.clear();
    const RunConfig cfg = build_config(o);
    const SweepObservable obs = sweep_observable(ranges.observable);

    const std::vector<double> betas =
        ranges.beta.empty() ? std::vector<double>{cfg.particle.beta} : parse_range(ranges.beta, "--beta");
    std::vector<double> t1s{cfg.particle.temperature};
    if (!ranges.t1.empty()) {
        t1s = parse_range(ranges.t1, "--t1");
        for (auto& v : t1s)
            v = to_internal(cfg, v, K::temperature);
    }
    std::vector<double> t2s{cfg.bath.temperature};
    if (!ranges.t2.empty()) {
        t2s = parse_range(ranges.t2, "--t2");
        for (auto& v : t2s)
            v = to_internal(cfg, v, K::temperature);
    }

    struct Point {
        ParticleState state;
        BathSpec bath;
        Estimate result;
    };
    std::vector<Point> points;
    for (double b : betas) {
        for (double t1 : t1s) {
            for (double t2 : t2s) {
                Point p{cfg.particle, BathSpec{t2}, {}};
                p.state.beta = b;
                p.state.temperature = t1;
                p.state.validate();
                p.bath.validate();
                points.push_back(p);
            }
        }
    }

    std::vector<std::function<void()>> tasks;
    for (auto& p : points)
        tasks.emplace_back([&p, &obs, &cfg] { p.result = obs.eval(p.state, p.bath, cfg); });
    run_tasks(tasks, thread_count());

    Table t;
    t.columns = state_columns();
    t.columns.push_back({obs.column, obs.kind});
    t.columns.push_back({obs.column + "_error", obs.kind});
    for (const auto& p : points)
        t.rows.push_back({p.state.beta, p.state.temperature, p.bath.temperature, p.result.value, p.result.error});
    t.warnings = cfg.warnings;
    emit(t, cfg, OutputFormat::csv);
    return exit_ok;
}

int cmd_mint_golden(const Options& o)
{
    const auto cases = oracle::standard_cases();
    std::vector<oracle::GoldenRecord> records(cases.size());
    std::vector<std::function<void()>> tasks;
    for (std::size_t i = 0; i < cases.size(); ++i)
        tasks.emplace_back([&, i] { records[i] = oracle::mint_golden(cases[i], o.n_omega, o.n_x); });
    run_tasks(tasks, thread_count());

    std::string text;
    for (const auto& r : records)
        text += oracle::to_json_line(r) + "\n";
    write_text(text, o.output.empty() ? "-" : o.output);
    return exit_ok;
}

void add_common(CLI::App* sub, Options& o)
{
    sub->add_option("--config", o.config, "JSON config file");
    sub->add_option("--units", o.units, "Units of config and flag values: si | internal");
    sub->add_option("--beta", o.beta, "Speed V/c");
    sub->add_option("--t1", o.t1, "Particle temperature T1");
    sub->add_option("--t2", o.t2, "Radiation temperature T2");
    sub->add_option("--mass", o.mass, "Particle rest mass");
    sub->add_option("--model", o.model, "Polarizability model as a JSON object");
    sub->add_option("--format", o.format, "Output format: csv | json");
    sub->add_option("--output", o.output, "Output file, '-' for stdout");
}

int dispatch(const std::vector<std::string>& args)
{
    CLI::App app{"Relativistic blackbody friction: forces, heating, radiation and particle dynamics", "bbdrag"};
    app.require_subcommand(1);
    Options o;

    const std::vector<std::pair<std::string, std::string>> singles = {
        {"force", "Lab-frame friction force F_x"},
        {"heat", "Heating rate dQ/dt"},
        {"intensity", "Net, emitted and absorbed radiation intensity"},
        {"restframe-force", "Rest-frame friction force F'_x"},
        {"equilibrium-temp", "Particle temperature with dQ/dt = 0"},
    };
    for (const auto& [name, help] : singles)
        add_common(app.add_subcommand(name, help), o);

    auto* evolve_cmd = app.add_subcommand("evolve", "Integrate beta(t), m(t), T1(t)");
    add_common(evolve_cmd, o);
    evolve_cmd->add_option("--t-end", o.t_end, "Final lab time");
    evolve_cmd->add_option("--mode", o.mode, "full | quasi-static-T1 | fixed-velocity");
    evolve_cmd->add_option("--stride", o.stride, "Keep every n-th accepted step");

    add_common(app.add_subcommand("verify", "Check the cross-frame identities"), o);

    auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate one observable over a grid (ranges a:b:n)");
    add_common(sweep_cmd, o);
    sweep_cmd->add_option("--observable", o.observable,
                          "force | heat | intensity | emitted | absorbed | drag | restframe-force | equilibrium-temp");

    auto* mint_cmd = app.add_subcommand("mint-golden", "Regenerate oracle golden records");
    mint_cmd->add_option("--output", o.output, "Golden file, '-' for stdout");
    mint_cmd->add_option("--n-omega", o.n_omega, "Oracle frequency nodes")->check(CLI::Range(64, 1 << 20));
    mint_cmd->add_option("--n-x", o.n_x, "Oracle angle nodes")->check(CLI::Range(64, 1 << 20));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input_error;
    }

    for (const auto& [name, help] : singles) {
        if (app.got_subcommand(name))
            return cmd_single(o, name);
    }
    if (app.got_subcommand("evolve"))
        return cmd_evolve(o);
    if (app.got_subcommand("verify"))
        return cmd_verify(o);
    if (app.got_subcommand("sweep"))
        return cmd_sweep(o);
    return cmd_mint_golden(o);
}

} // namespace

std::vector<double> parse_range(const std::string& text, const std::string& option)
{
    const auto number = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size() || !std::isfinite(v))
            throw InputError(option + ": '" + text + "' is not a number or a:b:n range");
        return v;
    };

    const auto first = text.find(':');
    if (first == std::string::npos)
        return {number(text)};
    const auto second = text.find(':', first + 1);
    if (second == std::string::npos)
        throw InputError(option + ": range must be a:b:n");
    const double a = number(text.substr(0, first));
    const double b = number(text.substr(first + 1, second - first - 1));
    const double n = number(text.substr(second + 1));
    if (n < 1.0 || n != std::floor(n) || n > 1e6)
        throw InputError(option + ": range count must be a positive integer");
    const auto count = static_cast<std::size_t>(n);
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = count == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
    if (count > 1)
        out.back() = b;
    return out;
}

unsigned thread_count()
{
    if (const char* env = std::getenv("BBDRAG_THREADS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (*end != '\0' || v < 1 || v > 4096)
            throw InputError("BBDRAG_THREADS must be a positive integer");
        return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

int run(const std::vector<std::string>& args)
{
    try {
        return dispatch(args);
    } catch (const InputError& e) {
        std::cerr << "bbdrag: error: " << e.what() << '\n';
        return exit_input_error;
    } catch (const NumericalError& e) {
        std::cerr << "bbdrag: numerical failure: " << e.what() << '\n';
        return exit_numerical_error;
    } catch (const std::exception& e) {
        std::cerr << "bbdrag: error: " << e.what() << '\n';
        return exit_input_error;
    }
}

int run(int argc, const char* const* argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return run(args);
}

} // namespace bbdrag::cli
