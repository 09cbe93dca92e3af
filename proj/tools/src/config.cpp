#include "bbdrag/cli/config.hpp"

#include "bbdrag/error.hpp"
#include "bbdrag/kernels.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace bbdrag::cli {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& section, std::string_view path, std::initializer_list<std::string_view> known)
{
    const std::set<std::string_view> allowed(known);
    for (const auto& [key, value] : section.items()) {
        if (!allowed.contains(key))
            throw InputError("unknown field " + std::string(path) + "." + key);
    }
}

const json* section_of(const json& root, const char* name)
{
    const auto it = root.find(name);
    if (it == root.end())
        return nullptr;
    if (!it->is_object())
        throw InputError(std::string(name) + ": expected an object");
    return &*it;
}

std::optional<double> number_at(const json& section, std::string_view path, const char* key)
{
    const auto it = section.find(key);
    if (it == section.end())
        return std::nullopt;
    if (!it->is_number())
        throw InputError(std::string(path) + "." + key + ": expected a number");
    const double v = it->get<double>();
    if (!std::isfinite(v))
        throw InputError(std::string(path) + "." + key + ": must be finite");
    return v;
}

std::optional<std::string> string_at(const json& section, std::string_view path, const char* key)
{
    const auto it = section.find(key);
    if (it == section.end())
        return std::nullopt;
    if (!it->is_string())
        throw InputError(std::string(path) + "." + key + ": expected a string");
    return it->get<std::string>();
}

std::optional<std::size_t> count_at(const json& section, std::string_view path, const char* key)
{
    const auto it = section.find(key);
    if (it == section.end())
        return std::nullopt;
    if (!it->is_number_integer() || it->get<long long>() < 0)
        throw InputError(std::string(path) + "." + key + ": expected a non-negative integer");
    return it->get<std::size_t>();
}

// Polarizability fields and the quantity kind of each, per model type.
struct FieldKind {
    const char* key;
    std::optional<QuantityKind> kind;  // nullopt: alpha'' slope, volume * time
};

std::vector<FieldKind> model_fields(std::string_view type)
{
    using K = QuantityKind;
    if (type == "lorentz")
        return {{"alpha0", K::polarizability_volume}, {"omega0", K::frequency}, {"gamma", K::frequency}};
    if (type == "drude")
        return {{"radius", K::length}, {"omega_p", K::frequency}, {"nu", K::frequency}};
    if (type == "tophat")
        return {{"A", K::polarizability_volume}, {"omega1", K::frequency}, {"omega2", K::frequency}};
    if (type == "ohmic")
        return {{"A", std::nullopt}, {"omega_c", K::frequency}};
    throw InputError("polarizability.type: unknown model '" + std::string(type) + "'");
}

PolarizabilityModel model_from_section(const json& section, InputUnits input, const UnitSystem& units)
{
    if (!section.is_object())
        throw InputError("polarizability: expected an object");
    const auto type = string_at(section, "polarizability", "type");
    if (!type)
        throw InputError("polarizability.type: missing");
    const auto fields = model_fields(*type);

    json converted = {{"type", *type}};
    for (const auto& [key, value] : section.items()) {
        if (key == "type")
            continue;
        const auto f = std::find_if(fields.begin(), fields.end(), [&](const FieldKind& fk) { return key == fk.key; });
        if (f == fields.end())
            throw InputError("unknown field polarizability." + key);
        if (value.is_null()) {
            converted[key] = nullptr;
            continue;
        }
        const auto v = number_at(section, "polarizability", f->key);
        double scale = 1.0;
        if (input == InputUnits::si) {
            scale = f->kind ? units.scale(*f->kind)
                            : units.scale(QuantityKind::polarizability_volume) * units.scale(QuantityKind::time);
        }
        converted[key] = *v / scale;
    }
    return model_from_json(converted.dump());
}

std::string located_parse_error(std::string_view text, std::string_view origin, const json::parse_error& e)
{
    // nlohmann reports a 1-based byte offset
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    std::ostringstream msg;
    msg << origin << ":" << line << ":" << column << ": JSON parse error: " << e.what();
    return msg.str();
}

template <class Fn>
void with_prefix(std::string_view prefix, Fn&& fn)
{
    try {
        fn();
    } catch (const InputError& e) {
        const std::string what = e.what();
        if (what.rfind(prefix, 0) == 0)
            throw;
        throw InputError(std::string(prefix) + what);
    }
}

} // namespace

InputUnits parse_input_units(std::string_view name)
{
    if (name == "si")
        return InputUnits::si;
    if (name == "internal")
        return InputUnits::internal;
    throw InputError("units.input: expected \"si\" or \"internal\", got '" + std::string(name) + "'");
}

OutputFormat parse_output_format(std::string_view name)
{
    if (name == "csv")
        return OutputFormat::csv;
    if (name == "json")
        return OutputFormat::json;
    throw InputError("output.format: expected \"csv\" or \"json\", got '" + std::string(name) + "'");
}

std::string_view to_string(InputUnits units) { return units == InputUnits::si ? "si" : "internal"; }
std::string_view to_string(OutputFormat format) { return format == OutputFormat::csv ? "csv" : "json"; }

double to_internal(const RunConfig& cfg, double value, QuantityKind kind)
{
    return cfg.input_units == InputUnits::si ? cfg.units.to_internal(value, kind) : value;
}

PolarizabilityModel parse_model(const RunConfig& cfg, std::string_view json_text)
{
    json section;
    try {
        section = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InputError(located_parse_error(json_text, "--model", e));
    }
    return model_from_section(section, cfg.input_units, cfg.units);
}

void revalidate(RunConfig& cfg)
{
    cfg.warnings.clear();
    const auto& p = cfg.particle;
    if (!(p.beta >= 0.0 && p.beta <= beta_max))
        throw InputError("particle.beta: must lie in [0, 1 - 1e-9]");
    if (!(std::isfinite(p.mass) && p.mass > 0.0))
        throw InputError("particle.mass: must be finite and > 0");
    if (!(std::isfinite(p.temperature) && p.temperature >= 0.0))
        throw InputError("particle.T1: must be finite and >= 0");
    if (!(std::isfinite(cfg.thermo.specific_heat) && cfg.thermo.specific_heat > 0.0))
        throw InputError("particle.specific_heat: must be finite and > 0");
    if (cfg.radius && !(std::isfinite(*cfg.radius) && *cfg.radius > 0.0))
        throw InputError("particle.radius: must be finite and > 0");
    if (!(std::isfinite(cfg.bath.temperature) && cfg.bath.temperature >= 0.0))
        throw InputError("bath.T2: must be finite and >= 0");
    validate(cfg.model);
    cfg.quadrature.validate();
    cfg.evolve.validate(cfg.quadrature);

    // The dipole picture needs R well below the shortest thermal wavelength
    // 2 pi hbar c / (k_B max(T1, T2)); 1/10 of it is the threshold used here.
    const auto radius = cfg.radius ? cfg.radius : model_radius(cfg.model);
    const double t_max = std::max(p.temperature, cfg.bath.temperature);
    if (radius && t_max > 0.0) {
        const double wavelength = 2.0 * std::numbers::pi / t_max;
        if (*radius >= 0.1 * wavelength) {
            std::ostringstream msg;
            msg << "particle radius " << cfg.units.from_internal(*radius, QuantityKind::length)
                << " m is not small against the thermal wavelength "
                << cfg.units.from_internal(wavelength, QuantityKind::length) << " m";
            cfg.warnings.push_back(msg.str());
        }
    }
}

RunConfig default_config(std::optional<InputUnits> units_override)
{
    RunConfig cfg;
    cfg.thermo.specific_heat = cfg.units.to_internal(default_specific_heat_si, QuantityKind::specific_heat);
    if (units_override)
        cfg.input_units = *units_override;
    revalidate(cfg);
    return cfg;
}

RunConfig parse_config(std::string_view text, std::string_view origin, std::optional<InputUnits> units_override)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(located_parse_error(text, origin, e));
    }
    if (!root.is_object())
        throw InputError(std::string(origin) + ": top level must be an object");
    reject_unknown_keys(root, "<root>",
                        {"units", "particle", "bath", "polarizability", "quadrature", "evolve", "output"});

    RunConfig cfg;
    if (const json* s = section_of(root, "units")) {
        reject_unknown_keys(*s, "units", {"reference_temperature", "input"});
        if (const auto t = number_at(*s, "units", "reference_temperature")) {
            if (!(*t > 0.0))
                throw InputError("units.reference_temperature: must be > 0");
            cfg.units = UnitSystem(*t);
        }
        if (const auto in = string_at(*s, "units", "input"))
            cfg.input_units = parse_input_units(*in);
    }
    if (units_override)
        cfg.input_units = *units_override;
    cfg.thermo.specific_heat = cfg.units.to_internal(default_specific_heat_si, QuantityKind::specific_heat);

    const auto internal = [&](std::optional<double> v, QuantityKind kind) -> std::optional<double> {
        if (!v)
            return std::nullopt;
        return to_internal(cfg, *v, kind);
    };

    if (const json* s = section_of(root, "particle")) {
        reject_unknown_keys(*s, "particle", {"beta", "velocity", "mass", "T1", "specific_heat", "radius"});
        const auto beta = number_at(*s, "particle", "beta");
        const auto velocity = number_at(*s, "particle", "velocity");
        if (beta && velocity)
            throw InputError("particle.velocity: give either beta or velocity, not both");
        if (beta) {
            if (!(*beta >= 0.0 && *beta <= beta_max))
                throw InputError("particle.beta: must lie in [0, 1 - 1e-9]");
            cfg.particle.beta = *beta;
        }
        if (velocity) {
            const double b = to_internal(cfg, *velocity, QuantityKind::velocity);
            if (!(b >= 0.0 && b <= beta_max))
                throw InputError("particle.velocity: must lie in [0, (1 - 1e-9) c]");
            cfg.particle.beta = b;
        }
        if (const auto m = internal(number_at(*s, "particle", "mass"), QuantityKind::mass))
            cfg.particle.mass = *m;
        if (const auto t = internal(number_at(*s, "particle", "T1"), QuantityKind::temperature))
            cfg.particle.temperature = *t;
        if (const auto c = internal(number_at(*s, "particle", "specific_heat"), QuantityKind::specific_heat))
            cfg.thermo.specific_heat = *c;
        cfg.radius = internal(number_at(*s, "particle", "radius"), QuantityKind::length);
    }

    if (const json* s = section_of(root, "bath")) {
        reject_unknown_keys(*s, "bath", {"T2"});
        if (const auto t = internal(number_at(*s, "bath", "T2"), QuantityKind::temperature))
            cfg.bath.temperature = *t;
    }

    if (const auto it = root.find("polarizability"); it != root.end())
        cfg.model = model_from_section(*it, cfg.input_units, cfg.units);

    if (const json* s = section_of(root, "quadrature")) {
        reject_unknown_keys(*s, "quadrature", {"rel_tol", "abs_tol", "u_max", "max_subdivisions", "inner_nodes"});
        auto& q = cfg.quadrature;
        q.rel_tol = number_at(*s, "quadrature", "rel_tol").value_or(q.rel_tol);
        q.abs_tol = number_at(*s, "quadrature", "abs_tol").value_or(q.abs_tol);
        q.u_max = number_at(*s, "quadrature", "u_max").value_or(q.u_max);
        q.max_subdivisions = count_at(*s, "quadrature", "max_subdivisions").value_or(q.max_subdivisions);
        q.inner_nodes = count_at(*s, "quadrature", "inner_nodes").value_or(q.inner_nodes);
    }

    if (const json* s = section_of(root, "evolve")) {
        reject_unknown_keys(*s, "evolve",
                            {"t_end", "initial_step", "rel_tol", "abs_tol", "mode", "output_stride", "max_step",
                             "beta_floor", "temperature_tol", "monitor_tol"});
        auto& e = cfg.evolve;
        e.t_end = internal(number_at(*s, "evolve", "t_end"), QuantityKind::time).value_or(e.t_end);
        e.initial_step = internal(number_at(*s, "evolve", "initial_step"), QuantityKind::time).value_or(e.initial_step);
        e.max_step = internal(number_at(*s, "evolve", "max_step"), QuantityKind::time).value_or(e.max_step);
        e.rel_tol = number_at(*s, "evolve", "rel_tol").value_or(e.rel_tol);
        e.abs_tol = number_at(*s, "evolve", "abs_tol").value_or(e.abs_tol);
        e.beta_floor = number_at(*s, "evolve", "beta_floor").value_or(e.beta_floor);
        e.temperature_tol = number_at(*s, "evolve", "temperature_tol").value_or(e.temperature_tol);
        e.monitor_tol = number_at(*s, "evolve", "monitor_tol").value_or(e.monitor_tol);
        e.output_stride = count_at(*s, "evolve", "output_stride").value_or(e.output_stride);
        if (const auto mode = string_at(*s, "evolve", "mode"))
            with_prefix("evolve.mode: ", [&] { e.mode = parse_evolve_mode(*mode); });
    }

    if (const json* s = section_of(root, "output")) {
        reject_unknown_keys(*s, "output", {"format", "target"});
        if (const auto f = string_at(*s, "output", "format"))
            cfg.format = parse_output_format(*f);
        if (const auto t = string_at(*s, "output", "target"))
            cfg.target = *t;
    }

    revalidate(cfg);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path, std::optional<InputUnits> units_override)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open config file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path.string(), units_override);
}

} // namespace bbdrag::cli
