#pragma once

#include "bbdrag/dynamics.hpp"
#include "bbdrag/units.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bbdrag::cli {

enum class InputUnits { si, internal };
enum class OutputFormat { csv, json };

InputUnits parse_input_units(std::string_view name);
OutputFormat parse_output_format(std::string_view name);
std::string_view to_string(InputUnits units);
std::string_view to_string(OutputFormat format);

/// Specific heat used when the config gives none, J / (kg K).
inline constexpr double default_specific_heat_si = 740.0;

/// Everything a subcommand needs, already converted to internal units.
struct RunConfig {
    UnitSystem units;
    InputUnits input_units = InputUnits::si;

    ParticleState particle{0.0, 1.0, 1.0};
    BathSpec bath{1.0};
    MaterialThermo thermo;
    std::optional<double> radius;  // particle radius, point-dipole check only
    PolarizabilityModel model = LorentzOscillator{};

    QuadratureSpec quadrature;
    EvolveConfig evolve;

    std::optional<OutputFormat> format;  // unset: the subcommand default
    std::string target = "-";  // "-" is stdout

    /// Non-fatal findings from validation (point-dipole condition etc.).
    std::vector<std::string> warnings;
};

/// Parses a config document. `origin` names the source in error messages.
/// Throws InputError with line/column on malformed JSON and with the field
/// path (e.g. "particle.beta") on invalid values or unknown keys.
RunConfig parse_config(std::string_view text, std::string_view origin = "<config>",
                       std::optional<InputUnits> units_override = std::nullopt);

RunConfig load_config(const std::filesystem::path& path,
                      std::optional<InputUnits> units_override = std::nullopt);

/// Config with every field at its default.
RunConfig default_config(std::optional<InputUnits> units_override = std::nullopt);

/// Converts one input value of `kind` from the config's input units.
double to_internal(const RunConfig& cfg, double value, QuantityKind kind);

/// Polarizability JSON (tagged object) in the config's input units.
PolarizabilityModel parse_model(const RunConfig& cfg, std::string_view json_text);

/// Re-runs every validation and refreshes cfg.warnings. Call after
/// overriding fields from the command line.
void revalidate(RunConfig& cfg);

} // namespace bbdrag::cli
