#pragma once

#include <array>
#include <string_view>

namespace bbdrag {

/// CODATA 2018 exact / recommended values.
namespace si {
inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double c = 299792458.0;         // m / s
inline constexpr double k_B = 1.380649e-23;      // J / K
} // namespace si

/// Physical kinds understood by the SI <-> internal conversion.
enum class QuantityKind {
    frequency,             // rad/s
    temperature,           // K
    force,                 // N
    power,                 // W
    mass,                  // kg
    time,                  // s
    polarizability_volume, // m^3 (Gaussian polarizability volume)
    velocity,              // m/s, internal value is beta = V/c
    length,                // m
    energy,                // J
    specific_heat,         // J / (kg K)
};

inline constexpr std::array<QuantityKind, 11> all_quantity_kinds{
    QuantityKind::frequency, QuantityKind::temperature, QuantityKind::force,
    QuantityKind::power, QuantityKind::mass, QuantityKind::time,
    QuantityKind::polarizability_volume, QuantityKind::velocity, QuantityKind::length,
    QuantityKind::energy, QuantityKind::specific_heat,
};

std::string_view to_string(QuantityKind kind);

/// Throws InputError for an unrecognized name.
QuantityKind parse_quantity_kind(std::string_view name);

/// SI unit symbol used in reports ("N", "W", ...).
std::string_view si_unit(QuantityKind kind);

/// Natural units with hbar = c = k_B = 1. One internal unit of temperature is
/// the reference temperature; one unit of frequency is k_B T_ref / hbar; the
/// remaining scales follow from dimensional analysis.
class UnitSystem {
public:
    static constexpr double default_reference_temperature = 300.0;

    explicit UnitSystem(double reference_temperature = default_reference_temperature);

    double reference_temperature() const noexcept { return reference_temperature_; }

    /// SI value of one internal unit of `kind`.
    double scale(QuantityKind kind) const noexcept;

    double to_internal(double value, QuantityKind kind) const;
    double from_internal(double internal_value, QuantityKind kind) const;

private:
    double reference_temperature_;
    std::array<double, all_quantity_kinds.size()> scales_{};
};

} // namespace bbdrag
