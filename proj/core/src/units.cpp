#include "bbdrag/units.hpp"

#include "bbdrag/error.hpp"

#include <cmath>
#include <string>

namespace bbdrag {

namespace {

struct KindInfo {
    QuantityKind kind;
    std::string_view name;
    std::string_view unit;
};

constexpr std::array<KindInfo, all_quantity_kinds.size()> kind_table{{
    {QuantityKind::frequency, "frequency", "rad/s"},
    {QuantityKind::temperature, "temperature", "K"},
    {QuantityKind::force, "force", "N"},
    {QuantityKind::power, "power", "W"},
    {QuantityKind::mass, "mass", "kg"},
    {QuantityKind::time, "time", "s"},
    {QuantityKind::polarizability_volume, "polarizability-volume", "m^3"},
    {QuantityKind::velocity, "velocity", "m/s"},
    {QuantityKind::length, "length", "m"},
    {QuantityKind::energy, "energy", "J"},
    {QuantityKind::specific_heat, "specific-heat", "J/(kg K)"},
}};

std::size_t index_of(QuantityKind kind) { return static_cast<std::size_t>(kind); }

} // namespace

std::string_view to_string(QuantityKind kind) { return kind_table.at(index_of(kind)).name; }

std::string_view si_unit(QuantityKind kind) { return kind_table.at(index_of(kind)).unit; }

QuantityKind parse_quantity_kind(std::string_view name)
{
    for (const auto& info : kind_table) {
        if (info.name == name)
            return info.kind;
    }
    throw InputError("unknown quantity kind '" + std::string(name) + "'");
}

UnitSystem::UnitSystem(double reference_temperature) : reference_temperature_(reference_temperature)
{
    if (!std::isfinite(reference_temperature) || reference_temperature <= 0.0)
        throw InputError("reference_temperature must be finite and > 0");

    const double energy = si::k_B * reference_temperature;
    const double omega = energy / si::hbar;
    const double time = 1.0 / omega;
    const double length = si::c / omega;
    const double mass = energy / (si::c * si::c);

    scales_[index_of(QuantityKind::frequency)] = omega;
    scales_[index_of(QuantityKind::temperature)] = reference_temperature;
    scales_[index_of(QuantityKind::force)] = energy / length;
    scales_[index_of(QuantityKind::power)] = energy * omega;
    scales_[index_of(QuantityKind::mass)] = mass;
    scales_[index_of(QuantityKind::time)] = time;
    scales_[index_of(QuantityKind::polarizability_volume)] = length * length * length;
    scales_[index_of(QuantityKind::velocity)] = si::c;
    scales_[index_of(QuantityKind::length)] = length;
    scales_[index_of(QuantityKind::energy)] = energy;
    scales_[index_of(QuantityKind::specific_heat)] = energy / (mass * reference_temperature);
}

double UnitSystem::scale(QuantityKind kind) const noexcept { return scales_[index_of(kind)]; }

double UnitSystem::to_internal(double value, QuantityKind kind) const
{
    if (!std::isfinite(value))
        throw InputError("non-finite " + std::string(to_string(kind)) + " value");
    return value / scale(kind);
}

double UnitSystem::from_internal(double internal_value, QuantityKind kind) const
{
    if (!std::isfinite(internal_value))
        throw InputError("non-finite internal " + std::string(to_string(kind)) + " value");
    return internal_value * scale(kind);
}

} // namespace bbdrag
