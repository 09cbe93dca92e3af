#include "bbdrag/error.hpp"
#include "bbdrag/polarizability.hpp"

#include <json.hpp>

namespace bbdrag {

namespace {

double number_field(const nlohmann::json& j, const char* key)
{
    const auto it = j.find(key);
    if (it == j.end() || !it->is_number())
        throw InputError(std::string("polarizability.") + key + ": missing or not a number");
    return it->get<double>();
}

} // namespace

std::string model_to_json(const PolarizabilityModel& model)
{
    nlohmann::json j;
    if (const auto* m = std::get_if<LorentzOscillator>(&model))
        j = {{"type", "lorentz"}, {"alpha0", m->alpha0}, {"omega0", m->omega0}, {"gamma", m->damping}};
    else if (const auto* m = std::get_if<DrudeSphere>(&model))
        j = {{"type", "drude"}, {"radius", m->radius}, {"omega_p", m->plasma_frequency}, {"nu", m->collision_rate}};
    else if (const auto* m = std::get_if<TopHat>(&model))
        j = {{"type", "tophat"}, {"A", m->amplitude}, {"omega1", m->omega_low}, {"omega2", m->omega_high}};
    else if (const auto* m = std::get_if<Ohmic>(&model)) {
        j = {{"type", "ohmic"}, {"A", m->slope}};
        j["omega_c"] = m->cutoff ? nlohmann::json(*m->cutoff) : nlohmann::json(nullptr);
    }
    return j.dump();
}

PolarizabilityModel model_from_json(std::string_view json_text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("polarizability: ") + e.what());
    }
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw InputError("polarizability.type: missing or not a string");

    const auto type = j["type"].get<std::string>();
    PolarizabilityModel model;
    if (type == "lorentz") {
        model = LorentzOscillator{number_field(j, "alpha0"), number_field(j, "omega0"), number_field(j, "gamma")};
    } else if (type == "drude") {
        model = DrudeSphere{number_field(j, "radius"), number_field(j, "omega_p"), number_field(j, "nu")};
    } else if (type == "tophat") {
        model = TopHat{number_field(j, "A"), number_field(j, "omega1"), number_field(j, "omega2")};
    } else if (type == "ohmic") {
        Ohmic ohmic{number_field(j, "A"), std::nullopt};
        if (j.contains("omega_c") && !j["omega_c"].is_null())
            ohmic.cutoff = number_field(j, "omega_c");
        model = ohmic;
    } else {
        throw InputError("polarizability.type: unknown model '" + type + "'");
    }
    validate(model);
    return model;
}

} // namespace bbdrag
