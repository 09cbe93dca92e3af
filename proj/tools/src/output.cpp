#include "bbdrag/cli/output.hpp"

#include "bbdrag/error.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace bbdrag::cli {

using nlohmann::ordered_json;

std::string format_number(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

std::string render_csv(const Table& table)
{
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i > 0)
            out += ',';
        out += table.columns[i].name;
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0)
                out += ',';
            if (const auto* d = std::get_if<double>(&row[i]))
                out += format_number(*d);
            else if (const auto* b = std::get_if<bool>(&row[i]))
                out += *b ? "true" : "false";
            else
                out += std::get<std::string>(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string render_json(const Table& table, const UnitSystem& units)
{
    ordered_json doc;
    doc["unit_system"] = {{"hbar", si::hbar},
                          {"c", si::c},
                          {"k_B", si::k_B},
                          {"reference_temperature", units.reference_temperature()}};
    ordered_json columns = ordered_json::array();
    for (const auto& c : table.columns) {
        ordered_json col = {{"name", c.name}};
        if (c.kind) {
            col["kind"] = std::string(to_string(*c.kind));
            col["si_unit"] = std::string(si_unit(*c.kind));
        }
        columns.push_back(col);
    }
    doc["columns"] = columns;

    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) {
        ordered_json r = ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
            const auto& col = table.columns[i];
            if (const auto* d = std::get_if<double>(&row[i])) {
                if (col.kind) {
                    r[col.name] = {{"internal", *d},
                                   {"si", units.from_internal(*d, *col.kind)},
                                   {"unit", std::string(si_unit(*col.kind))}};
                } else {
                    r[col.name] = *d;
                }
            } else if (const auto* b = std::get_if<bool>(&row[i])) {
                r[col.name] = *b;
            } else {
                r[col.name] = std::get<std::string>(row[i]);
            }
        }
        rows.push_back(r);
    }
    doc["rows"] = rows;
    doc["warnings"] = table.warnings;
    return doc.dump(2) + "\n";
}

std::string render(const Table& table, OutputFormat format, const UnitSystem& units)
{
    return format == OutputFormat::csv ? render_csv(table) : render_json(table, units);
}

void write_text(const std::string& text, const std::string& target)
{
    if (target == "-") {
        std::cout << text << std::flush;
        if (!std::cout)
            throw InputError("failed writing to stdout");
        return;
    }
    std::ofstream out(target, std::ios::binary | std::ios::trunc);
    if (!out)
        throw InputError("cannot open output file " + target);
    out << text;
    out.flush();
    if (!out)
        throw InputError("failed writing output file " + target);
}

Table trajectory_table(const Trajectory& trajectory)
{
    using K = QuantityKind;
    Table t;
    t.columns = {{"t", K::time},     {"beta", std::nullopt}, {"m", K::mass}, {"T1", K::temperature},
                 {"F_x", K::force},  {"Qdot", K::power},     {"I", K::power}, {"balance_residual", K::power}};
    for (const auto& p : trajectory.points) {
        t.rows.push_back({p.t, p.beta, p.mass, p.temperature, p.force_lab, p.heating_rate, p.intensity,
                          p.balance_residual});
    }
    t.warnings = trajectory.warnings;
    return t;
}

} // namespace bbdrag::cli
