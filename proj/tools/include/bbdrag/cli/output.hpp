#pragma once

#include "bbdrag/cli/config.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace bbdrag::cli {

using Cell = std::variant<double, bool, std::string>;

struct Column {
    std::string name;
    std::optional<QuantityKind> kind;  // nullopt: dimensionless or non-numeric
};

/// Flat result table. Values are stored in internal units.
struct Table {
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> warnings;
};

/// 12 significant digits, "%.12g".
std::string format_number(double value);

/// Header line plus one line per row, internal units.
std::string render_csv(const Table& table);

/// {"unit_system": ..., "columns": [...], "rows": [...], "warnings": [...]}.
/// Dimensional cells become {"internal": x, "si": y, "unit": "..."}.
std::string render_json(const Table& table, const UnitSystem& units);

std::string render(const Table& table, OutputFormat format, const UnitSystem& units);

/// Writes text to stdout when target is "-", otherwise to the named file.
/// Throws InputError on I/O failure.
void write_text(const std::string& text, const std::string& target);

/// Trajectory rows with header t,beta,m,T1,F_x,Qdot,I,balance_residual.
Table trajectory_table(const Trajectory& trajectory);

} // namespace bbdrag::cli
