#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "sequiv/classical.hpp"
#include "sequiv/exactpoly.hpp"
#include "sequiv/master.hpp"

namespace sequiv {

/// Fixed float format for exports: 17 significant digits, lowercase scientific.
std::string format_double(double v);

using Cell = std::variant<double, long, std::string, bool>;

/// Column-ordered table that renders to CSV or JSON with a stable layout.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
    std::string to_csv() const;
    /// Array of objects, one per row, keys in column order.
    nlohmann::ordered_json to_json() const;
};

enum class OutputFormat { Csv, Json };

std::string render(const Table& table, OutputFormat format);

/// Columns t, x, momentum, conserved, residual_strip (= conserved - b).
Table trajectory_table(const PhaseTrajectory& trajectory);

/// Columns p, H, dH, closed_form, abs_error.
Table master_table(const MasterSolution& solution, const Potential& v, double x);

/// [{"re": {"num": "..", "den": ".."}, "im": {...}}, ...], lowest degree first.
nlohmann::ordered_json poly_to_json(const GaussianRationalPoly& p);
GaussianRationalPoly poly_from_json(const nlohmann::ordered_json& j);

}  // namespace sequiv
