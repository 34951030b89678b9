#include "sequiv/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "sequiv/errors.hpp"

namespace sequiv {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw DomainError("Table::add_row: column count mismatch");
    rows.push_back(std::move(row));
}

namespace {

std::string cell_text(const Cell& c) {
    struct Visitor {
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(long v) const { return std::to_string(v); }
        std::string operator()(const std::string& s) const {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string out = "\"";
            for (char ch : s) {
                if (ch == '"') out += '"';
                out += ch;
            }
            return out + "\"";
        }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
    };
    return std::visit(Visitor{}, c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return format_double(v);
            }
            return v;
        },
        c);
}

}  // namespace

std::string Table::to_csv() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < columns.size(); ++k) os << (k ? "," : "") << columns[k];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << cell_text(row[k]);
        os << '\n';
    }
    return os.str();
}

nlohmann::ordered_json Table::to_json() const {
    auto out = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t k = 0; k < row.size(); ++k) obj[columns[k]] = cell_json(row[k]);
        out.push_back(std::move(obj));
    }
    return out;
}

std::string render(const Table& table, OutputFormat format) {
    if (format == OutputFormat::Csv) return table.to_csv();
    return table.to_json().dump(2) + "\n";
}

Table trajectory_table(const PhaseTrajectory& trajectory) {
    Table t{{"t", "x", "momentum", "conserved", "residual_strip"}, {}};
    for (const auto& s : trajectory.samples) {
        t.add_row({s.t, s.x, s.momentum, s.conserved, s.conserved - trajectory.b});
    }
    return t;
}

Table master_table(const MasterSolution& solution, const Potential& v, double x) {
    Table t{{"p", "H", "dH", "closed_form", "abs_error"}, {}};
    for (const auto& s : solution.samples) {
        const double exact = closed_form_hprime(v, x, s.p);
        t.add_row({s.p, s.h, s.dh, exact, std::abs(s.h - exact)});
    }
    return t;
}

namespace {

nlohmann::ordered_json rational_json(const mpq_class& q) {
    return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

mpq_class rational_from_json(const nlohmann::ordered_json& j) {
    mpq_class q(mpz_class(j.at("num").get<std::string>()), mpz_class(j.at("den").get<std::string>()));
    if (q.get_den() == 0) throw DomainError("poly_from_json: zero denominator");
    q.canonicalize();
    return q;
}

}  // namespace

nlohmann::ordered_json poly_to_json(const GaussianRationalPoly& p) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& c : p.coeffs()) out.push_back({{"re", rational_json(c.re())}, {"im", rational_json(c.im())}});
    return out;
}

GaussianRationalPoly poly_from_json(const nlohmann::ordered_json& j) {
    if (!j.is_array()) throw DomainError("poly_from_json: expected an array of coefficients");
    std::vector<GaussianRational> coeffs;
    for (const auto& c : j) coeffs.emplace_back(rational_from_json(c.at("re")), rational_from_json(c.at("im")));
    return GaussianRationalPoly(std::move(coeffs));
}

}  // namespace sequiv
