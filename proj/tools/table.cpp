#include "table.hpp"

#include <rbmlab/extended_real.hpp>

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace rbmlab::cli {

void Table::add_row(std::vector<double> row) {
    if (row.size() != columns.size()) throw std::logic_error("Table: row width does not match the columns");
    rows.push_back(std::move(row));
}

void write_csv(std::ostream& os, const Header& header, const Table& table) {
    os << "# command=" << header.command << "\n";
    for (const auto& [k, v] : header.config) os << "# " << k << "=" << v << "\n";
    for (const auto& [k, v] : table.notes) os << "# result." << k << "=" << v << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
        os << "\n";
    }
}

void write_json(std::ostream& os, const Header& header, const Table& table) {
    nlohmann::ordered_json j;
    j["command"] = header.command;
    j["config"] = header.config;
    j["results"] = table.notes;
    j["columns"] = table.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        auto jr = nlohmann::ordered_json::array();
        for (double x : row) {
            if (std::isfinite(x)) jr.push_back(x);
            else jr.push_back(format_double(x));
        }
        rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);
    os << j.dump(2) << "\n";
}

void emit(const std::string& path, Format format, const Header& header, const Table& table) {
    std::ostringstream buf;
    if (format == Format::csv) write_csv(buf, header, table);
    else write_json(buf, header, table);
    emit_text(path, buf.str());
}

void emit_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) throw IoError("failed writing to stdout");
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    out.close();
    if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace rbmlab::cli
