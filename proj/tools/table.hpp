#pragma once

#include "run_config.hpp"

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace rbmlab::cli {

// Column-oriented numeric output with a self-describing header.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    // scalar results emitted next to the table (JSON) or as comments (CSV)
    std::map<std::string, std::string> notes;

    void add_row(std::vector<double> row);
};

struct Header {
    std::string command;
    std::map<std::string, std::string> config;
};

void write_csv(std::ostream& os, const Header& header, const Table& table);
void write_json(std::ostream& os, const Header& header, const Table& table);

// Writes to path, or stdout when path is empty or "-". Throws IoError.
void emit(const std::string& path, Format format, const Header& header, const Table& table);
void emit_text(const std::string& path, const std::string& text);

}  // namespace rbmlab::cli
