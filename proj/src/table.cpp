#include "covert/table.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace covert {

std::string Table::format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

Table::RowBuilder& Table::RowBuilder::cell(const std::string& value) {
    cells_.push_back(value);
    return *this;
}

Table::RowBuilder& Table::RowBuilder::cell(double value) {
    cells_.push_back(format_double(value));
    return *this;
}

Table::RowBuilder& Table::RowBuilder::cell(uint64_t value) {
    cells_.push_back(std::to_string(value));
    return *this;
}

Table::RowBuilder& Table::RowBuilder::cell(bool value) {
    cells_.push_back(value ? "1" : "0");
    return *this;
}

Table::RowBuilder::~RowBuilder() { table_.append_row(std::move(cells_)); }

void Table::append_row(std::vector<std::string> cells) {
    if (cells.size() != columns_.size())
        throw std::invalid_argument("table: row width does not match header");
    rows_.push_back(std::move(cells));
}

std::string Table::cell(size_t row, const std::string& column) const {
    auto it = std::find(columns_.begin(), columns_.end(), column);
    if (it == columns_.end())
        throw std::out_of_range("table: no column named " + column);
    return rows_.at(row).at(static_cast<size_t>(it - columns_.begin()));
}

double Table::cell_as_double(size_t row, const std::string& column) const {
    return std::stod(cell(row, column));
}

void Table::write_csv(std::ostream& out) const {
    for (size_t i = 0; i < columns_.size(); ++i)
        out << (i ? "," : "") << columns_[i];
    out << "\n";
    for (const auto& row : rows_) {
        for (size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << row[i];
        out << "\n";
    }
}

void Table::write_csv_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_csv(out);
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace covert
