#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace covert {

// Flat table with a fixed column order, rendered as CSV with '.' decimal
// separator regardless of locale.
class Table {
public:
    explicit Table(std::vector<std::string> columns)
        : columns_(std::move(columns)) {}

    class RowBuilder {
    public:
        explicit RowBuilder(Table& table) : table_(table) {}
        RowBuilder& cell(const std::string& value);
        RowBuilder& cell(double value);
        RowBuilder& cell(uint64_t value);
        RowBuilder& cell(bool value);
        ~RowBuilder();

    private:
        Table& table_;
        std::vector<std::string> cells_;
    };

    RowBuilder row() { return RowBuilder(*this); }
    void append_row(std::vector<std::string> cells);

    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }

    std::string cell(size_t row, const std::string& column) const;
    double cell_as_double(size_t row, const std::string& column) const;

    void write_csv(std::ostream& out) const;
    void write_csv_file(const std::string& path) const;

    static std::string format_double(double value);

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace covert
