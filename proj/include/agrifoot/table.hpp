#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace agrifoot {

enum class TableFormat { csv, tsv };

/// Numbers are rendered with six significant digits.
std::string format_number(double value);

/// Plain delimited-text table. Header names carry their units, e.g. `energy_kWh_per_year`.
class Table {
public:
    using Cell = std::variant<std::string, double>;

    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<Cell> row);

    const std::vector<std::string>& header() const noexcept { return header_; }
    const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }

    void write(std::ostream& out, TableFormat format) const;
    void write_file(const std::string& path, TableFormat format) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<Cell>> rows_;
};

/// Splits delimited text into trimmed fields. Blank lines and lines starting with '#' are skipped.
/// The separator is guessed from the first non-comment line (tab, semicolon, then comma).
std::vector<std::vector<std::string>> read_delimited(std::istream& in);

}  // namespace agrifoot
