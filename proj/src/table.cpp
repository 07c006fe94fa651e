#include "agrifoot/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "agrifoot/errors.hpp"

namespace agrifoot {

std::string format_number(double value)
{
    if (value == 0.0) return "0";  // folds -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

void Table::add_row(std::vector<Cell> row)
{
    if (row.size() != header_.size())
        throw std::logic_error("table row width does not match header");
    rows_.push_back(std::move(row));
}

void Table::write(std::ostream& out, TableFormat format) const
{
    const char sep = format == TableFormat::csv ? ',' : '\t';
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (i) out << sep;
        out << header_[i];
    }
    out << '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << sep;
            if (const auto* s = std::get_if<std::string>(&row[i]))
                out << *s;
            else
                out << format_number(std::get<double>(row[i]));
        }
        out << '\n';
    }
}

void Table::write_file(const std::string& path, TableFormat format) const
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw EngineError("cannot open output file " + path);
    write(out, format);
    if (!out) throw EngineError("failed writing " + path);
}

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::vector<std::string>> read_delimited(std::istream& in)
{
    std::vector<std::vector<std::string>> rows;
    char sep = 0;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        if (!sep) {
            if (t.find('\t') != std::string::npos) sep = '\t';
            else if (t.find(';') != std::string::npos) sep = ';';
            else sep = ',';
        }
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const auto pos = t.find(sep, start);
            fields.push_back(trim(t.substr(start, pos - start)));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        rows.push_back(std::move(fields));
    }
    return rows;
}

}  // namespace agrifoot
