#include "aptf/cli/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace aptf::cli {

CsvWriter::CsvWriter(std::vector<std::string> header, int precision) : width_(header.size()) {
    if (precision < 1 || precision > 17) throw std::invalid_argument("CsvWriter: precision must be in [1, 17]");
    format_ = "%." + std::to_string(precision) + "g";
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += header[i];
    }
    buffer_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) { row({}, values); }

void CsvWriter::row(const std::vector<std::string>& text, const std::vector<double>& values) {
    if (text.size() + values.size() != width_) throw std::invalid_argument("CsvWriter: row width does not match header");
    bool first = true;
    for (const auto& t : text) {
        if (!first) buffer_ += ',';
        buffer_ += t;
        first = false;
    }
    char cell[64];
    for (double v : values) {
        if (!first) buffer_ += ',';
        std::snprintf(cell, sizeof cell, format_.c_str(), v);
        buffer_ += cell;
        first = false;
    }
    buffer_ += '\n';
}

std::size_t CsvTable::column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::invalid_argument("missing CSV column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    CsvTable t;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto cells = split(line);
        if (t.header.empty()) {
            t.header = std::move(cells);
            continue;
        }
        if (cells.size() != t.header.size()) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": expected " +
                                     std::to_string(t.header.size()) + " cells");
        }
        t.rows.push_back(std::move(cells));
    }
    if (t.header.empty()) throw std::runtime_error(path.string() + ": empty file");
    return t;
}

double parse_number(const std::string& cell) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) {
        throw std::invalid_argument("not a number: '" + cell + "'");
    }
    return v;
}

}  // namespace aptf::cli
