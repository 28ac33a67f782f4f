// csv.hpp: fixed-header CSV writing and minimal reading

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace aptf::cli {

/// Rows are formatted with %.<precision>g; the header is fixed at construction.
class CsvWriter {
public:
    CsvWriter(std::vector<std::string> header, int precision = 15);

    /// Throws std::invalid_argument when the row width differs from the header.
    void row(const std::vector<double>& values);
    /// Leading text cells followed by numbers.
    void row(const std::vector<std::string>& text, const std::vector<double>& values);

    [[nodiscard]] const std::string& str() const noexcept { return buffer_; }

private:
    std::size_t width_;
    std::string format_;
    std::string buffer_;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index by header name; throws std::invalid_argument if absent.
    [[nodiscard]] std::size_t column(const std::string& name) const;
};

/// Comma-separated, first line is the header, blank lines skipped, no quoting.
/// Throws std::runtime_error on I/O failure or ragged rows.
[[nodiscard]] CsvTable read_csv(const std::filesystem::path& path);

/// Strict decimal parse; throws std::invalid_argument naming the cell.
[[nodiscard]] double parse_number(const std::string& cell);

}  // namespace aptf::cli
