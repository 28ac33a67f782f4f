// manifest.hpp: atomic output writing with a SHA-256 manifest

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

namespace aptf::cli {

/// Lowercase hex SHA-256 of `data`.
[[nodiscard]] std::string sha256_hex(const std::string& data);

/// Write via a temporary sibling and rename. Throws std::runtime_error.
void write_atomic(const std::filesystem::path& path, const std::string& data);

/// Outputs are buffered until commit(), which writes every file and then
/// manifest.json listing name, byte count and SHA-256 in name order. Nothing
/// time- or host-dependent is recorded, so identical runs give identical bytes.
class OutputSet {
public:
    OutputSet(std::string version, std::string command);

    /// Throws std::invalid_argument on a duplicate or path-like name.
    void add(const std::string& name, std::string content);
    void set_seed(std::uint64_t seed) { seed_ = seed; has_seed_ = true; }

    [[nodiscard]] const std::map<std::string, std::string>& files() const noexcept { return files_; }
    [[nodiscard]] std::string manifest() const;

    void commit(const std::filesystem::path& directory) const;

private:
    std::string version_;
    std::string command_;
    std::uint64_t seed_ = 0;
    bool has_seed_ = false;
    std::map<std::string, std::string> files_;
};

}  // namespace aptf::cli
