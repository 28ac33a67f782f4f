#include "aptf/cli/manifest.hpp"

#include "json.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>

namespace aptf::cli {

std::string sha256_hex(const std::string& data) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
        throw std::runtime_error("sha256: OpenSSL digest failed");
    }
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

void write_atomic(const std::filesystem::path& path, const std::string& data) {
    const auto tmp = path.parent_path() / ("." + path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out.write(data.data(), static_cast<std::streamsize>(data.size()));
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot rename " + tmp.string() + ": " + ec.message());
    }
}

OutputSet::OutputSet(std::string version, std::string command) : version_(std::move(version)), command_(std::move(command)) {}

void OutputSet::add(const std::string& name, std::string content) {
    if (name.empty() || name == "manifest.json" || name.find('/') != std::string::npos || name.front() == '.') {
        throw std::invalid_argument("OutputSet: bad output name '" + name + "'");
    }
    if (!files_.emplace(name, std::move(content)).second) throw std::invalid_argument("OutputSet: duplicate output '" + name + "'");
}

std::string OutputSet::manifest() const {
    nlohmann::ordered_json m;
    m["version"] = version_;
    m["command"] = command_;
    if (has_seed_) m["seed"] = seed_;
    m["outputs"] = nlohmann::ordered_json::array();
    for (const auto& [name, content] : files_) {
        m["outputs"].push_back({{"file", name}, {"bytes", content.size()}, {"sha256", sha256_hex(content)}});
    }
    return m.dump(2) + "\n";
}

void OutputSet::commit(const std::filesystem::path& directory) const {
    std::filesystem::create_directories(directory);
    for (const auto& [name, content] : files_) write_atomic(directory / name, content);
    write_atomic(directory / "manifest.json", manifest());
}

}  // namespace aptf::cli
