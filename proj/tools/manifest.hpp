#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "ssco/io.hpp"

namespace ssco::cli {

inline constexpr const char* tool_version = "1.0.0";

/// Provenance of one report: command, input digests, configuration and version.
/// Wall time is recorded only on request so that reports stay reproducible.
class RunManifest {
public:
    explicit RunManifest(std::string command);

    /// Records the SHA-256 digest of an input file.
    void add_input(const std::string& role, const std::string& path);
    void set_config(const std::string& key, Json value) { config_[key] = std::move(value); }
    void enable_timing() { timing_ = true; }

    Json to_json() const;

private:
    std::string command_;
    Json inputs_ = Json::array();
    Json config_ = Json::object();
    bool timing_ = false;
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Lower-case hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

} // namespace ssco::cli
