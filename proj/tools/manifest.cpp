#include "manifest.hpp"

#include <openssl/evp.h>

#include <fmt/format.h>

#include "ssco/errors.hpp"

namespace ssco::cli {

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 digest failed");
    std::string out;
    for (unsigned int i = 0; i < length; ++i) out += fmt::format("{:02x}", digest[i]);
    return out;
}

RunManifest::RunManifest(std::string command) : command_(std::move(command)) {}

void RunManifest::add_input(const std::string& role, const std::string& path) {
    if (path == "uniform") {
        inputs_.push_back({{"role", role}, {"path", path}, {"sha256", nullptr}});
        return;
    }
    inputs_.push_back({{"role", role}, {"path", path}, {"sha256", sha256_hex(read_file(path))}});
}

Json RunManifest::to_json() const {
    Json out = {{"command", command_}, {"inputs", inputs_}, {"config", config_}, {"version", tool_version}};
    if (timing_) {
        const auto elapsed = std::chrono::steady_clock::now() - start_;
        out["timing_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
    }
    return out;
}

} // namespace ssco::cli
