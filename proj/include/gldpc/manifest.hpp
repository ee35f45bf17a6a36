#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace gldpc {

inline constexpr const char* kVersion = "0.1.0";

// Record of one CLI run: the full invocation, resolved parameters, seed, and
// FNV-1a digests of every file read and written. Replaying the stored argv on
// the same build must reproduce outputs with identical digests.
struct RunManifest {
    std::string command;
    std::vector<std::string> argv;
    nlohmann::json params = nlohmann::json::object();
    uint64_t seed = 0;
    std::string version = kVersion;
    std::map<std::string, std::string> inputs;   // path -> digest (hex)
    std::map<std::string, std::string> outputs;  // path -> digest (hex)
    double wall_seconds = 0.0;
};

// 64-bit FNV-1a over the file's bytes, as a 16-digit hex string.
std::string file_digest(const std::string& path);

void write_manifest(const RunManifest& m, const std::string& path);
RunManifest read_manifest(const std::string& path);

}  // namespace gldpc
