#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace gridnadir {

inline constexpr const char* kToolVersion = "0.1.0";

/// Record of one successful CLI run: the command, its input files, the seed
/// and the SHA-256 of every artifact it produced. Written next to the
/// outputs; contains nothing volatile, so reruns are byte-identical.
struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::vector<std::filesystem::path> artifacts;

    void write(const std::filesystem::path& file) const;
};

}  // namespace gridnadir
