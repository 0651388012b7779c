#pragma once

#include <filesystem>
#include <string>

namespace gridnadir {

std::string sha256_hex(const void* data, std::size_t size);
std::string sha256_file(const std::filesystem::path& file);

}  // namespace gridnadir
