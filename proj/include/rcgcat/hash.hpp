#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace rcgcat {

// FNV-1a 64. Not cryptographic; used only to detect input/artifact drift.
inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::string_view bytes);
std::string hash_file(const std::filesystem::path& path);

}  // namespace rcgcat
