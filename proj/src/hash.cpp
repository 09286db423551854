#include "rcgcat/hash.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "rcgcat/error.hpp"

namespace rcgcat {

std::string hash_hex(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return std::string(buf);
}

std::string hash_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read file for hashing: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return hash_hex(buf.str());
}

}  // namespace rcgcat
