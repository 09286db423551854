#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace rcgcat {

struct DatasetItem {
  std::string id;  // "<class>/<filename>", stable across roots
  std::filesystem::path path;
  std::string label;
};

// On-disk layout: <root>/<class-name>/<image>.ppm
struct Dataset {
  std::vector<DatasetItem> items;     // sorted by (label, filename)
  std::vector<std::string> classes;   // sorted lexicographically
};

Dataset scan_dataset(const std::filesystem::path& root);

}  // namespace rcgcat
