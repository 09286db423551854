#include "rcgcat/dataset.hpp"

#include <algorithm>

#include "rcgcat/error.hpp"

namespace fs = std::filesystem;

namespace rcgcat {

Dataset scan_dataset(const fs::path& root) {
  if (!fs::is_directory(root)) throw DataError("dataset root is not a directory: " + root.string());

  std::vector<std::string> classes;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) classes.push_back(entry.path().filename().string());
  }
  if (classes.empty()) throw DataError("dataset root has no class directories: " + root.string());
  std::sort(classes.begin(), classes.end());

  Dataset ds;
  ds.classes = classes;
  for (const std::string& label : classes) {
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(root / label)) {
      if (!entry.is_regular_file()) continue;
      if (entry.path().extension() != ".ppm") continue;  // non-image files ignored
      files.push_back(entry.path().filename().string());
    }
    if (files.empty()) throw DataError("class directory has no images: " + (root / label).string());
    std::sort(files.begin(), files.end());
    for (const std::string& name : files) {
      ds.items.push_back(DatasetItem{label + "/" + name, root / label / name, label});
    }
  }
  return ds;
}

}  // namespace rcgcat
