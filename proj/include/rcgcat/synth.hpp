#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rcgcat/dataset.hpp"
#include "rcgcat/image.hpp"

namespace rcgcat {

// Motif vocabulary: "single_square", "square_grid", "blob_ring", "stripes".
// Each class renders tilings of colored shapes so that class identity is
// carried by region topology and palette, not by pixel position alone.
struct SynthClassSpec {
  std::string name;
  std::string motif;
};

struct SynthConfig {
  int width = 64;
  int height = 64;
  int count_per_class = 20;
  double noise = 0.02;  // max per-channel jitter as a fraction of 255
  std::uint64_t seed = 7;
  std::vector<SynthClassSpec> classes;
};

SynthConfig default_synth_config();

// Renders one image of the given motif. Deterministic given the seed.
Image render_motif(const std::string& motif, int width, int height, double noise,
                   std::uint64_t seed);

// Materializes <out_root>/<class>/<class>_NNN.ppm and returns the scanned
// dataset. Identical config => identical bytes.
Dataset synth_dataset(const SynthConfig& config, const std::filesystem::path& out_root);

}  // namespace rcgcat
