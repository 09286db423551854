#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rcgcat/image.hpp"

namespace rcgcat {

struct ClusterMap {
  int k = 0;                 // effective cluster count
  double fuzziness = 2.0;
  std::vector<int> labels;   // per pixel, row-major
  std::vector<std::array<double, 3>> centroids;
  std::vector<double> objective_history;  // one entry per iteration, non-increasing
};

// Fuzzy c-means over RGB triples. Deterministic given seed: centroids are
// initialized from k distinct pixel colors chosen by seeded sampling. If k
// exceeds the number of distinct colors it is reduced (with a warning on
// stderr). Hard labels are argmax membership, ties to the lowest cluster.
ClusterMap fuzzy_cmeans(const Image& image, int k, double fuzziness, double tol,
                        int max_iter, std::uint64_t seed);

struct RegionMap {
  int width = 0;
  int height = 0;
  int region_count = 0;
  std::vector<int> region_ids;                  // per pixel, row-major
  std::vector<std::vector<int>> region_pixels;  // pixel indexes per region
};

// Splits cluster labels into 4-connected regions; ids follow first-encounter
// raster order.
RegionMap region_grow(const ClusterMap& clusters, int width, int height);

// Repeatedly merges regions below min_pixels into their largest 4-adjacent
// neighbor (smallest region first, ties by id) until none remain or a single
// region is left. Ids are re-compacted in raster order.
RegionMap merge_small_regions(const RegionMap& regions, int min_pixels);

Image render_region_map(const RegionMap& regions);  // grayscale preview

}  // namespace rcgcat
