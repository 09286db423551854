#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rcgcat/image.hpp"
#include "rcgcat/segment.hpp"

namespace rcgcat {

// L1-normalized joint RGB histogram of one region.
struct RegionFeature {
  std::vector<double> histogram;
};

// Region connected graph: one vertex per singly connected region, one edge
// per spatially adjacent region pair. Immutable after construction. Every
// instance (including copies) carries a process-unique id so embedding caches
// can never alias a recycled address.
class Rcg {
 public:
  Rcg() = default;
  Rcg(std::vector<RegionFeature> vertices, std::vector<std::pair<int, int>> edges,
      std::string source = {});
  Rcg(const Rcg& other);
  Rcg& operator=(const Rcg& other);
  Rcg(Rcg&& other) noexcept;
  Rcg& operator=(Rcg&& other) noexcept;

  std::uint64_t uid() const { return uid_; }
  int size() const { return static_cast<int>(vertices_.size()); }
  const std::vector<RegionFeature>& vertices() const { return vertices_; }
  const RegionFeature& feature(int v) const { return vertices_[static_cast<std::size_t>(v)]; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(adjacency_[static_cast<std::size_t>(v)].size()); }
  bool has_edge(int a, int b) const;
  const std::string& source() const { return source_; }

 private:
  static std::uint64_t next_uid();

  std::vector<RegionFeature> vertices_;
  std::vector<std::pair<int, int>> edges_;       // normalized: i < j, sorted
  std::vector<std::vector<int>> adjacency_;      // sorted neighbor lists
  std::string source_;
  std::uint64_t uid_ = next_uid();
};

// Joint histogram with b bins per channel (length b^3); bin = floor(c*b/256).
RegionFeature region_histogram(const Image& image, const std::vector<int>& region_pixels,
                               int bins_per_channel);

Rcg build_rcg(const Image& image, const RegionMap& regions, int bins_per_channel,
              std::string source = {});

struct DegreeStats {
  int max_degree = 0;
  double mean_degree = 0.0;
};

DegreeStats degree_stats(const Rcg& g);

}  // namespace rcgcat
