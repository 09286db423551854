#include "rcgcat/rcg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>

#include "rcgcat/error.hpp"

namespace rcgcat {

std::uint64_t Rcg::next_uid() {
  static std::atomic<std::uint64_t> counter{0};
  return ++counter;
}

Rcg::Rcg(const Rcg& other)
    : vertices_(other.vertices_),
      edges_(other.edges_),
      adjacency_(other.adjacency_),
      source_(other.source_) {}

Rcg& Rcg::operator=(const Rcg& other) {
  vertices_ = other.vertices_;
  edges_ = other.edges_;
  adjacency_ = other.adjacency_;
  source_ = other.source_;
  uid_ = next_uid();
  return *this;
}

Rcg::Rcg(Rcg&& other) noexcept
    : vertices_(std::move(other.vertices_)),
      edges_(std::move(other.edges_)),
      adjacency_(std::move(other.adjacency_)),
      source_(std::move(other.source_)) {}

Rcg& Rcg::operator=(Rcg&& other) noexcept {
  vertices_ = std::move(other.vertices_);
  edges_ = std::move(other.edges_);
  adjacency_ = std::move(other.adjacency_);
  source_ = std::move(other.source_);
  uid_ = next_uid();
  return *this;
}

Rcg::Rcg(std::vector<RegionFeature> vertices, std::vector<std::pair<int, int>> edges,
         std::string source)
    : vertices_(std::move(vertices)), source_(std::move(source)) {
  const int n = static_cast<int>(vertices_.size());
  if (n < 1) throw DataError("rcg: needs at least one vertex");
  const std::size_t dim = vertices_[0].histogram.size();
  for (const RegionFeature& f : vertices_) {
    if (f.histogram.size() != dim || dim == 0)
      throw DataError("rcg: inconsistent feature dimensions");
    double sum = 0.0;
    for (double v : f.histogram) {
      if (v < 0.0 || !std::isfinite(v)) throw DataError("rcg: histogram entries must be >= 0");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw DataError("rcg: histogram must sum to 1");
  }
  std::set<std::pair<int, int>> normalized;
  for (auto [a, b] : edges) {
    if (a == b) throw DataError("rcg: self-loop");
    if (a > b) std::swap(a, b);
    if (a < 0 || b >= n) throw DataError("rcg: edge endpoint out of range");
    if (!normalized.insert({a, b}).second) throw DataError("rcg: duplicate edge");
  }
  edges_.assign(normalized.begin(), normalized.end());
  adjacency_.assign(static_cast<std::size_t>(n), {});
  for (auto [a, b] : edges_) {
    adjacency_[static_cast<std::size_t>(a)].push_back(b);
    adjacency_[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

bool Rcg::has_edge(int a, int b) const {
  const auto& nbrs = adjacency_[static_cast<std::size_t>(a)];
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

RegionFeature region_histogram(const Image& image, const std::vector<int>& region_pixels,
                               int bins_per_channel) {
  if (region_pixels.empty()) throw DataError("region_histogram: empty region");
  const int b = bins_per_channel;
  if (b != 2 && b != 4 && b != 8 && b != 16)
    throw DataError("region_histogram: bins_per_channel must be one of 2,4,8,16");
  RegionFeature f;
  f.histogram.assign(static_cast<std::size_t>(b) * b * b, 0.0);
  for (int p : region_pixels) {
    const Rgb& px = image.pixels[static_cast<std::size_t>(p)];
    const int br = px.r * b / 256, bg = px.g * b / 256, bb = px.b * b / 256;
    f.histogram[static_cast<std::size_t>(br * b * b + bg * b + bb)] += 1.0;
  }
  const double inv = 1.0 / static_cast<double>(region_pixels.size());
  for (double& v : f.histogram) v *= inv;
  return f;
}

Rcg build_rcg(const Image& image, const RegionMap& regions, int bins_per_channel,
              std::string source) {
  if (regions.width != image.width || regions.height != image.height)
    throw DataError("build_rcg: region map does not match image dimensions");
  std::vector<RegionFeature> features;
  features.reserve(static_cast<std::size_t>(regions.region_count));
  for (const auto& pixels : regions.region_pixels)
    features.push_back(region_histogram(image, pixels, bins_per_channel));

  std::set<std::pair<int, int>> edges;
  const int w = regions.width, h = regions.height;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const int p = y * w + x;
      const int a = regions.region_ids[static_cast<std::size_t>(p)];
      if (x + 1 < w) {
        const int b = regions.region_ids[static_cast<std::size_t>(p) + 1];
        if (a != b) edges.insert({std::min(a, b), std::max(a, b)});
      }
      if (y + 1 < h) {
        const int b = regions.region_ids[static_cast<std::size_t>(p) + w];
        if (a != b) edges.insert({std::min(a, b), std::max(a, b)});
      }
    }
  return Rcg(std::move(features), {edges.begin(), edges.end()}, std::move(source));
}

DegreeStats degree_stats(const Rcg& g) {
  DegreeStats stats;
  for (int v = 0; v < g.size(); ++v) stats.max_degree = std::max(stats.max_degree, g.degree(v));
  stats.mean_degree = 2.0 * static_cast<double>(g.edges().size()) / g.size();
  return stats;
}

}  // namespace rcgcat
