#include "rcgcat/segment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "rcgcat/error.hpp"
#include "rcgcat/rng.hpp"

namespace rcgcat {

namespace {

double sqdist(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  const double dr = a[0] - b[0], dg = a[1] - b[1], db = a[2] - b[2];
  return dr * dr + dg * dg + db * db;
}

// Membership row of one color against all centroids.
void memberships(const std::array<double, 3>& color,
                 const std::vector<std::array<double, 3>>& centroids, double exponent,
                 std::vector<double>& u) {
  const std::size_t k = centroids.size();
  u.assign(k, 0.0);
  std::vector<double> d2(k);
  for (std::size_t i = 0; i < k; ++i) {
    d2[i] = sqdist(color, centroids[i]);
    if (d2[i] == 0.0) {  // exact hit: all weight on the lowest such cluster
      u[i] = 1.0;
      return;
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    double denom = 0.0;
    for (std::size_t l = 0; l < k; ++l) denom += std::pow(d2[i] / d2[l], exponent);
    u[i] = 1.0 / denom;
  }
}

// Label array -> RegionMap with ids compacted in raster first-encounter order.
RegionMap regions_from_labels(const std::vector<int>& labels, int width, int height) {
  RegionMap rm;
  rm.width = width;
  rm.height = height;
  rm.region_ids.assign(labels.size(), -1);
  std::vector<int> stack;
  for (std::size_t start = 0; start < labels.size(); ++start) {
    if (rm.region_ids[start] >= 0) continue;
    const int id = rm.region_count++;
    rm.region_pixels.emplace_back();
    stack.assign(1, static_cast<int>(start));
    rm.region_ids[start] = id;
    while (!stack.empty()) {
      const int p = stack.back();
      stack.pop_back();
      rm.region_pixels[id].push_back(p);
      const int x = p % width, y = p / width;
      const int nbr[4] = {x > 0 ? p - 1 : -1, x + 1 < width ? p + 1 : -1,
                          y > 0 ? p - width : -1, y + 1 < height ? p + width : -1};
      for (int q : nbr) {
        if (q < 0 || rm.region_ids[q] >= 0) continue;
        if (labels[q] != labels[p]) continue;
        rm.region_ids[q] = id;
        stack.push_back(q);
      }
    }
    std::sort(rm.region_pixels[id].begin(), rm.region_pixels[id].end());
  }
  return rm;
}

}  // namespace

ClusterMap fuzzy_cmeans(const Image& image, int k, double fuzziness, double tol,
                        int max_iter, std::uint64_t seed) {
  if (k < 1) throw DataError("fuzzy_cmeans: k must be >= 1");
  if (fuzziness <= 1.0) throw DataError("fuzzy_cmeans: fuzziness must be > 1");
  if (tol <= 0.0) throw DataError("fuzzy_cmeans: tol must be > 0");

  // Cluster over distinct colors weighted by pixel count.
  std::map<Rgb, double> color_weight;
  for (const Rgb& px : image.pixels) color_weight[px] += 1.0;
  std::vector<std::array<double, 3>> colors;
  std::vector<double> weights;
  colors.reserve(color_weight.size());
  for (const auto& [rgb, w] : color_weight) {
    colors.push_back({static_cast<double>(rgb.r), static_cast<double>(rgb.g),
                      static_cast<double>(rgb.b)});
    weights.push_back(w);
  }

  if (static_cast<std::size_t>(k) > colors.size()) {
    std::fprintf(stderr, "fuzzy_cmeans: reducing k from %d to %zu distinct colors\n", k,
                 colors.size());
    k = static_cast<int>(colors.size());
  }

  ClusterMap cm;
  cm.fuzziness = fuzziness;
  cm.k = k;

  // Seeded sampling of k distinct pixel colors: random first pick, then
  // farthest-point among the remaining distinct colors (ties to the lowest
  // color in sort order). Spreading the picks keeps two centroids from
  // landing in one color mode and dithering flat areas apart.
  Rng rng(seed);
  std::vector<double> min_dist(colors.size(), std::numeric_limits<double>::infinity());
  std::size_t pick = rng.next_below(colors.size());
  cm.centroids.push_back(colors[pick]);
  for (int i = 1; i < k; ++i) {
    std::size_t best = 0;
    double best_dist = -1.0;
    for (std::size_t j = 0; j < colors.size(); ++j) {
      min_dist[j] = std::min(min_dist[j], sqdist(colors[j], cm.centroids.back()));
      if (min_dist[j] > best_dist) {
        best_dist = min_dist[j];
        best = j;
      }
    }
    cm.centroids.push_back(colors[best]);
  }

  const double exponent = 1.0 / (fuzziness - 1.0);
  std::vector<double> u;
  std::vector<std::vector<double>> u_all(colors.size());
  for (int iter = 0; iter < max_iter; ++iter) {
    for (std::size_t j = 0; j < colors.size(); ++j) {
      memberships(colors[j], cm.centroids, exponent, u);
      u_all[j] = u;
    }
    // Centroid update with a fixed reduction order over colors.
    double movement = 0.0;
    for (int i = 0; i < k; ++i) {
      std::array<double, 3> num{0, 0, 0};
      double den = 0.0;
      for (std::size_t j = 0; j < colors.size(); ++j) {
        const double w = weights[j] * std::pow(u_all[j][i], fuzziness);
        num[0] += w * colors[j][0];
        num[1] += w * colors[j][1];
        num[2] += w * colors[j][2];
        den += w;
      }
      if (den > 0.0) {
        const std::array<double, 3> next{num[0] / den, num[1] / den, num[2] / den};
        movement = std::max(movement, std::sqrt(sqdist(next, cm.centroids[i])));
        cm.centroids[i] = next;
      }
    }
    double objective = 0.0;
    for (std::size_t j = 0; j < colors.size(); ++j)
      for (int i = 0; i < k; ++i)
        objective += weights[j] * std::pow(u_all[j][i], fuzziness) *
                     sqdist(colors[j], cm.centroids[i]);
    cm.objective_history.push_back(objective);
    if (movement < tol) break;
  }

  // Hard labels against the final centroids.
  std::map<Rgb, int> color_label;
  {
    std::size_t j = 0;
    for (const auto& [rgb, w] : color_weight) {
      (void)w;
      memberships(colors[j], cm.centroids, exponent, u);
      int best = 0;
      for (int i = 1; i < k; ++i)
        if (u[i] > u[best]) best = i;
      color_label[rgb] = best;
      ++j;
    }
  }
  cm.labels.reserve(image.pixels.size());
  for (const Rgb& px : image.pixels) cm.labels.push_back(color_label[px]);
  return cm;
}

RegionMap region_grow(const ClusterMap& clusters, int width, int height) {
  if (clusters.labels.size() != static_cast<std::size_t>(width) * height)
    throw DataError("region_grow: cluster map does not cover the image");
  return regions_from_labels(clusters.labels, width, height);
}

RegionMap merge_small_regions(const RegionMap& regions, int min_pixels) {
  if (min_pixels <= 1) return regions;
  std::vector<int> labels = regions.region_ids;
  const int w = regions.width, h = regions.height;

  for (;;) {
    std::map<int, int> size_of;
    for (int id : labels) ++size_of[id];
    if (size_of.size() <= 1) break;

    int victim = -1;
    for (const auto& [id, size] : size_of) {
      if (size >= min_pixels) continue;
      if (victim < 0 || size < size_of[victim] || (size == size_of[victim] && id < victim))
        victim = id;
    }
    if (victim < 0) break;

    // Largest 4-adjacent neighbor, ties to the lowest id.
    std::map<int, bool> is_neighbor;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const int p = y * w + x;
        if (labels[p] != victim) continue;
        const int nbr[4] = {x > 0 ? p - 1 : -1, x + 1 < w ? p + 1 : -1,
                            y > 0 ? p - w : -1, y + 1 < h ? p + w : -1};
        for (int q : nbr)
          if (q >= 0 && labels[q] != victim) is_neighbor[labels[q]] = true;
      }
    int target = -1;
    for (const auto& [id, flag] : is_neighbor) {
      (void)flag;
      if (target < 0 || size_of[id] > size_of[target]) target = id;
    }
    if (target < 0) break;

    for (int& l : labels)
      if (l == victim) l = target;
  }
  return regions_from_labels(labels, w, h);
}

Image render_region_map(const RegionMap& regions) {
  Image img = make_image(regions.width, regions.height);
  const int denom = std::max(regions.region_count - 1, 1);
  for (std::size_t p = 0; p < regions.region_ids.size(); ++p) {
    const auto level = static_cast<std::uint8_t>(regions.region_ids[p] * 255 / denom);
    img.pixels[p] = Rgb{level, level, level};
  }
  return img;
}

}  // namespace rcgcat
