#include <doctest.h>

#include <map>
#include <numeric>

#include "rcgcat/error.hpp"
#include "rcgcat/rng.hpp"
#include "rcgcat/segment.hpp"
#include "rcgcat/synth.hpp"

using namespace rcgcat;

namespace {

Image two_tone_image() {
  Image img = make_image(8, 8, Rgb{0, 0, 0});
  for (int y = 0; y < 8; ++y)
    for (int x = 4; x < 8; ++x) img.at(x, y) = Rgb{255, 255, 255};
  return img;
}

// Independent union-find over 4-adjacent equal labels.
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

int component_count(const std::vector<int>& labels, int w, int h) {
  UnionFind uf(labels.size());
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const int p = y * w + x;
      if (x + 1 < w && labels[p] == labels[p + 1]) uf.unite(p, p + 1);
      if (y + 1 < h && labels[p] == labels[p + w]) uf.unite(p, p + w);
    }
  std::map<int, int> roots;
  for (std::size_t p = 0; p < labels.size(); ++p) roots[uf.find(static_cast<int>(p))] = 1;
  return static_cast<int>(roots.size());
}

}  // namespace

TEST_CASE("fuzzy_cmeans separates black and white perfectly") {
  const Image img = two_tone_image();
  const ClusterMap cm = fuzzy_cmeans(img, 2, 2.0, 1e-4, 300, 1);
  REQUIRE(cm.k == 2);
  // Labels must split exactly along color.
  const int label_black = cm.labels[0];
  const int label_white = cm.labels[7];
  CHECK(label_black != label_white);
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x)
      CHECK(cm.labels[y * 8 + x] == (x < 4 ? label_black : label_white));
  for (int c = 0; c < 3; ++c) {
    CHECK(cm.centroids[label_black][c] == doctest::Approx(0.0).epsilon(1e-3));
    CHECK(cm.centroids[label_white][c] == doctest::Approx(255.0).epsilon(1e-3));
  }
}

TEST_CASE("fuzzy_cmeans with k=1 yields the mean color") {
  const Image img = two_tone_image();
  const ClusterMap cm = fuzzy_cmeans(img, 1, 2.0, 1e-4, 300, 1);
  for (int label : cm.labels) CHECK(label == 0);
  for (int c = 0; c < 3; ++c) CHECK(cm.centroids[0][c] == doctest::Approx(127.5).epsilon(1e-9));
}

TEST_CASE("fuzzy_cmeans matches the exact grouping oracle on a 3-color image") {
  Image img = make_image(9, 3);
  const Rgb colors[3] = {{10, 0, 0}, {0, 200, 0}, {40, 40, 250}};
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 9; ++x) img.at(x, y) = colors[x / 3];
  const ClusterMap cm = fuzzy_cmeans(img, 3, 2.0, 1e-6, 500, 3);
  REQUIRE(cm.k == 3);
  // Exact grouping oracle: per-color means are the colors themselves.
  for (int group = 0; group < 3; ++group) {
    const int label = cm.labels[group * 3];
    for (int c = 0; c < 3; ++c) {
      const double expected = c == 0 ? colors[group].r : c == 1 ? colors[group].g : colors[group].b;
      CHECK(cm.centroids[label][c] == doctest::Approx(expected).epsilon(1e-3));
    }
  }
}

TEST_CASE("fuzzy_cmeans objective is non-increasing") {
  Rng rng(99);
  Image img = make_image(12, 12);
  for (Rgb& px : img.pixels)
    px = Rgb{static_cast<std::uint8_t>(rng.next_below(256)),
             static_cast<std::uint8_t>(rng.next_below(256)),
             static_cast<std::uint8_t>(rng.next_below(256))};
  const ClusterMap cm = fuzzy_cmeans(img, 4, 2.0, 1e-6, 100, 5);
  for (std::size_t i = 1; i < cm.objective_history.size(); ++i)
    CHECK(cm.objective_history[i] <= cm.objective_history[i - 1] * (1 + 1e-12) + 1e-9);
}

TEST_CASE("fuzzy_cmeans reduces k beyond the distinct color count") {
  const Image img = make_image(4, 4, Rgb{5, 5, 5});  // one distinct color
  const ClusterMap cm = fuzzy_cmeans(img, 3, 2.0, 1e-4, 50, 1);
  CHECK(cm.k == 1);
}

TEST_CASE("region_grow splits clusters into 4-connected components") {
  ClusterMap cm;
  cm.k = 1;
  cm.labels.assign(16, 0);
  const RegionMap uniform = region_grow(cm, 4, 4);
  CHECK(uniform.region_count == 1);

  // 2x2 checkerboard: diagonal pixels are not 4-adjacent.
  ClusterMap checker;
  checker.k = 2;
  checker.labels = {0, 1, 1, 0};
  const RegionMap rm = region_grow(checker, 2, 2);
  CHECK(rm.region_count == 4);
}

TEST_CASE("region_grow separates disconnected blobs of one cluster") {
  // One cluster split into two blobs by a stripe of another cluster.
  ClusterMap cm;
  cm.k = 2;
  cm.labels = {0, 1, 0,
               0, 1, 0,
               0, 1, 0};
  const RegionMap rm = region_grow(cm, 3, 3);
  CHECK(rm.region_count == 3);
  CHECK(rm.region_ids[0] != rm.region_ids[2]);  // same cluster, distinct regions
}

TEST_CASE("region_grow equals the union-find component oracle on random label maps") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int w = rng.next_int(2, 12), h = rng.next_int(2, 12);
    ClusterMap cm;
    cm.k = 3;
    cm.labels.resize(static_cast<std::size_t>(w) * h);
    for (int& l : cm.labels) l = rng.next_int(0, 2);
    const RegionMap rm = region_grow(cm, w, h);
    CHECK(rm.region_count == component_count(cm.labels, w, h));
    // partition: sizes sum to the pixel count, every pixel assigned
    std::size_t total = 0;
    for (const auto& pixels : rm.region_pixels) total += pixels.size();
    CHECK(total == cm.labels.size());
    // region ids and pixel lists agree
    for (int r = 0; r < rm.region_count; ++r)
      for (int p : rm.region_pixels[static_cast<std::size_t>(r)])
        CHECK(rm.region_ids[static_cast<std::size_t>(p)] == r);
  }
}

TEST_CASE("merge_small_regions removes specks and respects min_pixels") {
  ClusterMap cm;
  cm.k = 2;
  cm.labels.assign(25, 0);
  cm.labels[12] = 1;  // single-pixel speck in the middle
  const RegionMap rm = region_grow(cm, 5, 5);
  REQUIRE(rm.region_count == 2);

  CHECK(merge_small_regions(rm, 1).region_count == 2);  // identity
  const RegionMap merged = merge_small_regions(rm, 2);
  CHECK(merged.region_count == 1);
}

TEST_CASE("merge_small_regions leaves no region below the threshold on random maps") {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const int w = rng.next_int(3, 10), h = rng.next_int(3, 10);
    ClusterMap cm;
    cm.k = 4;
    cm.labels.resize(static_cast<std::size_t>(w) * h);
    for (int& l : cm.labels) l = rng.next_int(0, 3);
    const int min_pixels = rng.next_int(2, 5);
    const RegionMap merged = merge_small_regions(region_grow(cm, w, h), min_pixels);
    if (merged.region_count > 1)
      for (const auto& pixels : merged.region_pixels)
        CHECK(static_cast<int>(pixels.size()) >= min_pixels);
  }
}

TEST_CASE("noise-free single square segments into exactly two regions") {
  const Image img = render_motif("single_square", 32, 32, 0.0, 11);
  const ClusterMap cm = fuzzy_cmeans(img, 6, 2.0, 1e-3, 300, 1);
  const RegionMap rm = region_grow(cm, img.width, img.height);
  CHECK(rm.region_count == 2);
}

TEST_CASE("render_region_map produces a grayscale image of matching size") {
  ClusterMap cm;
  cm.k = 2;
  cm.labels = {0, 1, 1, 0};
  const Image img = render_region_map(region_grow(cm, 2, 2));
  CHECK(img.width == 2);
  CHECK(img.height == 2);
  for (const Rgb& px : img.pixels) CHECK(px.r == px.g);
}
