#include <doctest.h>

#include <filesystem>

#include "rcgcat/error.hpp"
#include "rcgcat/pipeline.hpp"
#include "rcgcat/rcg.hpp"
#include "rcgcat/rng.hpp"
#include "rcgcat/synth.hpp"

using namespace rcgcat;

TEST_CASE("region_histogram is one-hot for flat regions") {
  const Image img = make_image(4, 4, Rgb{0, 0, 0});
  std::vector<int> all(16);
  for (int i = 0; i < 16; ++i) all[i] = i;
  const RegionFeature f = region_histogram(img, all, 16);
  REQUIRE(f.histogram.size() == 4096);
  CHECK(f.histogram[0] == 1.0);
  for (std::size_t i = 1; i < f.histogram.size(); ++i) CHECK(f.histogram[i] == 0.0);
}

TEST_CASE("region_histogram splits mass between black and white halves") {
  Image img = make_image(4, 2, Rgb{0, 0, 0});
  for (int x = 0; x < 4; ++x) img.at(x, 1) = Rgb{255, 255, 255};
  std::vector<int> all(8);
  for (int i = 0; i < 8; ++i) all[i] = i;
  const RegionFeature f = region_histogram(img, all, 16);
  CHECK(f.histogram[0] == 0.5);
  CHECK(f.histogram[4095] == 0.5);
}

TEST_CASE("region_histogram matches a direct counting oracle") {
  Rng rng(3);
  Image img = make_image(6, 6);
  for (Rgb& px : img.pixels)
    px = Rgb{static_cast<std::uint8_t>(rng.next_below(256)),
             static_cast<std::uint8_t>(rng.next_below(256)),
             static_cast<std::uint8_t>(rng.next_below(256))};
  std::vector<int> region;
  for (int i = 0; i < 36; ++i)
    if (rng.next_double() < 0.6) region.push_back(i);
  if (region.empty()) region.push_back(0);

  const int b = 4;
  const RegionFeature f = region_histogram(img, region, b);
  std::vector<double> oracle(static_cast<std::size_t>(b * b * b), 0.0);
  for (int p : region) {
    const Rgb& px = img.pixels[static_cast<std::size_t>(p)];
    oracle[static_cast<std::size_t>((px.r * b / 256) * b * b + (px.g * b / 256) * b +
                                    px.b * b / 256)] += 1.0 / static_cast<double>(region.size());
  }
  REQUIRE(f.histogram.size() == oracle.size());
  for (std::size_t i = 0; i < oracle.size(); ++i)
    CHECK(f.histogram[i] == doctest::Approx(oracle[i]).epsilon(1e-12));
}

TEST_CASE("region_histogram rejects empty regions and bad bin counts") {
  const Image img = make_image(2, 2);
  CHECK_THROWS_AS(region_histogram(img, {}, 4), DataError);
  CHECK_THROWS_AS(region_histogram(img, {0}, 3), DataError);
}

TEST_CASE("build_rcg on a left/right split gives two vertices and one edge") {
  Image img = make_image(4, 2, Rgb{0, 0, 0});
  for (int y = 0; y < 2; ++y)
    for (int x = 2; x < 4; ++x) img.at(x, y) = Rgb{255, 255, 255};
  ClusterMap cm;
  cm.k = 2;
  cm.labels = {0, 0, 1, 1, 0, 0, 1, 1};
  const Rcg g = build_rcg(img, region_grow(cm, 4, 2), 4);
  CHECK(g.size() == 2);
  CHECK(g.edges().size() == 1);
}

TEST_CASE("build_rcg on a 3x3 region grid gives the grid graph") {
  // 9 regions of 2x2 pixels each, all distinct clusters.
  const int w = 6, h = 6;
  Image img = make_image(w, h);
  ClusterMap cm;
  cm.k = 9;
  cm.labels.resize(36);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const int cell = (y / 2) * 3 + x / 2;
      cm.labels[y * w + x] = cell;
      img.at(x, y) = Rgb{static_cast<std::uint8_t>(cell * 20), 0, 0};
    }
  const Rcg g = build_rcg(img, region_grow(cm, w, h), 4);
  CHECK(g.size() == 9);
  CHECK(g.edges().size() == 12);  // 3x3 grid graph
}

TEST_CASE("rcg constructor enforces its invariants") {
  std::vector<RegionFeature> ok = {{{1.0, 0.0}}, {{0.5, 0.5}}};
  CHECK_THROWS_AS(Rcg({}, {}), DataError);
  CHECK_THROWS_AS(Rcg(ok, {{0, 0}}), DataError);             // self loop
  CHECK_THROWS_AS(Rcg(ok, {{0, 1}, {1, 0}}), DataError);     // duplicate edge
  CHECK_THROWS_AS(Rcg(ok, {{0, 2}}), DataError);             // endpoint out of range
  CHECK_THROWS_AS(Rcg({{{0.7, 0.7}}}, {}), DataError);       // not a probability vector
  const Rcg g(ok, {{1, 0}});
  CHECK(g.has_edge(0, 1));
  CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 1}});
}

TEST_CASE("degree_stats on simple graphs") {
  std::vector<RegionFeature> one = {{{1.0}}};
  const DegreeStats lonely = degree_stats(Rcg(one, {}));
  CHECK(lonely.max_degree == 0);
  CHECK(lonely.mean_degree == 0.0);

  std::vector<RegionFeature> three = {{{1.0}}, {{1.0}}, {{1.0}}};
  const DegreeStats triangle = degree_stats(Rcg(three, {{0, 1}, {1, 2}, {0, 2}}));
  CHECK(triangle.max_degree == 2);
  CHECK(triangle.mean_degree == 2.0);
}

TEST_CASE("default generator yields low-degree RCGs") {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "rcgcat_test_degree";
  fs::remove_all(root);
  SynthConfig cfg = default_synth_config();
  cfg.count_per_class = 2;
  const Dataset ds = synth_dataset(cfg, root);
  const PipelineConfig pipeline;
  for (const DatasetItem& item : ds.items) {
    const Rcg g = image_to_rcg(load_image(item.path), pipeline, item.id);
    const DegreeStats stats = degree_stats(g);
    CHECK(stats.mean_degree < 4.0);
    CHECK(stats.max_degree <= 15);
  }
  fs::remove_all(root);
}
