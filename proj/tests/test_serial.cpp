#include <doctest.h>

#include <filesystem>

#include "rcgcat/error.hpp"
#include "rcgcat/pipeline.hpp"
#include "rcgcat/rng.hpp"
#include "rcgcat/serial.hpp"

#include "testutil.hpp"

using namespace rcgcat;

TEST_CASE("rcg json round trip preserves the graph") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Rcg g = testutil::random_rcg(rng, 7, 4, 0.5);
    const Rcg back = rcg_from_json(rcg_to_json(g));
    CHECK(back.size() == g.size());
    CHECK(back.edges() == g.edges());
    for (int v = 0; v < g.size(); ++v)
      CHECK(back.feature(v).histogram == g.feature(v).histogram);
  }
}

TEST_CASE("region map json round trip and schema") {
  RegionMap rm;
  rm.width = 2;
  rm.height = 2;
  rm.region_count = 2;
  rm.region_ids = {0, 0, 1, 1};
  rm.region_pixels = {{0, 1}, {2, 3}};
  const json j = region_map_to_json(rm);
  CHECK(j.at("K") == 2);
  CHECK(j.at("width") == 2);
  const RegionMap back = region_map_from_json(j);
  CHECK(back.region_ids == rm.region_ids);
  CHECK(back.region_pixels == rm.region_pixels);
}

TEST_CASE("structure artifacts round trip and reject drifted canon") {
  const Structure s = make_structure(4, {{0, 1}, {1, 2}, {2, 3}});
  const MinedStructure m{s, 0.75};
  const MinedStructure back = mined_from_json(mined_to_json(m));
  CHECK(back.structure.canon == s.canon);
  CHECK(back.support == 0.75);

  json j = structure_to_json(s);
  j["canon"] = "4:0";
  CHECK_THROWS_AS(structure_from_json(j), DataError);
}

TEST_CASE("refined structure json carries msd (including the sentinel) and rank") {
  const RefinedStructure r{{make_structure(2, {{0, 1}}), 1.0}, kMsdMax, 3};
  const RefinedStructure back = refined_from_json(refined_to_json(r));
  CHECK(back.msd == kMsdMax);
  CHECK(back.rank == 3);
}

TEST_CASE("svm model json round trip") {
  SvmModel m;
  m.classes = {"a", "b"};
  m.weights = {{0.25, -1.5}, {0.0, 3.0}};
  m.biases = {0.125, -0.5};
  m.config = {2.0, 17, 99};
  m.objective_history = {1.5, 1.0};
  const SvmModel back = model_from_json(model_to_json(m));
  CHECK(back.classes == m.classes);
  CHECK(back.weights == m.weights);
  CHECK(back.biases == m.biases);
  CHECK(back.config.C == 2.0);
  CHECK(back.config.epochs == 17);
  CHECK(back.config.seed == 99);
}

TEST_CASE("pipeline config round trips through json with defaults") {
  PipelineConfig config;
  config.refinement.removal = MscRemoval::Below;
  config.mining.min_support = 0.4;
  const PipelineConfig back = config_from_json(config_to_json(config));
  CHECK(back.refinement.removal == MscRemoval::Below);
  CHECK(back.mining.min_support == 0.4);
  CHECK(back.svm.epochs == config.svm.epochs);

  // Absent keys fall back to defaults; invalid values are rejected.
  const PipelineConfig sparse = config_from_json(json{{"mining", {{"min_support", 0.3}}}});
  CHECK(sparse.mining.min_support == 0.3);
  CHECK(sparse.segmentation.k == 6);
  CHECK_THROWS_AS(config_from_json(json{{"mining", {{"min_support", 0.0}}}}), DataError);
  CHECK_THROWS_AS(config_from_json(json{{"refinement", {{"msc_removal", "sideways"}}}}),
                  DataError);
}

TEST_CASE("feature matrix csv export") {
  std::vector<FeatureVector> rows = {{"img0", {0.5, 0.5}}, {"img1", {0.25, 0.75}}};
  const json artifact = feature_matrix_to_json(rows, {"a", "b"}, {"img0", "img1"});
  const std::string csv = feature_matrix_to_csv(artifact);
  CHECK(csv.find("image_id,img0,img1") == 0);
  CHECK(csv.find("img1,0.25,0.75") != std::string::npos);
}
