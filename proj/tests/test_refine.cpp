#include <doctest.h>

#include <cmath>

#include "rcgcat/error.hpp"
#include "rcgcat/refine.hpp"
#include "rcgcat/rng.hpp"

#include "testutil.hpp"

using namespace rcgcat;

namespace {

std::vector<double> one_hot(std::size_t dim, std::size_t index) {
  std::vector<double> h(dim, 0.0);
  h[index] = 1.0;
  return h;
}

Rcg single_vertex(std::vector<double> histogram) {
  return Rcg({RegionFeature{std::move(histogram)}}, {});
}

const Structure kVertex = make_structure(1, {});

}  // namespace

TEST_CASE("msd on a balanced corpus with unit pairwise distances is 2.0") {
  // Four one-vertex graphs with pairwise-disjoint one-hots: every structure
  // distance is 1, so MSD counts pairs: 4 between / 2 within.
  LabeledCorpus corpus;
  for (std::size_t i = 0; i < 4; ++i) corpus.rcgs.push_back(single_vertex(one_hot(4, i)));
  corpus.labels = {"a", "a", "b", "b"};
  DistanceContext ctx;
  CHECK(msd(MinedStructure{kVertex, 1.0}, corpus, ctx) == 2.0);
}

TEST_CASE("msd sentinel and zero cases") {
  DistanceContext ctx;
  // Within-class distances all zero, between-class positive -> MAX.
  LabeledCorpus corpus;
  corpus.rcgs = {single_vertex(one_hot(4, 0)), single_vertex(one_hot(4, 0)),
                 single_vertex(one_hot(4, 1)), single_vertex(one_hot(4, 1))};
  corpus.labels = {"a", "a", "b", "b"};
  CHECK(msd(MinedStructure{kVertex, 1.0}, corpus, ctx) == kMsdMax);

  // Everything zero -> 0.
  LabeledCorpus flat;
  flat.rcgs = {single_vertex(one_hot(4, 2)), single_vertex(one_hot(4, 2)),
               single_vertex(one_hot(4, 2)), single_vertex(one_hot(4, 2))};
  flat.labels = {"a", "a", "b", "b"};
  CHECK(msd(MinedStructure{kVertex, 1.0}, flat, ctx) == 0.0);

  LabeledCorpus single_class;
  single_class.rcgs = {single_vertex(one_hot(4, 0)), single_vertex(one_hot(4, 1))};
  single_class.labels = {"a", "a"};
  CHECK_THROWS_AS(msd(MinedStructure{kVertex, 1.0}, single_class, ctx), DataError);
}

TEST_CASE("msd equals a straight-line recomputation on random corpora") {
  Rng rng(37);
  DistanceContext ctx;
  LabeledCorpus corpus;
  for (int i = 0; i < 4; ++i) corpus.rcgs.push_back(testutil::random_rcg(rng, 6, 4, 0.5));
  corpus.labels = {"x", "y", "x", "y"};
  for (int trial = 0; trial < 20; ++trial) {
    const MinedStructure s{testutil::random_structure(rng, 2, 3), rng.next_double()};
    double between = 0.0, within = 0.0;
    for (std::size_t i = 0; i < corpus.rcgs.size(); ++i)
      for (std::size_t j = i + 1; j < corpus.rcgs.size(); ++j) {
        const double d = ctx.structure_distance(s, s, corpus.rcgs[i], corpus.rcgs[j]);
        (corpus.labels[i] != corpus.labels[j] ? between : within) += d;
      }
    const double expected = within == 0.0 ? (between > 0.0 ? kMsdMax : 0.0) : between / within;
    CHECK(msd(s, corpus, ctx) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("msd is invariant under class renaming and corpus permutation") {
  Rng rng(41);
  DistanceContext ctx;
  LabeledCorpus corpus;
  for (int i = 0; i < 5; ++i) corpus.rcgs.push_back(testutil::random_rcg(rng, 6, 4, 0.5));
  corpus.labels = {"a", "b", "a", "b", "a"};
  const MinedStructure s{make_structure(2, {{0, 1}}), 0.7};
  const double base = msd(s, corpus, ctx);

  LabeledCorpus renamed = corpus;
  renamed.labels = {"zebra", "chess", "zebra", "chess", "zebra"};
  CHECK(msd(s, renamed, ctx) == base);

  LabeledCorpus permuted;
  const std::size_t order[] = {4, 2, 0, 3, 1};
  for (std::size_t i : order) {
    permuted.rcgs.push_back(corpus.rcgs[i]);
    permuted.labels.push_back(corpus.labels[i]);
  }
  DistanceContext ctx2;
  CHECK(msd(s, permuted, ctx2) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("msc identities") {
  Rng rng(43);
  DistanceContext ctx;
  LabeledCorpus corpus;
  for (int i = 0; i < 4; ++i) corpus.rcgs.push_back(testutil::random_rcg(rng, 6, 4, 0.5));
  corpus.labels = {"a", "b", "a", "b"};

  const MinedStructure s{make_structure(2, {{0, 1}}), 0.6};
  CHECK(msc(s, s, corpus, ctx) == 0.5);  // identical structure

  // All distances zero -> degenerate convention 0.5.
  LabeledCorpus flat;
  flat.rcgs = {single_vertex(one_hot(4, 0)), single_vertex(one_hot(4, 0))};
  flat.labels = {"a", "b"};
  const MinedStructure v{kVertex, 1.0};
  CHECK(msc(v, v, flat, ctx) == 0.5);
}

TEST_CASE("msc equals a brute-force evaluation and is symmetric") {
  Rng rng(47);
  DistanceContext ctx;
  LabeledCorpus corpus;
  for (int i = 0; i < 3; ++i) corpus.rcgs.push_back(testutil::random_rcg(rng, 7, 4, 0.5));
  corpus.labels = {"a", "b", "a"};
  const MinedStructure s{make_structure(2, {{0, 1}}), 0.8};
  const MinedStructure sp{make_structure(3, {{0, 1}, {1, 2}}), 0.5};

  double cross = 0.0, self_s = 0.0, self_sp = 0.0;
  for (const Rcg& g : corpus.rcgs)
    for (const Rcg& gp : corpus.rcgs) {
      cross += ctx.structure_distance(s, sp, g, gp);
      self_s += ctx.structure_distance(s, s, g, gp);
      self_sp += ctx.structure_distance(sp, sp, g, gp);
    }
  const double expected = (self_s + self_sp) == 0.0 ? 0.5 : cross / (self_s + self_sp);
  CHECK(msc(s, sp, corpus, ctx) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(msc(s, sp, corpus, ctx) == doctest::Approx(msc(sp, s, corpus, ctx)).epsilon(1e-12));
}

TEST_CASE("greedy_msc_select reproduces the hand-traced run in both directions") {
  // Scripted 5-candidate correlation matrix.
  const double m[5][5] = {{0.0, 0.9, 0.3, 0.7, 0.1},
                          {0.9, 0.0, 0.2, 0.5, 0.4},
                          {0.3, 0.2, 0.0, 0.6, 0.8},
                          {0.7, 0.5, 0.6, 0.0, 0.55},
                          {0.1, 0.4, 0.8, 0.55, 0.0}};
  auto correlation = [&](std::size_t i, std::size_t j) { return m[i][j]; };

  // above: head 0 removes 1 (0.9) and 3 (0.7); head 2 removes 4 (0.8).
  CHECK(greedy_msc_select(5, correlation, 0.65, MscRemoval::Above) ==
        std::vector<std::size_t>{0, 2});
  // below: head 0 removes 2 (0.3) and 4 (0.1); head 1 removes 3 (0.5).
  CHECK(greedy_msc_select(5, correlation, 0.65, MscRemoval::Below) ==
        std::vector<std::size_t>{0, 1});
}

TEST_CASE("refine_structures filters by msd and orders by descending score") {
  // Two classes split by feature: the single-edge structure discriminates.
  LabeledCorpus corpus;
  auto edge_graph = [&](std::size_t hot) {
    return Rcg({RegionFeature{one_hot(4, hot)}, RegionFeature{one_hot(4, hot)}}, {{0, 1}});
  };
  corpus.rcgs = {edge_graph(0), edge_graph(0), edge_graph(1), edge_graph(1)};
  corpus.labels = {"a", "a", "b", "b"};

  const std::vector<MinedStructure> candidates = {{make_structure(2, {{0, 1}}), 1.0}};
  DistanceContext ctx;
  RefineParams params;

  const auto kept = refine_structures(candidates, corpus, params, ctx);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].mined.structure.canon == candidates[0].structure.canon);
  CHECK(kept[0].rank == 1);
  CHECK(kept[0].msd == kMsdMax);

  RefineParams impossible;
  impossible.delta_sd = kMsdMax;  // nothing exceeds the sentinel
  CHECK(refine_structures(candidates, corpus, impossible, ctx).empty());

  CHECK_THROWS_AS(refine_structures({}, corpus, params, ctx), DataError);
}

TEST_CASE("refine_structures output respects the msc rule against earlier picks") {
  Rng rng(59);
  LabeledCorpus corpus;
  for (int i = 0; i < 6; ++i) corpus.rcgs.push_back(testutil::random_rcg(rng, 7, 4, 0.5));
  corpus.labels = {"a", "b", "a", "b", "a", "b"};

  std::vector<MinedStructure> candidates = {
      {make_structure(2, {{0, 1}}), 0.9},
      {make_structure(3, {{0, 1}, {1, 2}}), 0.7},
      {make_structure(3, {{0, 1}, {1, 2}, {0, 2}}), 0.4},
      {make_structure(4, {{0, 1}, {1, 2}, {2, 3}}), 0.5},
  };
  DistanceContext ctx;
  RefineParams params;
  params.delta_sd = 0.0;
  params.delta_sc = 0.55;

  const auto kept = refine_structures(candidates, corpus, params, ctx);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    CHECK(kept[i].msd > params.delta_sd);
    if (i > 0) CHECK(kept[i - 1].msd >= kept[i].msd);
    for (std::size_t j = 0; j < i; ++j)
      CHECK_FALSE(msc(kept[j].mined, kept[i].mined, corpus, ctx) > params.delta_sc);
  }
}
