#pragma once

#include <string>
#include <vector>

#include "rcgcat/gdist.hpp"
#include "rcgcat/refine.hpp"

namespace rcgcat {

// Length-n representation of an image against the training corpus:
// alpha_i ~ exp(-lambda * sum_S d(S_G, S_G_i)), L1-normalized.
struct FeatureVector {
  std::string image_id;
  std::vector<double> alphas;  // probability vector, entries in (0,1]
};

FeatureVector quantize(const Rcg& g, const LabeledCorpus& training,
                       const std::vector<RefinedStructure>& refined, double lambda,
                       DistanceContext& ctx, std::string image_id = {});

// Row i = quantize(training graph i) against the full corpus.
std::vector<FeatureVector> quantize_corpus(const LabeledCorpus& training,
                                           const std::vector<RefinedStructure>& refined,
                                           double lambda, DistanceContext& ctx, int jobs = 1);

}  // namespace rcgcat
