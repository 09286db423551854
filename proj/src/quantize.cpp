#include "rcgcat/quantize.hpp"

#include <cmath>

#include "rcgcat/error.hpp"
#include "rcgcat/parallel.hpp"

namespace rcgcat {

FeatureVector quantize(const Rcg& g, const LabeledCorpus& training,
                       const std::vector<RefinedStructure>& refined, double lambda,
                       DistanceContext& ctx, std::string image_id) {
  if (refined.empty()) throw DataError("quantize: refined structure set is empty");
  if (training.rcgs.empty()) throw DataError("quantize: training corpus is empty");
  if (!(lambda > 0.0)) throw DataError("quantize: lambda must be > 0");

  FeatureVector fv;
  fv.image_id = std::move(image_id);
  fv.alphas.reserve(training.rcgs.size());
  double norm = 0.0;
  for (const Rcg& train_g : training.rcgs) {
    double total = 0.0;
    for (const RefinedStructure& r : refined)
      total += ctx.structure_distance(r.mined, r.mined, g, train_g);
    const double raw = std::exp(-lambda * total);
    fv.alphas.push_back(raw);
    norm += raw;
  }
  for (double& a : fv.alphas) a /= norm;
  return fv;
}

std::vector<FeatureVector> quantize_corpus(const LabeledCorpus& training,
                                           const std::vector<RefinedStructure>& refined,
                                           double lambda, DistanceContext& ctx, int jobs) {
  std::vector<FeatureVector> rows(training.rcgs.size());
  parallel_for(training.rcgs.size(), jobs, [&](std::size_t i) {
    rows[i] = quantize(training.rcgs[i], training, refined, lambda, ctx,
                       training.rcgs[i].source());
  });
  return rows;
}

}  // namespace rcgcat
