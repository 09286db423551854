#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "rcgcat/extract.hpp"
#include "rcgcat/mine.hpp"
#include "rcgcat/rcg.hpp"
#include "rcgcat/structure.hpp"

namespace rcgcat {

// Positional feature distance between two equal-size embeddings, scaled by
// 1/(2|S|) so it lies in [0,1] for L1-normalized histograms.
double subrcg_distance(const Rcg& ga, const Embedding& ea, const Rcg& gb, const Embedding& eb);

// Mean subrcg_distance over all embedding pairs (the 1/(|Gsub|*|Gsub'|)
// normalizer). Both sets must be non-empty and of equal structure size.
double structure_distance_equal(const EmbeddingSet& a, const EmbeddingSet& b);

// Connected induced subgraph classes of `large` with |small| vertices.
std::vector<Structure> enumerate_substructures(const Structure& small, const Structure& large);

// Per-position first and second moments of an embedding set's features.
// Lets the all-pairs distance sum collapse to O(|A|+|B|) per position:
//   sum_{a,b} ||f_a - f_b||^2 = |B|*Q_A + |A|*Q_B - 2*S_A.S_B
struct SetProfile {
  int count = 0;
  int positions = 0;
  std::size_t dim = 0;
  std::vector<double> sum;    // positions x dim, row-major
  std::vector<double> sumsq;  // per position: sum of ||f||^2
};

SetProfile profile_embedding_set(const EmbeddingSet& set);

namespace detail {
double de_from_profiles(const SetProfile& a, const SetProfile& b);
}

// Memoized evaluation of the generic structure distance. Holds the embedding
// cache, per-set profiles and substructure enumerations; all getters are
// thread-safe and pure, so parallel fills equal sequential ones.
class DistanceContext {
 public:
  DistanceContext() = default;

  std::shared_ptr<const EmbeddingSet> embeddings(const Structure& s, const Rcg& g);
  const SetProfile& profile(const Structure& s, const Rcg& g);
  const std::vector<Structure>& substructure_classes(const Structure& large, int size);
  EmbeddingCache& cache() { return cache_; }

  // Five-case generic structure distance; symmetric under swapping
  // (s, g) <-> (sp, gp) and always in [0,1].
  double structure_distance(const MinedStructure& s, const MinedStructure& sp, const Rcg& g,
                            const Rcg& gp);

 private:
  double mismatched(const MinedStructure& small, const Rcg& g_small, const MinedStructure& large,
                    const Rcg& g_large);

  EmbeddingCache cache_;
  std::mutex mu_;
  std::map<std::pair<std::string, std::uint64_t>, std::shared_ptr<const SetProfile>> profiles_;
  std::map<std::pair<std::string, int>, std::shared_ptr<const std::vector<Structure>>> classes_;
};

}  // namespace rcgcat
