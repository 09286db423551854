#pragma once

#include <vector>

#include "rcgcat/rcg.hpp"
#include "rcgcat/structure.hpp"

namespace rcgcat {

struct MinedStructure {
  Structure structure;
  double support = 0.0;  // fraction of training RCGs containing >= 1 embedding
};

// True iff g contains at least one connected induced subgraph isomorphic to s.
bool contains(const Structure& s, const Rcg& g);

// Level-wise frequent-structure mining over unlabeled connected graphs.
// Levels are vertex counts starting at 2 (a single edge). Candidates for the
// next level are grown from frequent structures by one new pendant vertex,
// then closed under single-edge additions within the level; the apriori prune
// skips support counting for candidates with an infrequent connected induced
// (k-1)-substructure. Output: support > min_support, sorted by (size, canon).
std::vector<MinedStructure> mine_frequent(const std::vector<Rcg>& rcgs, double min_support,
                                          int max_structure_size, int jobs = 1);

}  // namespace rcgcat
