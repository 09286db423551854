#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "rcgcat/rcg.hpp"
#include "rcgcat/structure.hpp"

namespace rcgcat {

// A sub-RCG: injective map from structure vertices (canonical order) to RCG
// vertices with induced-subgraph semantics.
struct Embedding {
  std::vector<int> vertex_map;  // structure vertex r -> RCG vertex id
};

struct EmbeddingSet {
  Structure structure;
  const Rcg* graph = nullptr;
  std::vector<Embedding> embeddings;  // one per vertex set, sorted by vertex set
};

// All embeddings of s in g. Anchors on every RCG vertex in id order and
// DFS-extends partial maps with degree and induced-edge pruning. One
// embedding per mapped vertex set survives (the lexicographically smallest
// vertex_map among automorphic alignments); output is sorted by vertex set.
std::vector<Embedding> extract_subrcgs(const Structure& s, const Rcg& g);

// True iff g has at least one connected induced subgraph isomorphic to s.
bool has_embedding(const Structure& s, const Rcg& g);

// Thread-safe memo keyed by (structure canon, graph uid). Keying on the
// process-unique graph id means entries for dead graphs can go stale but can
// never be served for a different graph; each cached set still points at its
// graph, which must outlive any use of that set.
class EmbeddingCache {
 public:
  std::shared_ptr<const EmbeddingSet> get(const Structure& s, const Rcg& g);

 private:
  std::mutex mu_;
  std::map<std::pair<std::string, std::uint64_t>, std::shared_ptr<const EmbeddingSet>> sets_;
};

std::vector<std::shared_ptr<const EmbeddingSet>> extract_feature_set(
    const std::vector<Structure>& refined, const Rcg& g, EmbeddingCache& cache);

}  // namespace rcgcat
