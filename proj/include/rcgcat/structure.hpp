#pragma once

#include <string>
#include <utility>
#include <vector>

namespace rcgcat {

// Hard cap for exact canonical forms (all-permutations minimization).
inline constexpr int kMaxStructureSize = 6;

// An isomorphism class of connected unlabeled graphs. Vertices are stored in
// canonical order: the identity labeling realizes the minimal adjacency code,
// which makes positional vertex correspondence across embeddings well-defined.
struct Structure {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // i < j, sorted
  std::string canon;                       // "<n>:<hex of minimal adjacency bits>"

  friend bool operator==(const Structure& a, const Structure& b) { return a.canon == b.canon; }
};

// Minimal adjacency-matrix bitstring over all vertex permutations. Exact for
// n <= kMaxStructureSize; rejects disconnected or oversized input.
std::string canonical_form(int n, const std::vector<std::pair<int, int>>& edges);

// Validates, relabels to canonical vertex order and fills canon.
Structure make_structure(int n, std::vector<std::pair<int, int>> edges);

bool is_connected(int n, const std::vector<std::pair<int, int>>& edges);

// All connected induced subgraphs with `size` vertices, deduplicated by
// canonical form, sorted by canon.
std::vector<Structure> connected_induced_classes(const Structure& s, int size);

}  // namespace rcgcat
