#include "rcgcat/structure.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>

#include "rcgcat/error.hpp"

namespace rcgcat {

namespace {

// Upper-triangle bit index of pair (i, j), i < j, in lexicographic order.
int pair_bit(int n, int i, int j) { return i * (2 * n - i - 1) / 2 + (j - i - 1); }

std::vector<std::vector<bool>> adjacency(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n),
                                     std::vector<bool>(static_cast<std::size_t>(n), false));
  for (auto [a, b] : edges) {
    if (a == b) throw DataError("structure: self-loop");
    if (a < 0 || b < 0 || a >= n || b >= n) throw DataError("structure: edge endpoint out of range");
    if (adj[a][b]) throw DataError("structure: duplicate edge");
    adj[a][b] = adj[b][a] = true;
  }
  return adj;
}

// Packed code under the permutation p (p[i] = original vertex at position i).
// The first pair is the most significant bit.
std::uint32_t code_under(const std::vector<std::vector<bool>>& adj, const std::vector<int>& p) {
  const int n = static_cast<int>(p.size());
  const int m = n * (n - 1) / 2;
  std::uint32_t code = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (adj[p[i]][p[j]]) code |= 1u << (m - 1 - pair_bit(n, i, j));
  return code;
}

std::string format_canon(int n, std::uint32_t code) {
  const int m = n * (n - 1) / 2;
  const int hex_width = std::max(1, (m + 3) / 4);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%d:%0*x", n, hex_width, code);
  return std::string(buf);
}

}  // namespace

bool is_connected(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n <= 0) return false;
  std::vector<std::vector<int>> nbrs(static_cast<std::size_t>(n));
  for (auto [a, b] : edges) {
    nbrs[a].push_back(b);
    nbrs[b].push_back(a);
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u : nbrs[v])
      if (!seen[u]) {
        seen[u] = true;
        ++count;
        stack.push_back(u);
      }
  }
  return count == n;
}

std::string canonical_form(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 1 || n > kMaxStructureSize)
    throw DataError("canonical_form: vertex count out of range [1," +
                    std::to_string(kMaxStructureSize) + "]");
  const auto adj = adjacency(n, edges);
  if (!is_connected(n, edges)) throw DataError("canonical_form: graph is disconnected");

  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::uint32_t best = code_under(adj, perm);
  while (std::next_permutation(perm.begin(), perm.end()))
    best = std::min(best, code_under(adj, perm));
  return format_canon(n, best);
}

Structure make_structure(int n, std::vector<std::pair<int, int>> edges) {
  if (n < 1 || n > kMaxStructureSize)
    throw DataError("structure: vertex count out of range [1," +
                    std::to_string(kMaxStructureSize) + "]");
  const auto adj = adjacency(n, edges);
  if (!is_connected(n, edges)) throw DataError("structure: graph is disconnected");

  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best_perm = perm;
  std::uint32_t best = code_under(adj, perm);
  while (std::next_permutation(perm.begin(), perm.end())) {
    const std::uint32_t code = code_under(adj, perm);
    if (code < best) {
      best = code;
      best_perm = perm;
    }
  }

  // position_of[original] = canonical label
  std::vector<int> position_of(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) position_of[best_perm[i]] = i;

  Structure s;
  s.n = n;
  for (auto [a, b] : edges) {
    int i = position_of[a], j = position_of[b];
    if (i > j) std::swap(i, j);
    s.edges.emplace_back(i, j);
  }
  std::sort(s.edges.begin(), s.edges.end());
  s.canon = format_canon(n, best);
  return s;
}

std::vector<Structure> connected_induced_classes(const Structure& s, int size) {
  if (size < 1 || size > s.n) throw DataError("connected_induced_classes: bad size");
  std::map<std::string, Structure> classes;
  std::vector<int> subset(static_cast<std::size_t>(size));
  // Enumerate all size-subsets of [0, n).
  std::vector<int> pick(static_cast<std::size_t>(size));
  std::iota(pick.begin(), pick.end(), 0);
  for (;;) {
    std::vector<int> position(static_cast<std::size_t>(s.n), -1);
    for (int i = 0; i < size; ++i) position[pick[i]] = i;
    std::vector<std::pair<int, int>> induced;
    for (auto [a, b] : s.edges)
      if (position[a] >= 0 && position[b] >= 0)
        induced.emplace_back(std::min(position[a], position[b]),
                             std::max(position[a], position[b]));
    if (is_connected(size, induced)) {
      Structure sub = make_structure(size, std::move(induced));
      classes.emplace(sub.canon, std::move(sub));
    }
    // next combination
    int i = size - 1;
    while (i >= 0 && pick[i] == s.n - size + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
  }
  std::vector<Structure> out;
  out.reserve(classes.size());
  for (auto& [canon, st] : classes) out.push_back(std::move(st));
  return out;
}

}  // namespace rcgcat
