#include "rcgcat/extract.hpp"

#include <algorithm>

#include "rcgcat/error.hpp"

namespace rcgcat {

namespace {

// Backtracking matcher. Structure vertices are visited in a connectivity
// preserving order; each non-anchor vertex is drawn from the neighbors of an
// already-mapped structure neighbor, then checked for full induced-edge
// consistency against everything mapped so far.
class Matcher {
 public:
  Matcher(const Structure& s, const Rcg& g, bool first_only)
      : s_(s), g_(g), first_only_(first_only) {
    sadj_.assign(static_cast<std::size_t>(s.n), std::vector<bool>(static_cast<std::size_t>(s.n), false));
    sdeg_.assign(static_cast<std::size_t>(s.n), 0);
    for (auto [a, b] : s.edges) {
      sadj_[a][b] = sadj_[b][a] = true;
      ++sdeg_[a];
      ++sdeg_[b];
    }
    // BFS order from structure vertex 0; parent = earlier neighbor.
    order_.reserve(static_cast<std::size_t>(s.n));
    parent_.assign(static_cast<std::size_t>(s.n), -1);
    std::vector<bool> queued(static_cast<std::size_t>(s.n), false);
    order_.push_back(0);
    queued[0] = true;
    for (std::size_t head = 0; head < order_.size(); ++head) {
      const int v = order_[head];
      for (int u = 0; u < s.n; ++u)
        if (sadj_[v][u] && !queued[u]) {
          queued[u] = true;
          parent_[u] = v;
          order_.push_back(u);
        }
    }
    mapped_.assign(static_cast<std::size_t>(s.n), -1);
    used_.assign(static_cast<std::size_t>(g.size()), false);
  }

  void run() {
    if (s_.n > g_.size()) return;  // step 1: size check
    extend(0);
  }

  bool found() const { return found_; }

  std::vector<Embedding> take_embeddings() {
    std::vector<Embedding> out;
    out.reserve(by_set_.size());
    for (auto& [set, vm] : by_set_) out.push_back(Embedding{std::move(vm)});
    return out;
  }

 private:
  void extend(std::size_t pos) {
    if (found_ && first_only_) return;
    if (pos == order_.size()) {
      record();
      return;
    }
    const int sv = order_[pos];
    if (pos == 0) {
      for (int v = 0; v < g_.size(); ++v) {
        try_vertex(pos, sv, v);
        if (found_ && first_only_) return;
      }
    } else {
      for (int v : g_.neighbors(mapped_[parent_[sv]])) {
        try_vertex(pos, sv, v);
        if (found_ && first_only_) return;
      }
    }
  }

  void try_vertex(std::size_t pos, int sv, int v) {
    if (used_[v] || g_.degree(v) < sdeg_[sv]) return;
    for (std::size_t q = 0; q < pos; ++q) {
      const int su = order_[q];
      if (sadj_[sv][su] != g_.has_edge(v, mapped_[su])) return;
    }
    mapped_[sv] = v;
    used_[v] = true;
    extend(pos + 1);
    used_[v] = false;
    mapped_[sv] = -1;
  }

  void record() {
    found_ = true;
    if (first_only_) return;
    std::vector<int> set = mapped_;
    std::sort(set.begin(), set.end());
    auto [it, inserted] = by_set_.emplace(std::move(set), mapped_);
    if (!inserted && mapped_ < it->second) it->second = mapped_;
  }

  const Structure& s_;
  const Rcg& g_;
  const bool first_only_;
  std::vector<std::vector<bool>> sadj_;
  std::vector<int> sdeg_;
  std::vector<int> order_;
  std::vector<int> parent_;
  std::vector<int> mapped_;
  std::vector<bool> used_;
  bool found_ = false;
  std::map<std::vector<int>, std::vector<int>> by_set_;
};

}  // namespace

std::vector<Embedding> extract_subrcgs(const Structure& s, const Rcg& g) {
  Matcher m(s, g, /*first_only=*/false);
  m.run();
  return m.take_embeddings();
}

bool has_embedding(const Structure& s, const Rcg& g) {
  Matcher m(s, g, /*first_only=*/true);
  m.run();
  return m.found();
}

std::shared_ptr<const EmbeddingSet> EmbeddingCache::get(const Structure& s, const Rcg& g) {
  const std::pair<std::string, std::uint64_t> key{s.canon, g.uid()};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = sets_.find(key);
    if (it != sets_.end()) return it->second;
  }
  auto set = std::make_shared<EmbeddingSet>();
  set->structure = s;
  set->graph = &g;
  set->embeddings = extract_subrcgs(s, g);
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = sets_.emplace(key, std::move(set));
  return it->second;  // first insertion wins under races
}

std::vector<std::shared_ptr<const EmbeddingSet>> extract_feature_set(
    const std::vector<Structure>& refined, const Rcg& g, EmbeddingCache& cache) {
  std::vector<std::shared_ptr<const EmbeddingSet>> out;
  out.reserve(refined.size());
  for (const Structure& s : refined) out.push_back(cache.get(s, g));
  return out;
}

}  // namespace rcgcat
