#include "rcgcat/gdist.hpp"

#include <algorithm>
#include <cmath>

#include "rcgcat/error.hpp"

namespace rcgcat {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

double subrcg_distance(const Rcg& ga, const Embedding& ea, const Rcg& gb, const Embedding& eb) {
  if (ea.vertex_map.size() != eb.vertex_map.size())
    throw DataError("subrcg_distance: embeddings of different structure size");
  const std::size_t n = ea.vertex_map.size();
  double total = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    const auto& fa = ga.feature(ea.vertex_map[r]).histogram;
    const auto& fb = gb.feature(eb.vertex_map[r]).histogram;
    if (fa.size() != fb.size()) throw DataError("subrcg_distance: feature dimension mismatch");
    for (std::size_t d = 0; d < fa.size(); ++d) {
      const double diff = fa[d] - fb[d];
      total += diff * diff;
    }
  }
  return clamp01(total / (2.0 * static_cast<double>(n)));
}

SetProfile profile_embedding_set(const EmbeddingSet& set) {
  SetProfile p;
  p.count = static_cast<int>(set.embeddings.size());
  p.positions = set.structure.n;
  p.dim = set.graph && set.graph->size() > 0 ? set.graph->feature(0).histogram.size() : 0;
  p.sum.assign(static_cast<std::size_t>(p.positions) * p.dim, 0.0);
  p.sumsq.assign(static_cast<std::size_t>(p.positions), 0.0);
  for (const Embedding& e : set.embeddings) {
    for (int r = 0; r < p.positions; ++r) {
      const auto& f = set.graph->feature(e.vertex_map[static_cast<std::size_t>(r)]).histogram;
      double* row = p.sum.data() + static_cast<std::size_t>(r) * p.dim;
      double sq = 0.0;
      for (std::size_t d = 0; d < p.dim; ++d) {
        row[d] += f[d];
        sq += f[d] * f[d];
      }
      p.sumsq[static_cast<std::size_t>(r)] += sq;
    }
  }
  return p;
}

namespace detail {

double de_from_profiles(const SetProfile& a, const SetProfile& b) {
  require_invariant(a.positions == b.positions && a.dim == b.dim,
                    "de_from_profiles: incompatible profiles");
  require_invariant(a.count > 0 && b.count > 0, "de_from_profiles: empty embedding set");
  const auto ca = static_cast<double>(a.count);
  const auto cb = static_cast<double>(b.count);
  double total = 0.0;
  for (int r = 0; r < a.positions; ++r) {
    const double* ra = a.sum.data() + static_cast<std::size_t>(r) * a.dim;
    const double* rb = b.sum.data() + static_cast<std::size_t>(r) * b.dim;
    double dot = 0.0;
    for (std::size_t d = 0; d < a.dim; ++d) dot += ra[d] * rb[d];
    total += cb * a.sumsq[static_cast<std::size_t>(r)] + ca * b.sumsq[static_cast<std::size_t>(r)] -
             2.0 * dot;
  }
  // Single division keeps the result bit-identical under argument swap.
  return clamp01(total / (2.0 * static_cast<double>(a.positions) * ca * cb));
}

}  // namespace detail

double structure_distance_equal(const EmbeddingSet& a, const EmbeddingSet& b) {
  if (a.structure.n != b.structure.n)
    throw DataError("structure_distance_equal: structures differ in size");
  if (a.embeddings.empty() || b.embeddings.empty())
    throw DataError("structure_distance_equal: empty embedding set");
  return detail::de_from_profiles(profile_embedding_set(a), profile_embedding_set(b));
}

std::vector<Structure> enumerate_substructures(const Structure& small, const Structure& large) {
  if (small.n >= large.n)
    throw DataError("enumerate_substructures: |small| must be < |large|");
  return connected_induced_classes(large, small.n);
}

std::shared_ptr<const EmbeddingSet> DistanceContext::embeddings(const Structure& s, const Rcg& g) {
  return cache_.get(s, g);
}

const SetProfile& DistanceContext::profile(const Structure& s, const Rcg& g) {
  const std::pair<std::string, std::uint64_t> key{s.canon, g.uid()};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = profiles_.find(key);
    if (it != profiles_.end()) return *it->second;
  }
  auto computed = std::make_shared<SetProfile>(profile_embedding_set(*cache_.get(s, g)));
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = profiles_.emplace(key, std::move(computed));
  return *it->second;
}

const std::vector<Structure>& DistanceContext::substructure_classes(const Structure& large,
                                                                    int size) {
  const std::pair<std::string, int> key{large.canon, size};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = classes_.find(key);
    if (it != classes_.end()) return *it->second;
  }
  auto computed =
      std::make_shared<std::vector<Structure>>(connected_induced_classes(large, size));
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = classes_.emplace(key, std::move(computed));
  return *it->second;
}

double DistanceContext::structure_distance(const MinedStructure& s, const MinedStructure& sp,
                                           const Rcg& g, const Rcg& gp) {
  const double p = s.support, pp = sp.support;
  if (!(p >= 0.0 && p <= 1.0 && pp >= 0.0 && pp <= 1.0))
    throw DataError("structure_distance: supports must lie in [0,1]");
  const bool a_empty = embeddings(s.structure, g)->embeddings.empty();
  const bool b_empty = embeddings(sp.structure, gp)->embeddings.empty();
  if (a_empty && b_empty) return (1.0 - p) * (1.0 - pp);
  if (a_empty || b_empty) return p + pp - 2.0 * p * pp;
  if (s.structure.n == sp.structure.n)
    return clamp01(p * pp *
                   detail::de_from_profiles(profile(s.structure, g), profile(sp.structure, gp)));
  if (s.structure.n < sp.structure.n) return mismatched(s, g, sp, gp);
  return mismatched(sp, gp, s, g);
}

double DistanceContext::mismatched(const MinedStructure& small, const Rcg& g_small,
                                   const MinedStructure& large, const Rcg& g_large) {
  const SetProfile& small_profile = profile(small.structure, g_small);
  double sum = 0.0;
  int used = 0;
  for (const Structure& c : substructure_classes(large.structure, small.structure.n)) {
    if (embeddings(c, g_large)->embeddings.empty()) continue;
    sum += detail::de_from_profiles(small_profile, profile(c, g_large));
    ++used;
  }
  // `large` embeds in g_large here, so every connected induced class of it
  // does too; the fallback mirrors the one-empty case and is unreachable.
  if (used == 0)
    return small.support + large.support - 2.0 * small.support * large.support;
  return clamp01(small.support * large.support * (sum / static_cast<double>(used)));
}

}  // namespace rcgcat
