#include "rcgcat/refine.hpp"

#include <algorithm>
#include <set>

#include "rcgcat/error.hpp"
#include "rcgcat/parallel.hpp"

namespace rcgcat {

namespace {

void check_corpus(const LabeledCorpus& corpus) {
  if (corpus.rcgs.size() != corpus.labels.size())
    throw DataError("corpus: rcgs and labels differ in length");
  if (corpus.rcgs.empty()) throw DataError("corpus: empty");
}

// Sum of structure distances over all ordered graph pairs (diagonal included).
double cross_sum(const MinedStructure& a, const MinedStructure& b, const LabeledCorpus& corpus,
                 DistanceContext& ctx) {
  double total = 0.0;
  for (const Rcg& g : corpus.rcgs)
    for (const Rcg& gp : corpus.rcgs) total += ctx.structure_distance(a, b, g, gp);
  return total;
}

}  // namespace

std::vector<std::string> LabeledCorpus::classes() const {
  std::set<std::string> s(labels.begin(), labels.end());
  return {s.begin(), s.end()};
}

double msd(const MinedStructure& s, const LabeledCorpus& corpus, DistanceContext& ctx) {
  check_corpus(corpus);
  if (corpus.classes().size() < 2) throw DataError("msd: corpus must have at least two classes");
  double between = 0.0, within = 0.0;
  for (std::size_t i = 0; i < corpus.rcgs.size(); ++i)
    for (std::size_t j = i + 1; j < corpus.rcgs.size(); ++j) {
      const double d = ctx.structure_distance(s, s, corpus.rcgs[i], corpus.rcgs[j]);
      if (corpus.labels[i] != corpus.labels[j])
        between += d;
      else
        within += d;
    }
  if (within == 0.0) return between > 0.0 ? kMsdMax : 0.0;
  return between / within;
}

double msc(const MinedStructure& a, const MinedStructure& b, const LabeledCorpus& corpus,
           DistanceContext& ctx) {
  check_corpus(corpus);
  const double self_a = cross_sum(a, a, corpus, ctx);
  const double self_b = cross_sum(b, b, corpus, ctx);
  const double denom = self_a + self_b;
  if (denom == 0.0) return 0.5;  // degenerate triangle
  return cross_sum(a, b, corpus, ctx) / denom;
}

std::vector<std::size_t> greedy_msc_select(
    std::size_t count, const std::function<double(std::size_t, std::size_t)>& correlation,
    double delta_sc, MscRemoval removal) {
  std::vector<std::size_t> selected;
  std::vector<bool> removed(count, false);
  for (std::size_t head = 0; head < count; ++head) {
    if (removed[head]) continue;
    for (std::size_t j = head + 1; j < count; ++j) {
      if (removed[j]) continue;
      const double c = correlation(head, j);
      const bool kill = removal == MscRemoval::Above ? c > delta_sc : c < delta_sc;
      if (kill) removed[j] = true;
    }
    selected.push_back(head);
  }
  return selected;
}

std::vector<RefinedStructure> refine_structures(const std::vector<MinedStructure>& candidates,
                                                const LabeledCorpus& corpus,
                                                const RefineParams& params, DistanceContext& ctx,
                                                int jobs) {
  if (candidates.empty()) throw DataError("refine_structures: no candidates");
  check_corpus(corpus);

  std::vector<double> scores(candidates.size(), 0.0);
  parallel_for(candidates.size(), jobs,
               [&](std::size_t i) { scores[i] = msd(candidates[i], corpus, ctx); });

  struct Entry {
    std::size_t index;
    double msd;
  };
  std::vector<Entry> qualified;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (scores[i] > params.delta_sd) qualified.push_back({i, scores[i]});
  std::sort(qualified.begin(), qualified.end(), [&](const Entry& a, const Entry& b) {
    if (a.msd != b.msd) return a.msd > b.msd;
    return candidates[a.index].structure.canon < candidates[b.index].structure.canon;
  });
  if (qualified.empty()) return {};

  // Self sums are reused across every pair the walk touches.
  std::vector<double> self_sum(qualified.size(), 0.0);
  parallel_for(qualified.size(), jobs, [&](std::size_t i) {
    self_sum[i] = cross_sum(candidates[qualified[i].index], candidates[qualified[i].index], corpus, ctx);
  });
  auto correlation = [&](std::size_t i, std::size_t j) {
    const double denom = self_sum[i] + self_sum[j];
    if (denom == 0.0) return 0.5;
    return cross_sum(candidates[qualified[i].index], candidates[qualified[j].index], corpus, ctx) /
           denom;
  };

  std::vector<RefinedStructure> out;
  int rank = 0;
  for (std::size_t i :
       greedy_msc_select(qualified.size(), correlation, params.delta_sc, params.removal)) {
    out.push_back(RefinedStructure{candidates[qualified[i].index], qualified[i].msd, ++rank});
  }
  return out;
}

}  // namespace rcgcat
