#include "rcgcat/mine.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rcgcat/error.hpp"
#include "rcgcat/extract.hpp"
#include "rcgcat/parallel.hpp"

namespace rcgcat {

namespace {

double support_of(const Structure& s, const std::vector<Rcg>& rcgs, int jobs) {
  std::vector<char> hit(rcgs.size(), 0);
  parallel_for(rcgs.size(), jobs,
               [&](std::size_t i) { hit[i] = contains(s, rcgs[i]) ? 1 : 0; });
  std::size_t count = 0;
  for (char h : hit) count += static_cast<std::size_t>(h);
  return static_cast<double>(count) / static_cast<double>(rcgs.size());
}

// Candidate pool for one level: seeds plus the closure under single-edge
// additions. Support is not consulted during generation; a dense frequent
// structure may only be reachable through infrequent sparser intermediates.
std::map<std::string, Structure> level_candidates(const std::vector<Structure>& frequent_prev) {
  std::map<std::string, Structure> candidates;
  std::vector<const Structure*> worklist;
  auto add = [&](Structure s) {
    auto [it, inserted] = candidates.emplace(s.canon, std::move(s));
    if (inserted) worklist.push_back(&it->second);
  };
  for (const Structure& f : frequent_prev) {
    for (int v = 0; v < f.n; ++v) {
      auto edges = f.edges;
      edges.emplace_back(v, f.n);
      add(make_structure(f.n + 1, std::move(edges)));
    }
  }
  for (std::size_t head = 0; head < worklist.size(); ++head) {
    const Structure& s = *worklist[head];  // map nodes are stable under insertion
    std::set<std::pair<int, int>> present(s.edges.begin(), s.edges.end());
    for (int a = 0; a < s.n; ++a)
      for (int b = a + 1; b < s.n; ++b) {
        if (present.count({a, b})) continue;
        auto edges = s.edges;
        edges.emplace_back(a, b);
        add(make_structure(s.n, std::move(edges)));
      }
  }
  return candidates;
}

bool passes_apriori(const Structure& candidate, const std::set<std::string>& frequent_canons) {
  for (const Structure& sub : connected_induced_classes(candidate, candidate.n - 1))
    if (!frequent_canons.count(sub.canon)) return false;
  return true;
}

}  // namespace

bool contains(const Structure& s, const Rcg& g) { return has_embedding(s, g); }

std::vector<MinedStructure> mine_frequent(const std::vector<Rcg>& rcgs, double min_support,
                                          int max_structure_size, int jobs) {
  if (rcgs.empty()) throw DataError("mine_frequent: empty training set");
  if (!(min_support > 0.0 && min_support <= 1.0))
    throw DataError("mine_frequent: min_support must be in (0,1]");
  if (max_structure_size < 2 || max_structure_size > kMaxStructureSize)
    throw DataError("mine_frequent: max_structure_size must be in [2," +
                    std::to_string(kMaxStructureSize) + "]");

  std::vector<MinedStructure> output;
  std::vector<Structure> frequent_prev;

  // Level 2: the single edge.
  {
    Structure edge = make_structure(2, {{0, 1}});
    const double support = support_of(edge, rcgs, jobs);
    if (support > min_support) {
      frequent_prev.push_back(edge);
      output.push_back(MinedStructure{std::move(edge), support});
    }
  }

  for (int level = 3; level <= max_structure_size && !frequent_prev.empty(); ++level) {
    std::set<std::string> prev_canons;
    for (const Structure& f : frequent_prev) prev_canons.insert(f.canon);

    std::vector<Structure> countable;
    for (auto& [canon, candidate] : level_candidates(frequent_prev))
      if (passes_apriori(candidate, prev_canons)) countable.push_back(candidate);

    std::vector<double> supports(countable.size(), 0.0);
    parallel_for(countable.size(), jobs,
                 [&](std::size_t i) { supports[i] = support_of(countable[i], rcgs, 1); });

    std::vector<Structure> frequent_here;
    for (std::size_t i = 0; i < countable.size(); ++i) {
      if (supports[i] > min_support) {
        frequent_here.push_back(countable[i]);
        output.push_back(MinedStructure{countable[i], supports[i]});
      }
    }
    frequent_prev = std::move(frequent_here);
  }

  std::sort(output.begin(), output.end(), [](const MinedStructure& a, const MinedStructure& b) {
    if (a.structure.n != b.structure.n) return a.structure.n < b.structure.n;
    return a.structure.canon < b.structure.canon;
  });
  return output;
}

}  // namespace rcgcat
