#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "rcgcat/gdist.hpp"
#include "rcgcat/mine.hpp"
#include "rcgcat/rcg.hpp"

namespace rcgcat {

struct LabeledCorpus {
  std::vector<Rcg> rcgs;
  std::vector<std::string> labels;  // parallel to rcgs

  std::vector<std::string> classes() const;  // sorted, distinct
};

// Sentinel for an undefined ratio (zero within-class distance with positive
// between-class distance); ranks above every realistic value.
inline constexpr double kMsdMax = std::numeric_limits<double>::max();

// Between-class to within-class distance ratio over unordered graph pairs.
double msd(const MinedStructure& s, const LabeledCorpus& corpus, DistanceContext& ctx);

// Cross-structure distance sum over all ordered graph pairs, normalized by
// the two self-structure sums. 0.5 when degenerate; msc(s, s) == 0.5.
double msc(const MinedStructure& a, const MinedStructure& b, const LabeledCorpus& corpus,
           DistanceContext& ctx);

enum class MscRemoval { Above, Below };

struct RefineParams {
  double delta_sd = 0.1;
  double delta_sc = 0.65;
  MscRemoval removal = MscRemoval::Above;
};

// Greedy selection core: walks candidates in their given order; each selected
// head removes every later candidate whose correlation with it trips the
// threshold. Returns selected indexes in selection order.
std::vector<std::size_t> greedy_msc_select(
    std::size_t count, const std::function<double(std::size_t, std::size_t)>& correlation,
    double delta_sc, MscRemoval removal);

struct RefinedStructure {
  MinedStructure mined;
  double msd = 0.0;
  int rank = 0;  // 1-based selection order
};

// Step 1: keep candidates with msd > delta_sd, sorted by descending msd (ties
// by canon). Step 2: greedy_msc_select with the configured removal direction.
std::vector<RefinedStructure> refine_structures(const std::vector<MinedStructure>& candidates,
                                                const LabeledCorpus& corpus,
                                                const RefineParams& params, DistanceContext& ctx,
                                                int jobs = 1);

}  // namespace rcgcat
