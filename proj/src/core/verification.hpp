#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "core/fusion.hpp"
#include "core/store.hpp"

namespace utie {

// Fold count used when a pairs file carries no fold column.
inline constexpr int kDefaultFolds = 10;

struct ScoredPairs {
  std::vector<double> scores;
  std::vector<bool> genuine;
  std::vector<int> folds;

  std::size_t size() const noexcept { return scores.size(); }
};

// Cosine score per pair. Fold-less sets get contiguous blocks:
// fold = floor(index * K / P) with K = kDefaultFolds.
ScoredPairs score_pairs(const EmbeddingBundle& bundle, const PairSet& pairs);

struct ThresholdChoice {
  double threshold = 0.0;
  double accuracy = 0.0;  // percent
};

// Exhaustive sweep over sentinels and midpoints of consecutive distinct
// scores. A pair is accepted as genuine iff score >= threshold. Returns the
// most accurate candidate, the lowest such threshold on ties.
ThresholdChoice best_threshold(const std::vector<double>& scores, const std::vector<bool>& genuine);

// Percent of pairs classified correctly at `threshold`.
double accuracy_at(const std::vector<double>& scores, const std::vector<bool>& genuine, double threshold);

struct FoldResult {
  double threshold = 0.0;
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
  std::size_t test_pairs = 0;
};

struct KFoldResult {
  double accuracy = 0.0;  // unweighted mean of per-fold test accuracy
  std::vector<FoldResult> folds;
};

// Leave-one-fold-out: threshold tuned on the other folds, evaluated on this one.
KFoldResult kfold_accuracy(const ScoredPairs& scored);

struct GroupAccuracy {
  std::string group;
  double accuracy = 0.0;
  KFoldResult detail;
  std::size_t pair_count = 0;
};

// Transforms the bundle once, then runs k-fold per group. Output is ordered
// by group name.
std::vector<GroupAccuracy> evaluate_groups(const EmbeddingBundle& bundle, const AnchorSet* anchors,
                                           const std::map<std::string, PairSet>& pairs_by_group,
                                           TransformMode mode, FusionOptions options = {});

// Splits a pair set by the manifest group of each pair's first id, keeping
// file order within each group.
std::map<std::string, PairSet> partition_by_group(const EmbeddingBundle& bundle, const PairSet& pairs);

}  // namespace utie
