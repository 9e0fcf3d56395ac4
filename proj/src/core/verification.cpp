#include "core/verification.hpp"

#include <algorithm>
#include <numeric>

#include "core/error.hpp"
#include "core/vecmath.hpp"

namespace utie {
namespace {

// Sentinel distance outside the [-1, 1] cosine range.
constexpr double kSentinelMargin = 1.0;

void require_both_classes(const std::vector<bool>& genuine, const std::string& where) {
  const auto positives = std::count(genuine.begin(), genuine.end(), true);
  if (positives == 0 || positives == static_cast<std::ptrdiff_t>(genuine.size())) {
    fail(ErrorCode::kDegenerateLabels, where + " needs both genuine and impostor pairs");
  }
}

}  // namespace

ScoredPairs score_pairs(const EmbeddingBundle& bundle, const PairSet& pairs) {
  validate_pairs(pairs);
  ScoredPairs out;
  const std::size_t count = pairs.pairs.size();
  out.scores.reserve(count);
  out.genuine.reserve(count);
  out.folds.reserve(count);
  const bool folded = pairs.has_folds();
  for (std::size_t i = 0; i < count; ++i) {
    const Pair& p = pairs.pairs[i];
    const auto a = bundle.find(p.id_a);
    const auto b = bundle.find(p.id_b);
    if (!a || !b) {
      fail(ErrorCode::kDanglingPairId, "pair " + std::to_string(i) + " references unknown id '" +
                                           (a ? p.id_b : p.id_a) + "'");
    }
    try {
      out.scores.push_back(cosine(bundle.row(*a), bundle.row(*b)));
    } catch (const Error& e) {
      fail(e.code(), "pair " + std::to_string(i) + ": " + e.what());
    }
    out.genuine.push_back(p.genuine);
    out.folds.push_back(folded ? *p.fold
                               : static_cast<int>(i * static_cast<std::size_t>(kDefaultFolds) / count));
  }
  return out;
}

double accuracy_at(const std::vector<double>& scores, const std::vector<bool>& genuine, double threshold) {
  if (scores.empty()) fail(ErrorCode::kEmptySet, "accuracy of an empty pair set");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) correct += (scores[i] >= threshold) == genuine[i] ? 1 : 0;
  return 100.0 * static_cast<double>(correct) / static_cast<double>(scores.size());
}

ThresholdChoice best_threshold(const std::vector<double>& scores, const std::vector<bool>& genuine) {
  if (scores.size() != genuine.size()) fail(ErrorCode::kDimensionMismatch, "scores and labels differ in length");
  require_both_classes(genuine, "threshold search");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Threshold below every score accepts everything: correct = #genuine.
  std::size_t correct = static_cast<std::size_t>(std::count(genuine.begin(), genuine.end(), true));
  std::size_t best_correct = correct;
  double best = scores[order.front()] - kSentinelMargin;

  // Raising the threshold past a block of equal scores rejects that block.
  for (std::size_t i = 0; i < order.size();) {
    const double value = scores[order[i]];
    std::size_t j = i;
    for (; j < order.size() && scores[order[j]] == value; ++j) {
      if (genuine[order[j]]) {
        --correct;
      } else {
        ++correct;
      }
    }
    const double candidate = j < order.size() ? (value + scores[order[j]]) / 2.0 : value + kSentinelMargin;
    if (correct > best_correct) {
      best_correct = correct;
      best = candidate;
    }
    i = j;
  }
  return {best, 100.0 * static_cast<double>(best_correct) / static_cast<double>(scores.size())};
}

KFoldResult kfold_accuracy(const ScoredPairs& scored) {
  if (scored.genuine.size() != scored.size() || scored.folds.size() != scored.size()) {
    fail(ErrorCode::kDimensionMismatch, "scored pair columns differ in length");
  }
  if (scored.size() == 0) fail(ErrorCode::kFoldTooSmall, "no pairs to evaluate");
  const int fold_count = *std::max_element(scored.folds.begin(), scored.folds.end()) + 1;
  if (fold_count < 2) fail(ErrorCode::kFoldTooSmall, "k-fold evaluation needs at least 2 folds");
  std::vector<std::size_t> fold_sizes(static_cast<std::size_t>(fold_count), 0);
  for (int f : scored.folds) {
    if (f < 0) fail(ErrorCode::kFoldTooSmall, "negative fold index");
    ++fold_sizes[static_cast<std::size_t>(f)];
  }
  for (std::size_t f = 0; f < fold_sizes.size(); ++f) {
    if (fold_sizes[f] == 0) fail(ErrorCode::kFoldTooSmall, "fold " + std::to_string(f) + " is empty");
  }

  KFoldResult result;
  double sum = 0.0;
  for (int f = 0; f < fold_count; ++f) {
    std::vector<double> train_scores, test_scores;
    std::vector<bool> train_labels, test_labels;
    for (std::size_t i = 0; i < scored.size(); ++i) {
      if (scored.folds[i] < 0) fail(ErrorCode::kNonContiguousFolds, "negative fold index");
      if (scored.folds[i] == f) {
        test_scores.push_back(scored.scores[i]);
        test_labels.push_back(scored.genuine[i]);
      } else {
        train_scores.push_back(scored.scores[i]);
        train_labels.push_back(scored.genuine[i]);
      }
    }
    require_both_classes(train_labels, "training portion of fold " + std::to_string(f));
    const ThresholdChoice choice = best_threshold(train_scores, train_labels);
    FoldResult fold;
    fold.threshold = choice.threshold;
    fold.train_accuracy = choice.accuracy;
    fold.test_accuracy = accuracy_at(test_scores, test_labels, choice.threshold);
    fold.test_pairs = test_scores.size();
    sum += fold.test_accuracy;
    result.folds.push_back(fold);
  }
  result.accuracy = sum / static_cast<double>(fold_count);
  return result;
}

std::map<std::string, PairSet> partition_by_group(const EmbeddingBundle& bundle, const PairSet& pairs) {
  std::map<std::string, PairSet> out;
  for (const Pair& p : pairs.pairs) {
    const auto row = bundle.find(p.id_a);
    if (!row) fail(ErrorCode::kDanglingPairId, "unknown id '" + p.id_a + "'");
    out[bundle.record_for_row(*row).group].pairs.push_back(p);
  }
  return out;
}

std::vector<GroupAccuracy> evaluate_groups(const EmbeddingBundle& bundle, const AnchorSet* anchors,
                                           const std::map<std::string, PairSet>& pairs_by_group,
                                           TransformMode mode, FusionOptions options) {
  if (pairs_by_group.empty()) fail(ErrorCode::kEmptyInput, "no pair groups to evaluate");
  const EmbeddingBundle transformed = transform_bundle(bundle, anchors, mode, options);
  std::vector<GroupAccuracy> out;
  for (const auto& [group, pairs] : pairs_by_group) {
    GroupAccuracy acc;
    acc.group = group;
    try {
      acc.detail = kfold_accuracy(score_pairs(transformed, pairs));
    } catch (const Error& e) {
      fail(e.code(), "group '" + group + "': " + e.what());
    }
    acc.accuracy = acc.detail.accuracy;
    acc.pair_count = pairs.pairs.size();
    out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace utie
