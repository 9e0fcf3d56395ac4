#include "core/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "core/bias_metrics.hpp"
#include "core/error.hpp"
#include "core/fusion.hpp"
#include "core/published.hpp"
#include "core/synth.hpp"
#include "core/vecmath.hpp"
#include "core/verification.hpp"

namespace utie {
namespace {

constexpr double kTableTolerance = 0.01;
// Absorbs binary representation error of two-decimal published values.
constexpr double kRepresentationSlack = 1e-9;
constexpr double kClosedFormTolerance = 1e-6;
constexpr double kCounterConceptTolerance = 1e-9;

std::string format(const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

bool within(double value, double expected, double tol) { return std::fabs(value - expected) <= tol; }

void table_checks(SelftestResult& out, const std::vector<published::BiasRow>& rows, const char* table,
                  const SelftestOptions& options) {
  for (const auto& row : rows) {
    SelftestCheck check;
    check.name = format("%s %.*s/%.*s/%.*s", table, static_cast<int>(row.model.size()), row.model.data(),
                        static_cast<int>(row.representation.size()), row.representation.data(),
                        static_cast<int>(row.dataset.size()), row.dataset.data());
    try {
      const double mean = mean_accuracy(row.accuracies);
      const double std = std_accuracy(row.accuracies, options.std_ddof);
      const double ser = skewed_error_ratio(row.accuracies);
      const double tol = kTableTolerance + kRepresentationSlack;
      check.passed = within(mean, row.mean, tol) && within(std, row.std, tol) && within(ser, row.ser, tol);
      check.detail = format("mean %.4f (%.2f) std %.4f (%.2f) ser %.4f (%.2f)", mean, row.mean, std, row.std, ser,
                            row.ser);
    } catch (const Error& e) {
      check.detail = e.what();
    }
    out.checks.push_back(std::move(check));
  }
}

void zero_shot_mean_checks(SelftestResult& out) {
  for (const auto& row : published::zero_shot_rows()) {
    SelftestCheck check;
    check.name = format("zero-shot mean %.*s/%.*s", static_cast<int>(row.model.size()), row.model.data(),
                        static_cast<int>(row.dataset.size()), row.dataset.data());
    const double mean = mean_accuracy(row.accuracies);
    check.passed = within(mean, row.mean, kTableTolerance + kRepresentationSlack);
    check.detail = format("mean %.4f (%.2f)", mean, row.mean);
    out.checks.push_back(std::move(check));
  }
}

AnchorSet standard_basis_anchors(std::size_t n) {
  Matrix m(n, n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    m.row(i)[i] = 1.0F;
    labels.push_back("class" + std::to_string(i));
  }
  return AnchorSet(std::move(m), std::move(labels), "{label}", "selftest");
}

void fusion_checks(SelftestResult& out) {
  for (std::size_t n = 2; n <= 8; ++n) {
    const AnchorSet anchors = standard_basis_anchors(n);
    SelftestCheck check;
    check.name = format("fusion closed form N=%zu", n);
    double worst = 0.0;
    double counter_concept = 0.0;
    for (std::size_t target = 0; target < n; ++target) {
      const VectorView sample = anchors.anchor(target);
      const FusedEmbedding fused = utie(sample, anchors);
      const FusedEmbedding pte = ie_pte(sample, anchors);
      for (std::size_t j = 0; j < n; ++j) {
        const double expected = j == target ? std::sqrt(static_cast<double>(n - 1) / static_cast<double>(n))
                                            : 1.0 / std::sqrt(static_cast<double>(n * (n - 1)));
        worst = std::max(worst, std::fabs(cosine(fused.vector, anchors.anchor(j)) - expected));
      }
      counter_concept = std::max(counter_concept, std::fabs(cosine(pte.vector, sample) - 1.0));
    }
    check.passed = worst <= kClosedFormTolerance && counter_concept <= kCounterConceptTolerance;
    check.detail = format("max |utie - closed form| %.3g, max |cos(I*, T) - 1| %.3g", worst, counter_concept);
    out.checks.push_back(std::move(check));
  }
}

// Enumerates every candidate threshold and counts correct decisions directly.
struct NaiveChoice {
  double threshold;
  double accuracy;
};

NaiveChoice naive_best_threshold(const std::vector<double>& scores, const std::vector<bool>& genuine) {
  std::set<double> distinct(scores.begin(), scores.end());
  std::vector<double> sorted(distinct.begin(), distinct.end());
  std::vector<double> candidates = {sorted.front() - 1.0};
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) candidates.push_back((sorted[i] + sorted[i + 1]) / 2.0);
  candidates.push_back(sorted.back() + 1.0);
  NaiveChoice best{0.0, -1.0};
  for (const double t : candidates) {
    std::size_t correct = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if ((scores[i] >= t) == genuine[i]) ++correct;
    }
    const double acc = 100.0 * static_cast<double>(correct) / static_cast<double>(scores.size());
    if (acc > best.accuracy) best = {t, acc};
  }
  return best;
}

void kfold_oracle_check(SelftestResult& out) {
  SelftestCheck check;
  check.name = "kfold vs naive oracle (synth seed 7, group0, ie)";
  try {
    const SynthData data = generate(SynthConfig{});
    const PairSet& pairs = data.pairs_by_group.at("group0");
    const EmbeddingBundle ie_bundle = transform_bundle(data.bundle, nullptr, TransformMode::kIe);
    const ScoredPairs scored = score_pairs(ie_bundle, pairs);
    const KFoldResult fast = kfold_accuracy(scored);

    const int folds = *std::max_element(scored.folds.begin(), scored.folds.end()) + 1;
    double sum = 0.0;
    bool thresholds_match = true;
    for (int f = 0; f < folds; ++f) {
      std::vector<double> train;
      std::vector<bool> train_labels;
      for (std::size_t i = 0; i < scored.size(); ++i) {
        if (scored.folds[i] != f) {
          train.push_back(scored.scores[i]);
          train_labels.push_back(scored.genuine[i]);
        }
      }
      const NaiveChoice choice = naive_best_threshold(train, train_labels);
      std::size_t correct = 0;
      std::size_t total = 0;
      for (std::size_t i = 0; i < scored.size(); ++i) {
        if (scored.folds[i] != f) continue;
        ++total;
        if ((scored.scores[i] >= choice.threshold) == scored.genuine[i]) ++correct;
      }
      sum += 100.0 * static_cast<double>(correct) / static_cast<double>(total);
      thresholds_match = thresholds_match && std::fabs(choice.threshold - fast.folds[f].threshold) <= 1e-9;
    }
    const double naive = sum / static_cast<double>(folds);
    check.passed = thresholds_match && naive == fast.accuracy;
    check.detail = format("accuracy %.6f (oracle %.6f)%s", fast.accuracy, naive,
                          thresholds_match ? "" : ", thresholds differ");
  } catch (const Error& e) {
    check.detail = e.what();
  }
  out.checks.push_back(std::move(check));
}

void threshold_example_check(SelftestResult& out) {
  SelftestCheck check;
  check.name = "best_threshold separable example";
  const ThresholdChoice c = best_threshold({0.9, 0.8, 0.4, 0.3}, {true, true, false, false});
  check.passed = std::fabs(c.threshold - 0.6) <= 1e-12 && c.accuracy == 100.0;
  check.detail = format("threshold %.6f accuracy %.2f", c.threshold, c.accuracy);
  out.checks.push_back(std::move(check));
}

}  // namespace

bool SelftestResult::all_passed() const { return failures() == 0; }

std::size_t SelftestResult::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const SelftestCheck& c) { return !c.passed; }));
}

std::string SelftestResult::to_text() const {
  std::ostringstream out;
  for (const SelftestCheck& c : checks) out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
  out << (checks.size() - failures()) << '/' << checks.size() << " checks passed\n";
  return out.str();
}

SelftestResult run_selftest(const SelftestOptions& options) {
  SelftestResult out;
  table_checks(out, published::racial_rows(), "racial bias", options);
  table_checks(out, published::gender_rows(), "gender bias", options);
  zero_shot_mean_checks(out);
  fusion_checks(out);
  threshold_example_check(out);
  kfold_oracle_check(out);
  return out;
}

}  // namespace utie
