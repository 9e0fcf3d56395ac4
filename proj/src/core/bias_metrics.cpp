#include "core/bias_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "core/error.hpp"

namespace utie {
namespace {

void require_percentages(std::span<const double> accuracies) {
  for (const double a : accuracies) {
    if (!std::isfinite(a) || a < 0.0 || a > 100.0) {
      fail(ErrorCode::kInvalidArgument, "accuracy " + std::to_string(a) + " is outside [0, 100]");
    }
  }
}

}  // namespace

double mean_accuracy(std::span<const double> accuracies) {
  if (accuracies.empty()) fail(ErrorCode::kEmptyInput, "mean of no accuracies");
  require_percentages(accuracies);
  double sum = 0.0;
  for (const double a : accuracies) sum += a;
  return sum / static_cast<double>(accuracies.size());
}

double std_accuracy(std::span<const double> accuracies) { return std_accuracy(accuracies, 1); }

double std_accuracy(std::span<const double> accuracies, int ddof) {
  if (accuracies.size() < 2) fail(ErrorCode::kNeedTwoGroups, "standard deviation needs at least two groups");
  if (ddof < 0 || ddof > 1) fail(ErrorCode::kInvalidArgument, "ddof must be 0 or 1");
  const double mean = mean_accuracy(accuracies);
  double ss = 0.0;
  for (const double a : accuracies) ss += (a - mean) * (a - mean);
  return std::sqrt(ss / static_cast<double>(accuracies.size() - static_cast<std::size_t>(ddof)));
}

double skewed_error_ratio(std::span<const double> accuracies) {
  if (accuracies.size() < 2) fail(ErrorCode::kNeedTwoGroups, "SER needs at least two groups");
  require_percentages(accuracies);
  const auto [lo, hi] = std::minmax_element(accuracies.begin(), accuracies.end());
  const double min_error = 100.0 - *hi;
  const double max_error = 100.0 - *lo;
  if (min_error <= 0.0) fail(ErrorCode::kPerfectGroup, "a group has 100% accuracy, so SER is undefined");
  return max_error / min_error;
}

BiasReport bias_report(std::vector<std::pair<std::string, double>> per_group) {
  std::set<std::string> names;
  std::vector<double> values;
  for (const auto& [group, acc] : per_group) {
    if (!names.insert(group).second) fail(ErrorCode::kInvalidArgument, "group '" + group + "' listed twice");
    values.push_back(acc);
  }
  if (values.size() < 2) fail(ErrorCode::kNeedTwoGroups, "a bias report needs at least two groups");
  BiasReport report;
  report.mean = mean_accuracy(values);
  report.std = std_accuracy(values);
  report.ser = skewed_error_ratio(values);
  report.per_group = std::move(per_group);
  return report;
}

}  // namespace utie
