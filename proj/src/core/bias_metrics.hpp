#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace utie {

// Accuracies are percentages in [0, 100].

double mean_accuracy(std::span<const double> accuracies);

// Sample standard deviation (divisor n - 1).
double std_accuracy(std::span<const double> accuracies);

// Standard deviation with divisor n - ddof. std_accuracy is ddof = 1.
double std_accuracy(std::span<const double> accuracies, int ddof);

// Skewed error ratio: max(100 - acc) / min(100 - acc).
double skewed_error_ratio(std::span<const double> accuracies);

struct BiasReport {
  std::vector<std::pair<std::string, double>> per_group;  // caller's order
  double mean = 0.0;
  double std = 0.0;
  double ser = 0.0;
};

BiasReport bias_report(std::vector<std::pair<std::string, double>> per_group);

}  // namespace utie
