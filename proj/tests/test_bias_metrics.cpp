#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "core/bias_metrics.hpp"
#include "core/published.hpp"
#include "helpers.hpp"

using utie::ErrorCode;
using testing::error_of;

namespace {

constexpr double kTableTol = 0.01 + 1e-9;
const std::vector<double> kClipIeRfw{70.75, 69.73, 79.32, 68.98};

}  // namespace

TEST_CASE("bias: mean examples") {
  CHECK(std::fabs(utie::mean_accuracy(kClipIeRfw) - 72.20) <= 0.005 + 1e-9);
  CHECK(std::fabs(utie::mean_accuracy(std::vector<double>{82.58, 86.43}) - 84.50) <= 0.005 + 1e-9);
  CHECK(utie::mean_accuracy(std::vector<double>{63.5}) == 63.5);
  CHECK(error_of([] { utie::mean_accuracy(std::vector<double>{}); }) == ErrorCode::kEmptyInput);
}

TEST_CASE("bias: std examples") {
  CHECK(std::fabs(utie::std_accuracy(kClipIeRfw) - 4.81) <= kTableTol);
  CHECK(std::fabs(utie::std_accuracy(std::vector<double>{82.58, 86.43}) - 2.72) <= kTableTol);
  CHECK(utie::std_accuracy(std::vector<double>{55.0, 55.0, 55.0}) == 0.0);
  CHECK(error_of([] { utie::std_accuracy(std::vector<double>{50.0}); }) == ErrorCode::kNeedTwoGroups);
  // Population divisor misses the published value.
  CHECK(std::fabs(utie::std_accuracy(kClipIeRfw, 0) - 4.81) > 0.5);
  CHECK(error_of([] { utie::std_accuracy(kClipIeRfw, 2); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("bias: ser examples") {
  CHECK(std::fabs(utie::skewed_error_ratio(kClipIeRfw) - 1.50) <= kTableTol);
  CHECK(std::fabs(utie::skewed_error_ratio(std::vector<double>{70.85, 69.80, 78.88, 69.48}) - 1.45) <= kTableTol);
  CHECK(utie::skewed_error_ratio(std::vector<double>{91.0, 91.0}) == 1.0);
  CHECK(error_of([] { utie::skewed_error_ratio(std::vector<double>{100.0, 90.0}); }) == ErrorCode::kPerfectGroup);
  CHECK(error_of([] { utie::skewed_error_ratio(std::vector<double>{90.0}); }) == ErrorCode::kNeedTwoGroups);
}

TEST_CASE("bias: bias_report examples") {
  const auto openclip = utie::bias_report({{"African", 69.37}, {"Asian", 68.60}, {"Caucasian", 79.95}, {"Indian", 69.72}});
  CHECK(std::fabs(openclip.mean - 71.91) <= kTableTol);
  CHECK(std::fabs(openclip.std - 5.38) <= kTableTol);
  CHECK(std::fabs(openclip.ser - 1.57) <= kTableTol);
  CHECK(openclip.per_group.front().first == "African");

  const auto siglip = utie::bias_report({{"a", 77.83}, {"b", 78.91}, {"c", 79.93}, {"d", 79.80}});
  CHECK(std::fabs(siglip.mean - 79.12) <= kTableTol);
  CHECK(std::fabs(siglip.std - 0.97) <= kTableTol);
  CHECK(std::fabs(siglip.ser - 1.10) <= kTableTol);

  const auto flat = utie::bias_report({{"x", 88.0}, {"y", 88.0}});
  CHECK(flat.mean == 88.0);
  CHECK(flat.std == 0.0);
  CHECK(flat.ser == 1.0);
  CHECK(error_of([] { utie::bias_report({{"x", 100.0}, {"y", 100.0}}); }) == ErrorCode::kPerfectGroup);
  CHECK(error_of([] { utie::bias_report({{"x", 80.0}}); }) == ErrorCode::kNeedTwoGroups);
  CHECK(error_of([] { utie::bias_report({{"x", 80.0}, {"y", 101.0}}); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("bias: every published row reproduces") {
  std::vector<utie::published::BiasRow> rows = utie::published::racial_rows();
  CHECK(rows.size() == 18);
  const auto& gender = utie::published::gender_rows();
  CHECK(gender.size() == 9);
  rows.insert(rows.end(), gender.begin(), gender.end());
  for (const auto& row : rows) {
    CAPTURE(row.model);
    CAPTURE(row.representation);
    CAPTURE(row.dataset);
    CHECK(std::fabs(utie::mean_accuracy(row.accuracies) - row.mean) <= kTableTol);
    CHECK(std::fabs(utie::std_accuracy(row.accuracies) - row.std) <= kTableTol);
    CHECK(std::fabs(utie::skewed_error_ratio(row.accuracies) - row.ser) <= kTableTol);
  }
}

TEST_CASE("bias: properties") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(40.0, 99.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> accs(2 + trial % 6);
    for (double& a : accs) a = u(rng);
    const double std0 = utie::std_accuracy(accs);
    const double ser0 = utie::skewed_error_ratio(accs);
    CHECK(std0 >= 0.0);
    CHECK(ser0 >= 1.0);

    auto shuffled = accs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(utie::skewed_error_ratio(shuffled) == ser0);

    auto shifted = accs;
    const auto [lo, hi] = std::minmax_element(accs.begin(), accs.end());
    const double c = std::uniform_real_distribution<double>(-*lo, 100.0 - *hi)(rng);
    for (double& a : shifted) a += c;
    CHECK(std::fabs(utie::std_accuracy(shifted) - std0) <= 1e-9);

    auto grown = accs;
    grown.push_back(utie::mean_accuracy(accs));
    CHECK(utie::std_accuracy(grown) <= std0 + 1e-12);
  }
}
