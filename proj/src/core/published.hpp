#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

namespace utie::published {

// Per-group verification accuracies and the Mean/STD/SER printed next to
// them in the UTIE results tables (racial bias on RFW and BFW, gender bias
// on BFW), plus the zero-shot prediction table.

struct BiasRow {
  std::string_view model;
  std::string_view representation;
  std::string_view dataset;
  std::vector<std::string_view> groups;
  std::vector<double> accuracies;
  double mean;
  double std;
  double ser;
};

struct ZeroShotRow {
  std::string_view model;
  std::string_view dataset;
  std::vector<std::string_view> groups;
  std::vector<double> accuracies;
  double mean;
};

const std::vector<BiasRow>& racial_rows();    // 18 rows
const std::vector<BiasRow>& gender_rows();    // 9 rows
const std::vector<ZeroShotRow>& zero_shot_rows();  // 9 rows

}  // namespace utie::published
