#include "core/published.hpp"

namespace utie::published {
namespace {

const std::vector<std::string_view> kRfw = {"African", "Asian", "Caucasian", "Indian"};
const std::vector<std::string_view> kBfwRace = {"Asian", "Black", "Indian", "White"};
const std::vector<std::string_view> kGender = {"Female", "Male"};

}  // namespace

const std::vector<BiasRow>& racial_rows() {
  static const std::vector<BiasRow> rows = {
      {"CLIP", "IE", "RFW", kRfw, {70.75, 69.73, 79.32, 68.98}, 72.20, 4.81, 1.50},
      {"CLIP", "UTIE", "RFW", kRfw, {70.85, 69.80, 78.88, 69.48}, 72.25, 4.46, 1.45},
      {"CLIP", "IE+PTE", "RFW", kRfw, {68.47, 68.73, 77.90, 66.87}, 70.49, 5.01, 1.50},
      {"OpenCLIP", "IE", "RFW", kRfw, {69.37, 68.60, 79.95, 69.72}, 71.91, 5.38, 1.57},
      {"OpenCLIP", "UTIE", "RFW", kRfw, {69.35, 68.83, 79.80, 69.85}, 71.96, 5.24, 1.54},
      {"OpenCLIP", "IE+PTE", "RFW", kRfw, {67.83, 67.62, 78.93, 65.58}, 69.99, 6.05, 1.63},
      {"SigLIP", "IE", "RFW", kRfw, {58.17, 64.17, 71.62, 65.98}, 64.98, 5.54, 1.47},
      {"SigLIP", "UTIE", "RFW", kRfw, {58.63, 64.62, 71.63, 65.60}, 65.12, 5.32, 1.46},
      {"SigLIP", "IE+PTE", "RFW", kRfw, {56.80, 61.02, 69.86, 63.53}, 62.80, 5.46, 1.43},
      {"CLIP", "IE", "BFW", kBfwRace, {82.36, 84.49, 84.85, 86.31}, 84.50, 1.63, 1.29},
      {"CLIP", "UTIE", "BFW", kBfwRace, {82.20, 84.16, 84.68, 85.89}, 84.23, 1.54, 1.26},
      {"CLIP", "IE+PTE", "BFW", kBfwRace, {82.22, 83.37, 83.96, 86.25}, 83.95, 1.70, 1.29},
      {"OpenCLIP", "IE", "BFW", kBfwRace, {80.49, 86.01, 83.97, 86.35}, 84.20, 2.69, 1.43},
      {"OpenCLIP", "UTIE", "BFW", kBfwRace, {80.54, 85.23, 83.79, 84.85}, 83.60, 2.13, 1.32},
      {"OpenCLIP", "IE+PTE", "BFW", kBfwRace, {80.07, 84.85, 82.63, 86.37}, 83.48, 2.74, 1.46},
      {"SigLIP", "IE", "BFW", kBfwRace, {78.27, 79.52, 80.57, 80.54}, 79.73, 1.09, 1.12},
      {"SigLIP", "UTIE", "BFW", kBfwRace, {77.83, 78.91, 79.93, 79.80}, 79.12, 0.97, 1.10},
      {"SigLIP", "IE+PTE", "BFW", kBfwRace, {77.77, 79.17, 79.93, 80.88}, 79.44, 1.31, 1.16},
  };
  return rows;
}

const std::vector<BiasRow>& gender_rows() {
  static const std::vector<BiasRow> rows = {
      {"CLIP", "IE", "BFW", kGender, {82.58, 86.43}, 84.50, 2.72, 1.28},
      {"CLIP", "UTIE", "BFW", kGender, {82.58, 86.23}, 84.41, 2.58, 1.27},
      {"CLIP", "IE+PTE", "BFW", kGender, {82.65, 86.58}, 84.61, 2.78, 1.29},
      {"OpenCLIP", "IE", "BFW", kGender, {81.48, 86.93}, 84.20, 3.86, 1.42},
      {"OpenCLIP", "UTIE", "BFW", kGender, {81.44, 85.76}, 83.60, 3.06, 1.30},
      {"OpenCLIP", "IE+PTE", "BFW", kGender, {81.25, 86.74}, 83.99, 3.88, 1.41},
      {"SigLIP", "IE", "BFW", kGender, {78.60, 80.85}, 79.73, 1.59, 1.12},
      {"SigLIP", "UTIE", "BFW", kGender, {78.13, 80.38}, 79.25, 1.59, 1.11},
      {"SigLIP", "IE+PTE", "BFW", kGender, {78.29, 80.76}, 79.52, 1.75, 1.13},
  };
  return rows;
}

const std::vector<ZeroShotRow>& zero_shot_rows() {
  static const std::vector<ZeroShotRow> rows = {
      {"CLIP", "RFW", kRfw, {87.72, 96.34, 97.31, 89.74}, 92.78},
      {"OpenCLIP", "RFW", kRfw, {95.99, 93.74, 97.44, 84.57}, 92.94},
      {"SigLIP", "RFW", kRfw, {92.68, 82.08, 96.77, 80.75}, 88.07},
      {"CLIP", "BFW", kBfwRace, {98.80, 64.00, 90.84, 98.04}, 87.92},
      {"OpenCLIP", "BFW", kBfwRace, {95.16, 85.40, 85.88, 99.32}, 91.44},
      {"SigLIP", "BFW", kBfwRace, {83.68, 79.20, 82.82, 98.90}, 86.15},
      {"CLIP", "BFW-gender", kGender, {97.86, 98.98}, 98.42},
      {"OpenCLIP", "BFW-gender", kGender, {96.78, 98.06}, 97.42},
      {"SigLIP", "BFW-gender", kGender, {92.68, 97.54}, 95.11},
  };
  return rows;
}

}  // namespace utie::published
