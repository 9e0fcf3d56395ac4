#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "core/store.hpp"
#include "core/vecmath.hpp"

namespace utie {

inline constexpr std::string_view kLabelPlaceholder = "{label}";
inline constexpr std::string_view kDefaultPromptTemplate = "A photo of a {label} person.";

// Substitutes `label` for the single "{label}" token. No article agreement is
// attempted: "A photo of a {label} person." with "Asian" gives "a Asian".
std::string render_prompt(std::string_view prompt_template, std::string_view label);

struct Prediction {
  std::size_t predicted_index = 0;
  std::vector<double> similarities;
};

// Cosine argmax over the anchors; ties go to the lowest index.
Prediction predict(VectorView embedding, const AnchorSet& anchors);

struct ZeroShotReport {
  std::map<std::string, double> per_group_accuracy;  // percent, keyed by group
  std::map<std::string, std::size_t> per_group_count;
  double mean_accuracy = 0.0;                         // unweighted over groups
};

// Fraction of each group's samples whose predicted label equals their
// manifest group (exact, case-sensitive match).
ZeroShotReport zero_shot_accuracy(const EmbeddingBundle& bundle, const AnchorSet& anchors);

}  // namespace utie
