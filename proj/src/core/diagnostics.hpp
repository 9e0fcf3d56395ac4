#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "core/fusion.hpp"
#include "core/store.hpp"

namespace utie {

// Mean cosine of each group's (transformed) embeddings against every anchor.
struct SimilarityProfile {
  std::vector<std::string> groups;          // lexicographic
  std::vector<std::string> anchor_labels;   // anchor order
  std::vector<std::vector<double>> matrix;  // [group][anchor]
  std::vector<std::size_t> sample_counts;   // per group
};

SimilarityProfile similarity_profile(const EmbeddingBundle& bundle, const AnchorSet& anchors, TransformMode mode,
                                     FusionOptions options = {});

// Per sample: cos(x', T_p) - mean_{i != p} cos(x', T_i), where p is predicted
// from the untransformed x and x' is the transformed x. Averaged per group.
struct AmbiguityGap {
  std::map<std::string, double> per_group;
};

AmbiguityGap ambiguity_gap(const EmbeddingBundle& bundle, const AnchorSet& anchors, TransformMode mode,
                           FusionOptions options = {});

// Columns: group,anchor,mean_cosine,count. Rows follow profile order.
void emit_profile_csv(const SimilarityProfile& profile, const std::filesystem::path& path);

}  // namespace utie
