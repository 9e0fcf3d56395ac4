#include "core/diagnostics.hpp"

#include <cstdio>
#include <fstream>

#include "core/error.hpp"
#include "core/vecmath.hpp"
#include "core/zero_shot.hpp"

namespace utie {

SimilarityProfile similarity_profile(const EmbeddingBundle& bundle, const AnchorSet& anchors, TransformMode mode,
                                     FusionOptions options) {
  const EmbeddingBundle transformed = transform_bundle(bundle, &anchors, mode, options);
  std::map<std::string, std::vector<double>> sums;
  std::map<std::string, std::size_t> counts;
  for (const ManifestRecord& rec : transformed.records()) {
    auto& sum = sums[rec.group];
    sum.resize(anchors.size(), 0.0);
    for (std::size_t i = 0; i < anchors.size(); ++i) sum[i] += cosine(transformed.row(rec.row), anchors.anchor(i));
    counts[rec.group] += 1;
  }
  SimilarityProfile profile;
  profile.anchor_labels = anchors.labels();
  for (auto& [group, sum] : sums) {
    const double n = static_cast<double>(counts[group]);
    for (double& s : sum) s /= n;
    profile.groups.push_back(group);
    profile.matrix.push_back(std::move(sum));
    profile.sample_counts.push_back(counts[group]);
  }
  return profile;
}

AmbiguityGap ambiguity_gap(const EmbeddingBundle& bundle, const AnchorSet& anchors, TransformMode mode,
                           FusionOptions options) {
  const EmbeddingBundle transformed = transform_bundle(bundle, &anchors, mode, options);
  std::map<std::string, double> sums;
  std::map<std::string, std::size_t> counts;
  for (const ManifestRecord& rec : bundle.records()) {
    const std::size_t predicted = predict(bundle.row(rec.row), anchors).predicted_index;
    const VectorView fused = transformed.row(rec.row);
    double others = 0.0;
    double own = 0.0;
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      const double c = cosine(fused, anchors.anchor(i));
      if (i == predicted) {
        own = c;
      } else {
        others += c;
      }
    }
    sums[rec.group] += own - others / static_cast<double>(anchors.size() - 1);
    counts[rec.group] += 1;
  }
  AmbiguityGap gap;
  for (const auto& [group, sum] : sums) gap.per_group[group] = sum / static_cast<double>(counts[group]);
  return gap;
}

void emit_profile_csv(const SimilarityProfile& profile, const std::filesystem::path& path) {
  if (profile.matrix.size() != profile.groups.size() || profile.sample_counts.size() != profile.groups.size()) {
    fail(ErrorCode::kInvalidArgument, "inconsistent similarity profile");
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(ErrorCode::kIoError, "cannot open " + path.string() + " for writing");
  out << "group,anchor,mean_cosine,count\n";
  char buf[64];
  for (std::size_t g = 0; g < profile.groups.size(); ++g) {
    if (profile.sample_counts[g] == 0) fail(ErrorCode::kEmptySet, "group '" + profile.groups[g] + "' has no samples");
    for (std::size_t i = 0; i < profile.anchor_labels.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.9f", profile.matrix[g][i]);
      out << profile.groups[g] << ',' << profile.anchor_labels[i] << ',' << buf << ',' << profile.sample_counts[g]
          << '\n';
    }
  }
  if (!out) fail(ErrorCode::kIoError, "write failed for " + path.string());
}

}  // namespace utie
