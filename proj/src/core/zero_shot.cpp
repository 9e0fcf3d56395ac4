#include "core/zero_shot.hpp"

#include "core/error.hpp"

namespace utie {

std::string render_prompt(std::string_view prompt_template, std::string_view label) {
  const std::size_t at = prompt_template.find(kLabelPlaceholder);
  if (at == std::string_view::npos) {
    fail(ErrorCode::kMissingPlaceholder, "prompt template lacks the {label} placeholder");
  }
  if (prompt_template.find(kLabelPlaceholder, at + 1) != std::string_view::npos) {
    fail(ErrorCode::kMultiplePlaceholders, "prompt template has more than one {label} placeholder");
  }
  std::string out(prompt_template.substr(0, at));
  out += label;
  out += prompt_template.substr(at + kLabelPlaceholder.size());
  return out;
}

Prediction predict(VectorView embedding, const AnchorSet& anchors) {
  if (embedding.size() != anchors.dim()) {
    fail(ErrorCode::kDimensionMismatch, "embedding dimension " + std::to_string(embedding.size()) +
                                            " does not match anchor dimension " + std::to_string(anchors.dim()));
  }
  Prediction p;
  p.similarities.reserve(anchors.size());
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    p.similarities.push_back(cosine(embedding, anchors.anchor(i)));
    if (p.similarities[i] > p.similarities[p.predicted_index]) p.predicted_index = i;
  }
  return p;
}

ZeroShotReport zero_shot_accuracy(const EmbeddingBundle& bundle, const AnchorSet& anchors) {
  std::map<std::string, std::size_t> correct;
  std::map<std::string, std::size_t> total;
  for (const ManifestRecord& rec : bundle.records()) {
    if (!anchors.index_of(rec.group)) {
      fail(ErrorCode::kUnknownGroupLabel, "group '" + rec.group + "' of sample '" + rec.id +
                                              "' is not an anchor label");
    }
  }
  for (const ManifestRecord& rec : bundle.records()) {
    const Prediction p = predict(bundle.row(rec.row), anchors);
    total[rec.group] += 1;
    correct[rec.group] += anchors.labels()[p.predicted_index] == rec.group ? 1 : 0;
  }
  ZeroShotReport report;
  double sum = 0.0;
  for (const auto& [group, count] : total) {
    const double acc = 100.0 * static_cast<double>(correct[group]) / static_cast<double>(count);
    report.per_group_accuracy[group] = acc;
    report.per_group_count[group] = count;
    sum += acc;
  }
  report.mean_accuracy = sum / static_cast<double>(total.size());
  return report;
}

}  // namespace utie
