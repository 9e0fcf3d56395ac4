#include "core/fusion.hpp"

#include <string>

#include "core/error.hpp"
#include "core/zero_shot.hpp"

namespace utie {
namespace {

std::vector<double> widen(VectorView v) { return {v.begin(), v.end()}; }

std::vector<double> prepared(VectorView v, const FusionOptions& options) {
  return options.normalize_inputs ? normalize_f64(v) : widen(v);
}

Vector narrow(const std::vector<double>& v) { return Vector(v.begin(), v.end()); }

std::vector<double> leave_one_out_mean_f64(const AnchorSet& anchors, std::size_t excluded,
                                           const FusionOptions& options) {
  if (anchors.size() < 2) fail(ErrorCode::kDegenerateAnchorSet, "leave-one-out mean needs at least 2 anchors");
  if (excluded >= anchors.size()) {
    fail(ErrorCode::kIndexOutOfRange, "excluded anchor " + std::to_string(excluded) + " out of range");
  }
  std::vector<double> sum(anchors.dim(), 0.0);
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    if (i == excluded) continue;
    const std::vector<double> t = prepared(anchors.anchor(i), options);
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += t[k];
  }
  const double count = static_cast<double>(anchors.size() - 1);
  for (double& x : sum) x /= count;
  return sum;
}

void require_anchor_dim(VectorView embedding, const AnchorSet& anchors) {
  if (embedding.size() != anchors.dim()) {
    fail(ErrorCode::kDimensionMismatch, "embedding dimension " + std::to_string(embedding.size()) +
                                            " does not match anchor dimension " + std::to_string(anchors.dim()));
  }
}

}  // namespace

std::string_view mode_name(TransformMode mode) noexcept {
  switch (mode) {
    case TransformMode::kIe: return "ie";
    case TransformMode::kUtie: return "utie";
    case TransformMode::kIePte: return "ie_pte";
  }
  return "unknown";
}

std::optional<TransformMode> parse_mode(std::string_view text) noexcept {
  if (text == "ie" || text == "IE") return TransformMode::kIe;
  if (text == "utie" || text == "UTIE") return TransformMode::kUtie;
  if (text == "ie_pte" || text == "IE_PTE" || text == "ie+pte" || text == "IE+PTE") return TransformMode::kIePte;
  return std::nullopt;
}

Vector leave_one_out_mean(const AnchorSet& anchors, std::size_t excluded, FusionOptions options) {
  return narrow(leave_one_out_mean_f64(anchors, excluded, options));
}

FusedEmbedding utie(VectorView embedding, const AnchorSet& anchors, FusionOptions options) {
  require_anchor_dim(embedding, anchors);
  const std::size_t predicted = predict(embedding, anchors).predicted_index;
  std::vector<double> out = prepared(embedding, options);
  const std::vector<double> mean = leave_one_out_mean_f64(anchors, predicted, options);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += mean[k];
  return {narrow(out), TransformMode::kUtie, predicted};
}

FusedEmbedding ie_pte(VectorView embedding, const AnchorSet& anchors, FusionOptions options) {
  require_anchor_dim(embedding, anchors);
  const std::size_t predicted = predict(embedding, anchors).predicted_index;
  std::vector<double> out = prepared(embedding, options);
  const std::vector<double> anchor = prepared(anchors.anchor(predicted), options);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += anchor[k];
  return {narrow(out), TransformMode::kIePte, predicted};
}

FusedEmbedding ie(VectorView embedding, FusionOptions options) {
  return {narrow(prepared(embedding, options)), TransformMode::kIe, std::nullopt};
}

FusedEmbedding fuse(VectorView embedding, const AnchorSet* anchors, TransformMode mode, FusionOptions options) {
  if (mode == TransformMode::kIe) return ie(embedding, options);
  if (anchors == nullptr) {
    fail(ErrorCode::kInvalidArgument, "anchors required for mode " + std::string(mode_name(mode)));
  }
  return mode == TransformMode::kUtie ? utie(embedding, *anchors, options) : ie_pte(embedding, *anchors, options);
}

EmbeddingBundle transform_bundle(const EmbeddingBundle& bundle, const AnchorSet* anchors, TransformMode mode,
                                 FusionOptions options) {
  if (mode != TransformMode::kIe && anchors == nullptr) {
    fail(ErrorCode::kInvalidArgument, "anchors required for mode " + std::string(mode_name(mode)));
  }
  if (anchors != nullptr && mode != TransformMode::kIe && anchors->dim() != bundle.dim()) {
    fail(ErrorCode::kDimensionMismatch, "bundle dimension " + std::to_string(bundle.dim()) +
                                            " does not match anchor dimension " + std::to_string(anchors->dim()));
  }
  Matrix out(bundle.size(), bundle.dim());
  for (std::size_t r = 0; r < bundle.size(); ++r) {
    FusedEmbedding fused;
    try {
      fused = fuse(bundle.row(r), anchors, mode, options);
    } catch (const Error& e) {
      fail(e.code(), "sample '" + bundle.record_for_row(r).id + "': " + e.what());
    }
    std::copy(fused.vector.begin(), fused.vector.end(), out.row(r).begin());
  }
  return bundle.with_embeddings(std::move(out));
}

}  // namespace utie
