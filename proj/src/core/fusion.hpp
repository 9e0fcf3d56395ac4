#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "core/store.hpp"
#include "core/vecmath.hpp"

namespace utie {

enum class TransformMode { kIe, kUtie, kIePte };

std::string_view mode_name(TransformMode mode) noexcept;  // "ie", "utie", "ie_pte"
std::optional<TransformMode> parse_mode(std::string_view text) noexcept;

struct FusionOptions {
  // Unit-normalize the image embedding and every anchor before adding them.
  // When false the raw vectors are summed as written.
  bool normalize_inputs = true;
};

struct FusedEmbedding {
  Vector vector;
  TransformMode mode = TransformMode::kIe;
  std::optional<std::size_t> predicted_index;  // absent for IE
};

// Mean of all anchors except `excluded`, each unit-normalized first (unless
// options say otherwise).
Vector leave_one_out_mean(const AnchorSet& anchors, std::size_t excluded, FusionOptions options = {});

// I' = I + mean_{i != predicted} T_i
FusedEmbedding utie(VectorView embedding, const AnchorSet& anchors, FusionOptions options = {});

// I* = I + T_predicted
FusedEmbedding ie_pte(VectorView embedding, const AnchorSet& anchors, FusionOptions options = {});

// IE: unit-normalized (or unchanged without normalization).
FusedEmbedding ie(VectorView embedding, FusionOptions options = {});

FusedEmbedding fuse(VectorView embedding, const AnchorSet* anchors, TransformMode mode, FusionOptions options = {});

// Applies `fuse` row by row. The prediction always uses the untransformed row.
// `anchors` may be null only for IE.
EmbeddingBundle transform_bundle(const EmbeddingBundle& bundle, const AnchorSet* anchors, TransformMode mode,
                                 FusionOptions options = {});

}  // namespace utie
