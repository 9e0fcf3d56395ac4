#pragma once

#include <string>
#include <vector>

#include "core/bias_metrics.hpp"
#include "core/diagnostics.hpp"
#include "core/fusion.hpp"
#include "core/store.hpp"
#include "core/verification.hpp"
#include "core/zero_shot.hpp"

namespace utie {

std::string zero_shot_json(const ZeroShotReport& report, const AnchorSet& anchors);

// Per-group k-fold results. A "bias" block is attached when at least two
// groups exist and every accuracy is below 100; otherwise "bias" is null and
// "bias_error" says why.
std::string verification_json(const std::vector<GroupAccuracy>& groups, TransformMode mode,
                              const FusionOptions& options);

std::string bias_json(const BiasReport& report);

// One-row table in the results-table column order:
// | Approach | Feature Embedding | <groups...> | Mean | STD | SER |
std::string bias_markdown(const BiasReport& report, const std::string& approach,
                          const std::string& representation);

std::string gap_json(const AmbiguityGap& gap, TransformMode mode);

}  // namespace utie
