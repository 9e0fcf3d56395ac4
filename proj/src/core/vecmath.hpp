#pragma once

#include <span>
#include <vector>

namespace utie {

using Vector = std::vector<float>;
using VectorView = std::span<const float>;

// Rows below this norm cannot be normalized and are rejected at load time.
inline constexpr double kMinNorm = 1e-12;

// All reductions accumulate in double, sequentially by index, so results are
// bit-reproducible regardless of caller threading.

double l2_norm(VectorView v);
double dot(VectorView u, VectorView v);

Vector normalize(VectorView v);
std::vector<double> normalize_f64(VectorView v);

// Cosine similarity clamped to [-1, 1].
double cosine(VectorView u, VectorView v);

// Componentwise mean over `rows`, which must be non-empty and equal-length.
Vector mean_rows(std::span<const VectorView> rows);

}  // namespace utie
