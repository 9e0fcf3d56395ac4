#include "core/vecmath.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/error.hpp"

namespace utie {
namespace {

void require_same_dim(VectorView u, VectorView v) {
  if (u.size() != v.size()) {
    fail(ErrorCode::kDimensionMismatch,
         "dimension mismatch: " + std::to_string(u.size()) + " vs " + std::to_string(v.size()));
  }
}

double checked_norm(VectorView v) {
  const double norm = l2_norm(v);
  if (norm < kMinNorm) fail(ErrorCode::kZeroNormEmbedding, "vector norm below 1e-12");
  return norm;
}

}  // namespace

double l2_norm(VectorView v) {
  double sum = 0.0;
  for (const float x : v) {
    if (!std::isfinite(x)) fail(ErrorCode::kNonFiniteInput, "non-finite vector component");
    sum += static_cast<double>(x) * static_cast<double>(x);
  }
  return std::sqrt(sum);
}

double dot(VectorView u, VectorView v) {
  require_same_dim(u, v);
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    sum += static_cast<double>(u[i]) * static_cast<double>(v[i]);
  }
  return sum;
}

std::vector<double> normalize_f64(VectorView v) {
  const double norm = checked_norm(v);
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<double>(v[i]) / norm;
  return out;
}

Vector normalize(VectorView v) {
  const std::vector<double> unit = normalize_f64(v);
  return Vector(unit.begin(), unit.end());
}

double cosine(VectorView u, VectorView v) {
  require_same_dim(u, v);
  const double nu = checked_norm(u);
  const double nv = checked_norm(v);
  return std::clamp(dot(u, v) / (nu * nv), -1.0, 1.0);
}

Vector mean_rows(std::span<const VectorView> rows) {
  if (rows.empty()) fail(ErrorCode::kEmptySet, "mean of an empty set of vectors");
  const std::size_t dim = rows.front().size();
  std::vector<double> acc(dim, 0.0);
  for (const VectorView row : rows) {
    require_same_dim(rows.front(), row);
    for (std::size_t i = 0; i < dim; ++i) acc[i] += static_cast<double>(row[i]);
  }
  Vector out(dim);
  const double count = static_cast<double>(rows.size());
  for (std::size_t i = 0; i < dim; ++i) out[i] = static_cast<float>(acc[i] / count);
  return out;
}

}  // namespace utie
