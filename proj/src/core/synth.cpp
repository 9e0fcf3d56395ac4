#include "core/synth.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "core/error.hpp"
#include "core/prng.hpp"
#include "core/zero_shot.hpp"

namespace utie {

double GaussianStream::next() noexcept {
  if (spare_) {
    const double out = *spare_;
    spare_.reset();
    return out;
  }
  const double u1 = static_cast<double>((rng_.next() >> 11) + 1) * 0x1.0p-53;
  const double u2 = rng_.uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

namespace {

constexpr int kSynthFolds = 10;
// A draw whose residual after projection falls below this is discarded.
constexpr double kDegenerateResidual = 1e-6;

using Dense = std::vector<double>;

double norm(const Dense& v) {
  double s = 0.0;
  for (const double x : v) s += x * x;
  return std::sqrt(s);
}

void project_out(Dense& v, const std::vector<Dense>& basis) {
  for (const Dense& b : basis) {
    double d = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) d += v[k] * b[k];
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= d * b[k];
  }
}

Dense draw(GaussianStream& gauss, std::size_t dim) {
  Dense v(dim);
  for (double& x : v) x = gauss.next();
  return v;
}

// Draws until the projection onto the complement of `basis` is non-degenerate.
Dense draw_orthogonal_unit(GaussianStream& gauss, std::size_t dim, const std::vector<Dense>& basis) {
  while (true) {
    Dense v = draw(gauss, dim);
    project_out(v, basis);
    const double n = norm(v);
    if (n > kDegenerateResidual) {
      for (double& x : v) x /= n;
      return v;
    }
  }
}

std::string padded(std::size_t value, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*zu", width, value);
  return buf;
}

}  // namespace

void validate(const SynthConfig& c) {
  auto bad = [](const std::string& what) { fail(ErrorCode::kConfigInvalid, "synth config: " + what); };
  if (c.n_groups < 2) bad("need at least 2 groups");
  if (c.ids_per_group < 1 || c.images_per_id < 1) bad("counts must be at least 1");
  if (c.dim < c.n_groups) bad("dim must be at least the number of groups");
  for (const double s : {c.group_strength, c.identity_strength}) {
    if (!(s >= 0.0 && s <= 1.0)) bad("strengths must lie in [0, 1]");
  }
  if (c.group_strength * c.group_strength + c.identity_strength * c.identity_strength > 1.0 + 1e-12) {
    bad("group_strength^2 + identity_strength^2 must not exceed 1");
  }
  if (!(c.noise_sigma >= 0.0) || !std::isfinite(c.noise_sigma)) bad("noise_sigma must be finite and >= 0");
  if (!c.noise_scale.empty() && c.noise_scale.size() != c.n_groups) bad("noise_scale needs one entry per group");
  for (const double s : c.noise_scale) {
    if (!(s >= 0.0) || !std::isfinite(s)) bad("noise_scale entries must be finite and >= 0");
  }
  if (c.identity_strength > 0.0 && c.dim == c.n_groups) {
    bad("identity directions need dim > n_groups");
  }
  if (c.group_strength == 0.0 && c.identity_strength == 0.0 && c.noise_sigma == 0.0) {
    bad("all-zero strengths produce zero-norm samples");
  }
}

SynthData generate(const SynthConfig& config) {
  validate(config);
  GaussianStream gauss(config.seed);
  const std::size_t dim = config.dim;

  std::vector<Dense> group_dirs;
  for (std::size_t g = 0; g < config.n_groups; ++g) group_dirs.push_back(draw_orthogonal_unit(gauss, dim, group_dirs));

  Matrix anchors(config.n_groups, dim);
  std::vector<std::string> labels;
  for (std::size_t g = 0; g < config.n_groups; ++g) {
    labels.push_back("group" + std::to_string(g));
    for (std::size_t k = 0; k < dim; ++k) anchors.row(g)[k] = static_cast<float>(group_dirs[g][k]);
  }

  const std::size_t per_group = config.ids_per_group * config.images_per_id;
  Matrix embeddings(config.n_groups * per_group, dim);
  std::vector<ManifestRecord> records;
  records.reserve(embeddings.rows());
  for (std::size_t g = 0; g < config.n_groups; ++g) {
    const double sigma = config.noise_sigma * (config.noise_scale.empty() ? 1.0 : config.noise_scale[g]);
    for (std::size_t i = 0; i < config.ids_per_group; ++i) {
      Dense identity_dir(dim, 0.0);
      if (config.identity_strength > 0.0) identity_dir = draw_orthogonal_unit(gauss, dim, group_dirs);
      const std::string identity = labels[g] + "_id" + padded(i, 3);
      for (std::size_t k = 0; k < config.images_per_id; ++k) {
        Dense sample(dim);
        for (std::size_t c = 0; c < dim; ++c) {
          sample[c] = config.group_strength * group_dirs[g][c] + config.identity_strength * identity_dir[c] +
                      sigma * gauss.next();
        }
        const double n = norm(sample);
        if (n < kMinNorm) fail(ErrorCode::kZeroNormEmbedding, "synthetic sample has zero norm");
        const std::size_t row = records.size();
        for (std::size_t c = 0; c < dim; ++c) embeddings.row(row)[c] = static_cast<float>(sample[c] / n);
        records.push_back({identity + "_img" + padded(k, 2), row, identity, labels[g]});
      }
    }
  }

  std::map<std::string, PairSet> pairs_by_group;
  SplitMix64& uniform = gauss.uniform_source();
  for (std::size_t g = 0; g < config.n_groups; ++g) {
    const std::size_t base = g * per_group;
    std::vector<Pair> genuine;
    for (std::size_t i = 0; i < config.ids_per_group; ++i) {
      for (std::size_t a = 0; a < config.images_per_id; ++a) {
        for (std::size_t b = a + 1; b < config.images_per_id; ++b) {
          const std::size_t ra = base + i * config.images_per_id + a;
          const std::size_t rb = base + i * config.images_per_id + b;
          genuine.push_back({records[ra].id, records[rb].id, true, std::nullopt});
        }
      }
    }
    PairSet set;
    set.pairs = genuine;
    if (config.ids_per_group >= 2) {
      for (std::size_t n = 0; n < genuine.size(); ++n) {
        std::size_t ra = 0;
        std::size_t rb = 0;
        do {
          ra = base + uniform.below(per_group);
          rb = base + uniform.below(per_group);
        } while (records[ra].identity == records[rb].identity);
        set.pairs.push_back({records[ra].id, records[rb].id, false, std::nullopt});
      }
    }
    const int folds = static_cast<int>(std::min<std::size_t>(kSynthFolds, set.pairs.size()));
    for (std::size_t p = 0; p < set.pairs.size(); ++p) set.pairs[p].fold = static_cast<int>(p % static_cast<std::size_t>(folds));
    pairs_by_group.emplace(labels[g], std::move(set));
  }

  AnchorSet anchor_set(std::move(anchors), labels, std::string(kDefaultPromptTemplate), "synthetic");
  return {EmbeddingBundle(std::move(embeddings), std::move(records)), std::move(anchor_set),
          std::move(pairs_by_group)};
}

}  // namespace utie
