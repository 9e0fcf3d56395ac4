#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core/store.hpp"

namespace utie {

struct SynthConfig {
  std::size_t n_groups = 4;
  std::size_t ids_per_group = 20;
  std::size_t images_per_id = 5;
  std::size_t dim = 64;
  std::uint64_t seed = 7;
  double group_strength = 0.6;
  double identity_strength = 0.7;
  double noise_sigma = 0.1;
  // Optional per-group multiplier on noise_sigma; empty means 1 for all.
  std::vector<double> noise_scale;
};

// Throws ConfigInvalid on violation.
void validate(const SynthConfig& config);

struct SynthData {
  EmbeddingBundle bundle;
  AnchorSet anchors;
  std::map<std::string, PairSet> pairs_by_group;
};

// Deterministic population. Draw order from one Gaussian stream seeded with
// config.seed:
//   1. n_groups x dim draws, orthonormalized in order (modified Gram-Schmidt)
//      into group directions; these are also the anchors "group0", ...
//   2. per group, per identity: dim draws projected onto the complement of
//      the group directions and normalized (identity direction), then per
//      image dim noise draws. sample = gs*group + is*identity +
//      sigma*scale[g]*noise, unit-normalized.
//   3. per group: all within-identity genuine pairs (a < b), then as many
//      impostor pairs drawn uniformly among same-group samples of different
//      identities. fold = pair index mod 10.
SynthData generate(const SynthConfig& config);

}  // namespace utie
