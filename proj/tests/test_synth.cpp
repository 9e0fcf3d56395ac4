#include <doctest.h>

#include <cmath>
#include <set>

#include "core/synth.hpp"
#include "core/vecmath.hpp"
#include "core/zero_shot.hpp"
#include "helpers.hpp"

using utie::ErrorCode;
using testing::error_of;

namespace {

const utie::ManifestRecord& record_of(const utie::EmbeddingBundle& bundle, const std::string& id) {
  return bundle.record_for_row(*bundle.find(id));
}

}  // namespace

TEST_CASE("synth: shape of the default population") {
  const auto data = utie::generate({});
  CHECK(data.bundle.size() == 4 * 20 * 5);
  CHECK(data.bundle.dim() == 64);
  CHECK(data.anchors.size() == 4);
  CHECK(data.anchors.labels() == std::vector<std::string>{"group0", "group1", "group2", "group3"});
  CHECK(data.pairs_by_group.size() == 4);
  for (const auto& [group, set] : data.pairs_by_group) {
    // 20 identities x C(5,2) genuine pairs, same number of impostors.
    CHECK(set.pairs.size() == 2 * 20 * 10);
    CHECK(set.has_folds());
    for (std::size_t i = 0; i < set.pairs.size(); ++i) CHECK(*set.pairs[i].fold == static_cast<int>(i % 10));
  }
  for (std::size_t r = 0; r < data.bundle.size(); ++r) {
    CHECK(utie::l2_norm(data.bundle.row(r)) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("synth: determinism") {
  utie::SynthConfig config;
  config.seed = 1234;
  const auto a = utie::generate(config);
  const auto b = utie::generate(config);
  CHECK(a.bundle.embeddings() == b.bundle.embeddings());
  CHECK(a.bundle.records() == b.bundle.records());
  CHECK(a.anchors.anchors() == b.anchors.anchors());
  for (const auto& [group, set] : a.pairs_by_group) CHECK(set.pairs == b.pairs_by_group.at(group).pairs);

  config.seed = 1235;
  CHECK_FALSE(utie::generate(config).bundle.embeddings() == a.bundle.embeddings());
}

TEST_CASE("synth: group directions are orthonormal") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    utie::SynthConfig config;
    config.seed = seed;
    config.n_groups = 6;
    config.dim = 8;
    const auto data = utie::generate(config);
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < 6; ++j) {
        const double d = utie::dot(data.anchors.anchor(i), data.anchors.anchor(j));
        CHECK(std::fabs(d - (i == j ? 1.0 : 0.0)) <= 1e-6);
      }
    }
  }
}

TEST_CASE("synth: pair identity rules") {
  utie::SynthConfig config;
  config.seed = 3;
  const auto data = utie::generate(config);
  for (const auto& [group, set] : data.pairs_by_group) {
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& p : set.pairs) {
      const auto& a = record_of(data.bundle, p.id_a);
      const auto& b = record_of(data.bundle, p.id_b);
      CHECK(p.id_a != p.id_b);
      CHECK(a.group == group);
      CHECK(b.group == group);
      CHECK((a.identity == b.identity) == p.genuine);
    }
  }
}

TEST_CASE("synth: noise-free samples sit on their anchors") {
  utie::SynthConfig config;
  config.noise_sigma = 0.0;
  config.identity_strength = 0.0;
  config.group_strength = 1.0;
  config.ids_per_group = 3;
  config.images_per_id = 2;
  const auto data = utie::generate(config);
  for (std::size_t r = 0; r < data.bundle.size(); ++r) {
    const auto& group = data.bundle.record_for_row(r).group;
    const std::size_t g = static_cast<std::size_t>(group.back() - '0');
    CHECK(utie::cosine(data.bundle.row(r), data.anchors.anchor(g)) == doctest::Approx(1.0));
  }
  const auto report = utie::zero_shot_accuracy(data.bundle, data.anchors);
  for (const auto& [group, acc] : report.per_group_accuracy) CHECK(acc == 100.0);
}

TEST_CASE("synth: defaults classify above 95% and agree with the oracle") {
  const auto data = utie::generate({});
  const auto report = utie::zero_shot_accuracy(data.bundle, data.anchors);
  std::vector<std::string> groups;
  for (const auto& rec : data.bundle.records()) groups.push_back(rec.group);
  // records() is in row order for generated bundles.
  const auto expected = oracle::zero_shot(testing::rows_from(data.bundle.embeddings()), groups,
                                          testing::rows_from(data.anchors.anchors()), data.anchors.labels());
  CHECK(report.per_group_accuracy == expected);
  for (const auto& [group, acc] : report.per_group_accuracy) CHECK(acc > 95.0);
}

TEST_CASE("synth: per-group noise scale") {
  utie::SynthConfig config;
  config.noise_scale = {1.0, 1.0, 1.0, 2.0};
  const auto noisy = utie::generate(config);
  const auto plain = utie::generate({});
  // Same draws, so groups with scale 1 are identical.
  for (std::size_t r = 0; r < plain.bundle.size(); ++r) {
    const bool last = plain.bundle.record_for_row(r).group == "group3";
    const bool same = std::equal(plain.bundle.row(r).begin(), plain.bundle.row(r).end(), noisy.bundle.row(r).begin());
    CHECK(same != last);
  }
}

TEST_CASE("synth: invalid configs") {
  auto bad = [](auto mutate) {
    utie::SynthConfig config;
    mutate(config);
    return error_of([&] { utie::generate(config); });
  };
  CHECK(bad([](utie::SynthConfig& c) { c.n_groups = 0; }) == ErrorCode::kConfigInvalid);
  CHECK(bad([](utie::SynthConfig& c) { c.ids_per_group = 0; }) == ErrorCode::kConfigInvalid);
  CHECK(bad([](utie::SynthConfig& c) { c.images_per_id = 0; }) == ErrorCode::kConfigInvalid);
  CHECK(bad([](utie::SynthConfig& c) { c.dim = 3; }) == ErrorCode::kConfigInvalid);
  CHECK(bad([](utie::SynthConfig& c) { c.group_strength = 1.2; }) == ErrorCode::kConfigInvalid);
  CHECK(bad([](utie::SynthConfig& c) { c.identity_strength = -0.1; }) == ErrorCode::kConfigInvalid);
  CHECK(bad([](utie::SynthConfig& c) { c.group_strength = 0.8; c.identity_strength = 0.8; }) == ErrorCode::kConfigInvalid);
  CHECK(bad([](utie::SynthConfig& c) { c.noise_sigma = -1.0; }) == ErrorCode::kConfigInvalid);
  CHECK(bad([](utie::SynthConfig& c) { c.noise_scale = {1.0, 2.0}; }) == ErrorCode::kConfigInvalid);
  CHECK(bad([](utie::SynthConfig& c) { c.noise_scale = {1.0, 1.0, 1.0, -2.0}; }) == ErrorCode::kConfigInvalid);
  CHECK(bad([](utie::SynthConfig&) {}) == ErrorCode::kOk);
}
