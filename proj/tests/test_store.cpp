#include <doctest.h>

#include <random>

#include "core/npy.hpp"
#include "core/store.hpp"
#include "helpers.hpp"

using utie::ErrorCode;
using utie::Matrix;
using testing::error_of;

namespace {

void write_bundle_files(const testing::TempDir& dir, const Matrix& m, const std::string& manifest) {
  utie::write_matrix(m, dir / "embeddings.npy");
  testing::write_text(dir / "manifest.jsonl", manifest);
}

const Matrix k3x2(3, 2, {1, 0, 0, 1, 1, 1});

std::string record(const std::string& id, int row, const std::string& group = "A") {
  return R"({"id": ")" + id + R"(", "row": )" + std::to_string(row) + R"(, "identity": "p)" + id +
         R"(", "group": ")" + group + "\"}\n";
}

}  // namespace

TEST_CASE("store: valid bundle loads") {
  testing::TempDir dir;
  write_bundle_files(dir, k3x2, record("a", 0) + record("b", 2, "B") + "\n" + record("c", 1));
  const utie::EmbeddingBundle b = utie::load_bundle(dir.path());
  CHECK(b.size() == 3);
  CHECK(b.dim() == 2);
  CHECK(b.find("b") == 2u);
  CHECK(b.record_for_row(2).group == "B");
  CHECK_FALSE(b.find("zz").has_value());
}

TEST_CASE("store: bundle validation errors") {
  testing::TempDir dir;
  SUBCASE("duplicate id") {
    write_bundle_files(dir, k3x2, record("a", 0) + record("a", 1) + record("c", 2));
    CHECK(error_of([&] { utie::load_bundle(dir.path()); }) == ErrorCode::kDuplicateId);
  }
  SUBCASE("row out of range") {
    write_bundle_files(dir, k3x2, record("a", 0) + record("b", 5) + record("c", 2));
    CHECK(error_of([&] { utie::load_bundle(dir.path()); }) == ErrorCode::kRowOutOfRange);
  }
  SUBCASE("negative row") {
    write_bundle_files(dir, k3x2, record("a", 0) + record("b", -1) + record("c", 2));
    CHECK(error_of([&] { utie::load_bundle(dir.path()); }) == ErrorCode::kRowOutOfRange);
  }
  SUBCASE("row uncovered") {
    write_bundle_files(dir, k3x2, record("a", 0) + record("c", 2));
    CHECK(error_of([&] { utie::load_bundle(dir.path()); }) == ErrorCode::kRowUncovered);
  }
  SUBCASE("row claimed twice") {
    write_bundle_files(dir, k3x2, record("a", 0) + record("b", 0) + record("c", 2));
    CHECK(error_of([&] { utie::load_bundle(dir.path()); }) == ErrorCode::kDuplicateRow);
  }
  SUBCASE("zero-norm row") {
    write_bundle_files(dir, Matrix(2, 2, {1, 0, 0, 0}), record("a", 0) + record("b", 1));
    CHECK(error_of([&] { utie::load_bundle(dir.path()); }) == ErrorCode::kZeroNormEmbedding);
  }
  SUBCASE("empty group") {
    write_bundle_files(dir, Matrix(1, 2, {1, 0}), record("a", 0, ""));
    CHECK(error_of([&] { utie::load_bundle(dir.path()); }) == ErrorCode::kEmptyField);
  }
  SUBCASE("malformed json line") {
    write_bundle_files(dir, Matrix(1, 2, {1, 0}), "{\"id\": \"a\", \"row\": 0,\n");
    CHECK(error_of([&] { utie::load_bundle(dir.path()); }) == ErrorCode::kMalformedRecord);
  }
  SUBCASE("missing field") {
    write_bundle_files(dir, Matrix(1, 2, {1, 0}), R"({"id": "a", "row": 0, "group": "A"})");
    CHECK(error_of([&] { utie::load_bundle(dir.path()); }) == ErrorCode::kMalformedRecord);
  }
  SUBCASE("missing manifest") {
    utie::write_matrix(k3x2, dir / "embeddings.npy");
    CHECK(error_of([&] { utie::load_bundle(dir.path()); }) == ErrorCode::kIoError);
  }
}

TEST_CASE("store: bundle round-trip reproduces embeddings and records exactly") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    testing::TempDir dir;
    const auto rows = testing::random_rows(rng, 4 + trial, 16);
    std::vector<std::string> groups;
    for (std::size_t i = 0; i < rows.size(); ++i) groups.push_back(i % 2 ? "Asian" : "African \"quoted\" é");
    const auto bundle = testing::bundle_from(rows, groups);
    utie::write_bundle(bundle, dir / "b");
    const auto back = utie::load_bundle(dir / "b");
    CHECK(back.embeddings() == bundle.embeddings());
    CHECK(back.records() == bundle.records());
  }
}

TEST_CASE("store: anchors") {
  testing::TempDir dir;
  const Matrix four(4, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1});
  utie::write_matrix(four, dir / "anchors.npy");

  SUBCASE("4 anchors + 4 labels") {
    testing::write_text(dir / "anchors.json",
                        R"({"labels": ["African", "Asian", "Caucasian", "Indian"],
                            "prompt_template": "A photo of a {label} person.", "model_id": "clip-vit-b16"})");
    const utie::AnchorSet a = utie::load_anchors(dir.path());
    CHECK(a.size() == 4);
    CHECK(a.index_of("Caucasian") == 2u);
    CHECK(a.model_id() == "clip-vit-b16");
    testing::TempDir out;
    utie::write_anchors(a, out.path());
    const utie::AnchorSet back = utie::load_anchors(out.path());
    CHECK(back.anchors() == a.anchors());
    CHECK(back.labels() == a.labels());
    CHECK(back.prompt_template() == a.prompt_template());
  }
  SUBCASE("label count mismatch") {
    testing::write_text(dir / "anchors.json", R"({"labels": ["a", "b", "c"], "prompt_template": "{label}", "model_id": "m"})");
    CHECK(error_of([&] { utie::load_anchors(dir.path()); }) == ErrorCode::kLabelCountMismatch);
  }
  SUBCASE("duplicate label") {
    testing::write_text(dir / "anchors.json", R"({"labels": ["a", "b", "a", "d"], "prompt_template": "{label}", "model_id": "m"})");
    CHECK(error_of([&] { utie::load_anchors(dir.path()); }) == ErrorCode::kDuplicateLabel);
  }
  SUBCASE("missing model_id") {
    testing::write_text(dir / "anchors.json", R"({"labels": ["a", "b", "c", "d"], "prompt_template": "{label}"})");
    CHECK(error_of([&] { utie::load_anchors(dir.path()); }) == ErrorCode::kMalformedRecord);
  }
  SUBCASE("single anchor") {
    CHECK(error_of([&] { utie::AnchorSet(Matrix(1, 2, {1, 0}), {"a"}, "{label}", "m"); }) ==
          ErrorCode::kDegenerateAnchorSet);
  }
  SUBCASE("zero-norm anchor") {
    CHECK(error_of([&] { utie::AnchorSet(Matrix(2, 2, {1, 0, 0, 0}), {"a", "b"}, "{label}", "m"); }) ==
          ErrorCode::kZeroNormEmbedding);
  }
}

TEST_CASE("store: pairs") {
  testing::TempDir dir;
  const auto bundle = testing::bundle_from({{1, 0}, {0, 1}, {1, 1}}, {"A", "A", "B"});

  SUBCASE("with folds") {
    testing::write_text(dir / "p.csv", "id_a,id_b,label,fold\r\ns0,s1,1,0\ns1,s2,0,1\n");
    const utie::PairSet p = utie::load_pairs(dir / "p.csv", bundle);
    REQUIRE(p.pairs.size() == 2);
    CHECK(p.pairs[0].genuine);
    CHECK(p.pairs[1].fold == 1);
    CHECK(p.has_folds());
  }
  SUBCASE("without folds") {
    testing::write_text(dir / "p.csv", "id_a,id_b,label\ns0,s1,1\ns1,s2,0\n");
    const utie::PairSet p = utie::load_pairs(dir / "p.csv", bundle);
    CHECK_FALSE(p.has_folds());
  }
  SUBCASE("dangling id") {
    testing::write_text(dir / "p.csv", "id_a,id_b,label\ns0,zz,1\n");
    CHECK(error_of([&] { utie::load_pairs(dir / "p.csv", bundle); }) == ErrorCode::kDanglingPairId);
  }
  SUBCASE("bad label") {
    testing::write_text(dir / "p.csv", "id_a,id_b,label\ns0,s1,2\n");
    CHECK(error_of([&] { utie::load_pairs(dir / "p.csv", bundle); }) == ErrorCode::kBadLabel);
  }
  SUBCASE("mixed fold presence") {
    testing::write_text(dir / "p.csv", "id_a,id_b,label,fold\ns0,s1,1,0\ns1,s2,0,\n");
    CHECK(error_of([&] { utie::load_pairs(dir / "p.csv", bundle); }) == ErrorCode::kMixedFoldPresence);
  }
  SUBCASE("fold value without fold column") {
    testing::write_text(dir / "p.csv", "id_a,id_b,label\ns0,s1,1\ns1,s2,0,1\n");
    CHECK(error_of([&] { utie::load_pairs(dir / "p.csv", bundle); }) == ErrorCode::kMixedFoldPresence);
  }
  SUBCASE("fold gap") {
    testing::write_text(dir / "p.csv", "id_a,id_b,label,fold\ns0,s1,1,0\ns1,s2,0,2\n");
    CHECK(error_of([&] { utie::load_pairs(dir / "p.csv", bundle); }) == ErrorCode::kNonContiguousFolds);
  }
  SUBCASE("self pair") {
    testing::write_text(dir / "p.csv", "id_a,id_b,label\ns0,s0,1\n");
    CHECK(error_of([&] { utie::load_pairs(dir / "p.csv", bundle); }) == ErrorCode::kSelfPair);
  }
  SUBCASE("wrong header") {
    testing::write_text(dir / "p.csv", "a,b,label\ns0,s1,1\n");
    CHECK(error_of([&] { utie::load_pairs(dir / "p.csv", bundle); }) == ErrorCode::kMalformedRecord);
  }
  SUBCASE("round trip") {
    utie::PairSet p;
    p.pairs = {{"s0", "s1", true, 0}, {"s2", "s1", false, 1}};
    utie::write_pairs(p, dir / "w.csv");
    CHECK(utie::load_pairs(dir / "w.csv", bundle).pairs == p.pairs);
  }
}
