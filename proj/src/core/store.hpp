#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "core/matrix.hpp"
#include "core/vecmath.hpp"

namespace utie {

struct ManifestRecord {
  std::string id;
  std::size_t row = 0;
  std::string identity;
  std::string group;

  friend bool operator==(const ManifestRecord&, const ManifestRecord&) = default;
};

// Embedding matrix plus one manifest record per row. Construction validates
// every invariant; a constructed bundle is always well-formed.
class EmbeddingBundle {
 public:
  EmbeddingBundle(Matrix embeddings, std::vector<ManifestRecord> records);

  const Matrix& embeddings() const noexcept { return embeddings_; }
  const std::vector<ManifestRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return embeddings_.rows(); }
  std::size_t dim() const noexcept { return embeddings_.cols(); }

  VectorView row(std::size_t r) const noexcept { return embeddings_.row(r); }
  // Row index for a record id, or nullopt.
  std::optional<std::size_t> find(const std::string& id) const;
  const ManifestRecord& record_for_row(std::size_t r) const { return records_[row_to_record_[r]]; }

  // Same manifest, new embeddings (same row count required).
  EmbeddingBundle with_embeddings(Matrix embeddings) const;

 private:
  Matrix embeddings_;
  std::vector<ManifestRecord> records_;
  std::vector<std::size_t> row_to_record_;
  std::unordered_map<std::string, std::size_t> id_to_row_;
};

class AnchorSet {
 public:
  AnchorSet(Matrix anchors, std::vector<std::string> labels, std::string prompt_template,
            std::string model_id);

  const Matrix& anchors() const noexcept { return anchors_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& prompt_template() const noexcept { return prompt_template_; }
  const std::string& model_id() const noexcept { return model_id_; }
  std::size_t size() const noexcept { return anchors_.rows(); }
  std::size_t dim() const noexcept { return anchors_.cols(); }
  VectorView anchor(std::size_t i) const noexcept { return anchors_.row(i); }
  std::optional<std::size_t> index_of(const std::string& label) const;

 private:
  Matrix anchors_;
  std::vector<std::string> labels_;
  std::string prompt_template_;
  std::string model_id_;
};

struct Pair {
  std::string id_a;
  std::string id_b;
  bool genuine = false;
  std::optional<int> fold;

  friend bool operator==(const Pair&, const Pair&) = default;
};

struct PairSet {
  std::vector<Pair> pairs;

  bool has_folds() const noexcept { return !pairs.empty() && pairs.front().fold.has_value(); }
};

// Checks self-pairs, fold presence and fold contiguity. Throws on violation.
void validate_pairs(const PairSet& pairs);

EmbeddingBundle load_bundle(const std::filesystem::path& dir,
                            std::vector<std::string>* warnings = nullptr);
void write_bundle(const EmbeddingBundle& bundle, const std::filesystem::path& dir);

AnchorSet load_anchors(const std::filesystem::path& dir, std::vector<std::string>* warnings = nullptr);
void write_anchors(const AnchorSet& anchors, const std::filesystem::path& dir);

// Parses `id_a,id_b,label[,fold]` CSV and resolves every id against `bundle`.
PairSet load_pairs(const std::filesystem::path& path, const EmbeddingBundle& bundle);
void write_pairs(const PairSet& pairs, const std::filesystem::path& path);

}  // namespace utie
