#include "core/store.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "core/error.hpp"
#include "core/npy.hpp"

namespace utie {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr const char* kEmbeddingsFile = "embeddings.npy";
constexpr const char* kManifestFile = "manifest.jsonl";
constexpr const char* kAnchorsFile = "anchors.npy";
constexpr const char* kAnchorsMetaFile = "anchors.json";

void check_rows_normalizable(const Matrix& m, const std::string& what) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const VectorView row = m.row(r);
    if (std::any_of(row.begin(), row.end(), [](float x) { return !std::isfinite(x); })) {
      fail(ErrorCode::kNonFiniteInput, what + " row " + std::to_string(r) + " has non-finite values");
    }
    if (l2_norm(row) < kMinNorm) {
      fail(ErrorCode::kZeroNormEmbedding, what + " row " + std::to_string(r) + " has norm below 1e-12");
    }
  }
}

std::ifstream open_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path.string());
  return in;
}

std::ofstream create_text(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(ErrorCode::kIoError, "cannot open " + path.string() + " for writing");
  return out;
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIoError, "cannot create directory " + dir.string() + ": " + ec.message());
}

const json& require_field(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(ErrorCode::kMalformedRecord, where + ": missing field '" + key + "'");
  return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
  const json& value = require_field(obj, key, where);
  if (!value.is_string()) fail(ErrorCode::kMalformedRecord, where + ": field '" + key + "' must be a string");
  return value.get<std::string>();
}

ManifestRecord parse_record(const std::string& line, const std::string& where) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kMalformedRecord, where + ": " + e.what());
  }
  if (!obj.is_object()) fail(ErrorCode::kMalformedRecord, where + ": expected a JSON object");
  ManifestRecord rec;
  rec.id = require_string(obj, "id", where);
  const json& row = require_field(obj, "row", where);
  if (!row.is_number_integer()) fail(ErrorCode::kMalformedRecord, where + ": field 'row' must be an integer");
  if (row.get<long long>() < 0) {
    fail(ErrorCode::kRowOutOfRange, where + ": negative row " + std::to_string(row.get<long long>()));
  }
  rec.row = row.get<std::size_t>();
  rec.identity = require_string(obj, "identity", where);
  rec.group = require_string(obj, "group", where);
  return rec;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

int parse_fold(const std::string& text, const std::string& where) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    fail(ErrorCode::kMalformedRecord, where + ": fold '" + text + "' is not a non-negative integer");
  }
  try {
    return std::stoi(text);
  } catch (const std::out_of_range&) {
    fail(ErrorCode::kMalformedRecord, where + ": fold '" + text + "' out of range");
  }
}

}  // namespace

EmbeddingBundle::EmbeddingBundle(Matrix embeddings, std::vector<ManifestRecord> records)
    : embeddings_(std::move(embeddings)), records_(std::move(records)) {
  const std::size_t rows = embeddings_.rows();
  if (rows == 0 || embeddings_.cols() == 0) {
    fail(ErrorCode::kShapeError, "embedding matrix must have at least one row and one column");
  }
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  row_to_record_.assign(rows, kUnset);
  id_to_row_.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const ManifestRecord& rec = records_[i];
    if (rec.id.empty()) fail(ErrorCode::kEmptyField, "manifest record " + std::to_string(i) + " has an empty id");
    if (rec.group.empty()) fail(ErrorCode::kEmptyField, "manifest record '" + rec.id + "' has an empty group");
    if (rec.row >= rows) {
      fail(ErrorCode::kRowOutOfRange, "manifest record '" + rec.id + "' points at row " +
                                          std::to_string(rec.row) + " of a " + std::to_string(rows) +
                                          "-row matrix");
    }
    if (!id_to_row_.emplace(rec.id, rec.row).second) {
      fail(ErrorCode::kDuplicateId, "duplicate manifest id '" + rec.id + "'");
    }
    if (row_to_record_[rec.row] != kUnset) {
      fail(ErrorCode::kDuplicateRow, "row " + std::to_string(rec.row) + " claimed by '" +
                                         records_[row_to_record_[rec.row]].id + "' and '" + rec.id + "'");
    }
    row_to_record_[rec.row] = i;
  }
  for (std::size_t r = 0; r < rows; ++r) {
    if (row_to_record_[r] == kUnset) {
      fail(ErrorCode::kRowUncovered, "matrix row " + std::to_string(r) + " has no manifest record");
    }
  }
  check_rows_normalizable(embeddings_, "embedding");
}

std::optional<std::size_t> EmbeddingBundle::find(const std::string& id) const {
  const auto it = id_to_row_.find(id);
  if (it == id_to_row_.end()) return std::nullopt;
  return it->second;
}

EmbeddingBundle EmbeddingBundle::with_embeddings(Matrix embeddings) const {
  if (embeddings.rows() != embeddings_.rows()) {
    fail(ErrorCode::kShapeError, "replacement matrix has a different row count");
  }
  return EmbeddingBundle(std::move(embeddings), records_);
}

AnchorSet::AnchorSet(Matrix anchors, std::vector<std::string> labels, std::string prompt_template,
                     std::string model_id)
    : anchors_(std::move(anchors)),
      labels_(std::move(labels)),
      prompt_template_(std::move(prompt_template)),
      model_id_(std::move(model_id)) {
  if (labels_.size() != anchors_.rows()) {
    fail(ErrorCode::kLabelCountMismatch, std::to_string(labels_.size()) + " labels for " +
                                             std::to_string(anchors_.rows()) + " anchor rows");
  }
  if (anchors_.rows() < 2) fail(ErrorCode::kDegenerateAnchorSet, "an anchor set needs at least 2 anchors");
  if (anchors_.cols() == 0) fail(ErrorCode::kShapeError, "anchor matrix has zero columns");
  std::set<std::string> seen;
  for (const std::string& label : labels_) {
    if (label.empty()) fail(ErrorCode::kEmptyField, "empty anchor label");
    if (!seen.insert(label).second) fail(ErrorCode::kDuplicateLabel, "duplicate anchor label '" + label + "'");
  }
  check_rows_normalizable(anchors_, "anchor");
}

std::optional<std::size_t> AnchorSet::index_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

void validate_pairs(const PairSet& set) {
  if (set.pairs.empty()) return;
  const bool folded = set.pairs.front().fold.has_value();
  int max_fold = -1;
  std::set<int> folds;
  for (std::size_t i = 0; i < set.pairs.size(); ++i) {
    const Pair& p = set.pairs[i];
    if (p.id_a == p.id_b) fail(ErrorCode::kSelfPair, "pair " + std::to_string(i) + " compares '" + p.id_a + "' with itself");
    if (p.fold.has_value() != folded) {
      fail(ErrorCode::kMixedFoldPresence, "pair " + std::to_string(i) + " disagrees with pair 0 on fold presence");
    }
    if (folded) {
      if (*p.fold < 0) fail(ErrorCode::kNonContiguousFolds, "negative fold in pair " + std::to_string(i));
      folds.insert(*p.fold);
      max_fold = std::max(max_fold, *p.fold);
    }
  }
  if (folded && static_cast<int>(folds.size()) != max_fold + 1) {
    fail(ErrorCode::kNonContiguousFolds,
         "fold values must cover 0.." + std::to_string(max_fold) + " without gaps");
  }
}

EmbeddingBundle load_bundle(const std::filesystem::path& dir, std::vector<std::string>* warnings) {
  Matrix embeddings = read_matrix(dir / kEmbeddingsFile, warnings);
  const std::filesystem::path manifest_path = dir / kManifestFile;
  std::ifstream in = open_text(manifest_path);
  std::vector<ManifestRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    records.push_back(parse_record(line, manifest_path.string() + ":" + std::to_string(line_no)));
  }
  if (in.bad()) fail(ErrorCode::kIoError, "read failed for " + manifest_path.string());
  return EmbeddingBundle(std::move(embeddings), std::move(records));
}

void write_bundle(const EmbeddingBundle& bundle, const std::filesystem::path& dir) {
  ensure_dir(dir);
  write_matrix(bundle.embeddings(), dir / kEmbeddingsFile);
  std::ofstream out = create_text(dir / kManifestFile);
  for (const ManifestRecord& rec : bundle.records()) {
    ordered_json obj;
    obj["id"] = rec.id;
    obj["row"] = rec.row;
    obj["identity"] = rec.identity;
    obj["group"] = rec.group;
    out << obj.dump() << '\n';
  }
  if (!out) fail(ErrorCode::kIoError, "write failed for " + (dir / kManifestFile).string());
}

AnchorSet load_anchors(const std::filesystem::path& dir, std::vector<std::string>* warnings) {
  Matrix anchors = read_matrix(dir / kAnchorsFile, warnings);
  const std::filesystem::path meta_path = dir / kAnchorsMetaFile;
  std::ifstream in = open_text(meta_path);
  json meta;
  try {
    meta = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kMalformedRecord, meta_path.string() + ": " + e.what());
  }
  const std::string where = meta_path.string();
  if (!meta.is_object()) fail(ErrorCode::kMalformedRecord, where + ": expected a JSON object");
  const json& labels_json = require_field(meta, "labels", where);
  if (!labels_json.is_array()) fail(ErrorCode::kMalformedRecord, where + ": 'labels' must be an array");
  std::vector<std::string> labels;
  for (const json& label : labels_json) {
    if (!label.is_string()) fail(ErrorCode::kMalformedRecord, where + ": labels must be strings");
    labels.push_back(label.get<std::string>());
  }
  return AnchorSet(std::move(anchors), std::move(labels), require_string(meta, "prompt_template", where),
                   require_string(meta, "model_id", where));
}

void write_anchors(const AnchorSet& anchors, const std::filesystem::path& dir) {
  ensure_dir(dir);
  write_matrix(anchors.anchors(), dir / kAnchorsFile);
  ordered_json meta;
  meta["labels"] = anchors.labels();
  meta["prompt_template"] = anchors.prompt_template();
  meta["model_id"] = anchors.model_id();
  std::ofstream out = create_text(dir / kAnchorsMetaFile);
  out << meta.dump(2) << '\n';
  if (!out) fail(ErrorCode::kIoError, "write failed for " + (dir / kAnchorsMetaFile).string());
}

PairSet load_pairs(const std::filesystem::path& path, const EmbeddingBundle& bundle) {
  std::ifstream in = open_text(path);
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  bool header_has_fold = false;
  PairSet set;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    const std::vector<std::string> fields = split_csv_line(line);
    if (!header_seen) {
      if (line == "id_a,id_b,label,fold") {
        header_has_fold = true;
      } else if (line != "id_a,id_b,label") {
        fail(ErrorCode::kMalformedRecord, where + ": expected header 'id_a,id_b,label[,fold]'");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() < 3 || fields.size() > 4) {
      fail(ErrorCode::kMalformedRecord, where + ": expected 3 or 4 fields, got " + std::to_string(fields.size()));
    }
    Pair pair;
    pair.id_a = fields[0];
    pair.id_b = fields[1];
    if (fields[2] == "1") {
      pair.genuine = true;
    } else if (fields[2] != "0") {
      fail(ErrorCode::kBadLabel, where + ": label '" + fields[2] + "' is not 0 or 1");
    }
    const bool has_fold_cell = fields.size() == 4 && !fields[3].empty();
    if (has_fold_cell) {
      if (!header_has_fold) {
        fail(ErrorCode::kMixedFoldPresence, where + ": fold value without a fold column");
      }
      pair.fold = parse_fold(fields[3], where);
    }
    for (const std::string* id : {&pair.id_a, &pair.id_b}) {
      if (!bundle.find(*id)) fail(ErrorCode::kDanglingPairId, where + ": unknown id '" + *id + "'");
    }
    set.pairs.push_back(std::move(pair));
  }
  if (in.bad()) fail(ErrorCode::kIoError, "read failed for " + path.string());
  if (!header_seen) fail(ErrorCode::kMalformedRecord, path.string() + ": empty pairs file");
  validate_pairs(set);
  return set;
}

void write_pairs(const PairSet& set, const std::filesystem::path& path) {
  validate_pairs(set);
  std::ofstream out = create_text(path);
  const bool folded = set.has_folds();
  out << (folded ? "id_a,id_b,label,fold\n" : "id_a,id_b,label\n");
  for (const Pair& p : set.pairs) {
    for (const std::string* id : {&p.id_a, &p.id_b}) {
      if (id->find_first_of(",\r\n") != std::string::npos) {
        fail(ErrorCode::kInvalidArgument, "id '" + *id + "' cannot be written to an unquoted CSV");
      }
    }
    out << p.id_a << ',' << p.id_b << ',' << (p.genuine ? '1' : '0');
    if (folded) out << ',' << *p.fold;
    out << '\n';
  }
  if (!out) fail(ErrorCode::kIoError, "write failed for " + path.string());
}

}  // namespace utie
