#pragma once

#include <cstdio>
#include <cstring>
#include <iterator>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/matrix.hpp"
#include "core/store.hpp"
#include "oracles.hpp"

namespace testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("utie_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

inline std::string read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Hand-assembled NPY v1.0 file with an arbitrary header dict and payload.
inline void write_raw_npy(const std::filesystem::path& path, const std::string& dict, const std::string& payload,
                          unsigned char major = 1) {
  std::string header = dict;
  while ((10 + header.size() + 1) % 64 != 0) header.push_back(' ');
  header.push_back('\n');
  std::string out = "\x93NUMPY";
  out.push_back(static_cast<char>(major));
  out.push_back('\0');
  out.push_back(static_cast<char>(header.size() & 0xFF));
  out.push_back(static_cast<char>(header.size() >> 8));
  out += header;
  out += payload;
  write_text(path, out);
}

template <typename T>
std::string le_bytes(const std::vector<T>& values) {
  std::string out(values.size() * sizeof(T), '\0');
  std::memcpy(out.data(), values.data(), out.size());  // host is little-endian in CI
  return out;
}

inline utie::Matrix matrix_from(const oracle::Rows& rows) {
  utie::Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  return m;
}

inline oracle::Rows rows_from(const utie::Matrix& m) {
  oracle::Rows out;
  for (std::size_t r = 0; r < m.rows(); ++r) out.emplace_back(m.row(r).begin(), m.row(r).end());
  return out;
}

inline oracle::Rows basis(std::size_t n, std::size_t dim) {
  oracle::Rows rows(n, std::vector<float>(dim, 0.0F));
  for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1.0F;
  return rows;
}

inline utie::AnchorSet anchors_from(const oracle::Rows& rows) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < rows.size(); ++i) labels.push_back("class" + std::to_string(i));
  return utie::AnchorSet(matrix_from(rows), labels, "A photo of a {label} person.", "test");
}

inline oracle::Rows random_rows(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::normal_distribution<float> gauss(0.0F, 1.0F);
  oracle::Rows rows(n, std::vector<float>(dim));
  for (auto& row : rows) {
    for (float& x : row) x = gauss(rng);
  }
  return rows;
}

inline utie::EmbeddingBundle bundle_from(const oracle::Rows& rows, const std::vector<std::string>& groups) {
  std::vector<utie::ManifestRecord> records;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    records.push_back({"s" + std::to_string(r), r, "id" + std::to_string(r), groups[r]});
  }
  return utie::EmbeddingBundle(matrix_from(rows), records);
}

template <typename Fn>
utie::ErrorCode error_of(Fn&& fn) {
  try {
    fn();
  } catch (const utie::Error& e) {
    return e.code();
  }
  return utie::ErrorCode::kOk;
}

}  // namespace testing
