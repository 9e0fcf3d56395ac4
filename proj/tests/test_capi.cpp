#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include <unistd.h>

#include "json.hpp"
#include "utie/utie.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Scratch {
  fs::path path;
  Scratch() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("utie_capi_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  utie_string_free(s);
  return out;
}

struct Loaded {
  utie_bundle* bundle = nullptr;
  utie_anchors* anchors = nullptr;
  std::vector<utie_pairs*> pairs;
  ~Loaded() {
    for (auto* p : pairs) utie_pairs_free(p);
    utie_anchors_free(anchors);
    utie_bundle_free(bundle);
  }
};

void load_synth(const fs::path& dir, Loaded& out) {
  utie_synth_config config;
  utie_synth_config_default(&config);
  config.ids_per_group = 6;
  REQUIRE(utie_synth_write(&config, dir.c_str()) == UTIE_OK);
  REQUIRE(utie_bundle_load((dir / "bundle").c_str(), &out.bundle) == UTIE_OK);
  REQUIRE(utie_anchors_load((dir / "anchors").c_str(), &out.anchors) == UTIE_OK);
  for (int g = 0; g < 4; ++g) {
    utie_pairs* p = nullptr;
    const auto path = dir / ("pairs_group" + std::to_string(g) + ".csv");
    REQUIRE(utie_pairs_load(path.c_str(), out.bundle, &p) == UTIE_OK);
    out.pairs.push_back(p);
  }
}

}  // namespace

TEST_CASE("capi: status and mode helpers") {
  CHECK(std::string(utie_status_name(UTIE_OK)) == "Ok");
  CHECK(std::string(utie_status_name(UTIE_ERR_PERFECT_GROUP)) == "PerfectGroup");
  CHECK(utie_status_is_format_error(UTIE_ERR_IO));
  CHECK_FALSE(utie_status_is_format_error(UTIE_ERR_NEED_TWO_GROUPS));
  utie_mode mode{};
  CHECK(utie_mode_parse("ie_pte", &mode) == UTIE_OK);
  CHECK(mode == UTIE_MODE_IE_PTE);
  CHECK(std::string(utie_mode_name(UTIE_MODE_UTIE)) == "utie");
  CHECK(utie_mode_parse("bogus", &mode) == UTIE_ERR_INVALID_ARGUMENT);
  CHECK(std::string(utie_last_error()).find("bogus") != std::string::npos);
  CHECK(utie_mode_parse(nullptr, &mode) == UTIE_ERR_INVALID_ARGUMENT);
}

TEST_CASE("capi: render_prompt") {
  char* out = nullptr;
  REQUIRE(utie_render_prompt("A photo of a {label} person.", "Asian", &out) == UTIE_OK);
  CHECK(take(out) == "A photo of a Asian person.");
  CHECK(utie_render_prompt("no placeholder", "x", &out) == UTIE_ERR_MISSING_PLACEHOLDER);
}

TEST_CASE("capi: missing inputs report I/O errors") {
  utie_bundle* bundle = nullptr;
  CHECK(utie_bundle_load("/nonexistent/utie/bundle", &bundle) == UTIE_ERR_IO);
  CHECK(bundle == nullptr);
  CHECK(std::string(utie_last_error()).size() > 0);
  utie_anchors* anchors = nullptr;
  CHECK(utie_anchors_load("/nonexistent/utie/anchors", &anchors) == UTIE_ERR_IO);
}

TEST_CASE("capi: synth, transform, classify, verify, diagnose") {
  Scratch dir;
  Loaded data;
  load_synth(dir.path, data);
  CHECK(utie_bundle_rows(data.bundle) == 4 * 6 * 5);
  CHECK(utie_bundle_dim(data.bundle) == 64);
  CHECK(utie_anchors_count(data.anchors) == 4);
  CHECK(utie_pairs_count(data.pairs[0]) == 2 * 6 * 10);

  std::vector<float> row(64);
  CHECK(utie_bundle_row(data.bundle, 0, row.data()) == UTIE_OK);
  CHECK(utie_bundle_row(data.bundle, 9999, row.data()) == UTIE_ERR_INDEX_OUT_OF_RANGE);

  SUBCASE("transform round trip") {
    utie_bundle* fused = nullptr;
    REQUIRE(utie_transform(data.bundle, data.anchors, UTIE_MODE_UTIE, 1, &fused) == UTIE_OK);
    CHECK(utie_bundle_rows(fused) == utie_bundle_rows(data.bundle));
    const auto out = dir.path / "fused";
    CHECK(utie_bundle_save(fused, out.c_str()) == UTIE_OK);
    utie_bundle* again = nullptr;
    REQUIRE(utie_bundle_load(out.c_str(), &again) == UTIE_OK);
    std::vector<float> a(64), b(64);
    utie_bundle_row(fused, 3, a.data());
    utie_bundle_row(again, 3, b.data());
    CHECK(a == b);
    utie_bundle_free(again);
    utie_bundle_free(fused);

    CHECK(utie_transform(data.bundle, nullptr, UTIE_MODE_UTIE, 1, &fused) == UTIE_ERR_INVALID_ARGUMENT);
    CHECK(std::string(utie_last_error()) == "anchors required for mode utie");
  }
  SUBCASE("classify") {
    char* text = nullptr;
    REQUIRE(utie_classify(data.bundle, data.anchors, &text) == UTIE_OK);
    const auto report = json::parse(take(text));
    CHECK(report.contains("per_group_accuracy"));
    CHECK(report["mean_accuracy"].get<double>() > 95.0);
  }
  SUBCASE("verify") {
    char* text = nullptr;
    REQUIRE(utie_verify(data.bundle, data.anchors, data.pairs.data(), data.pairs.size(), UTIE_MODE_IE, 1, &text) ==
            UTIE_OK);
    const auto report = json::parse(take(text));
    CHECK(report["groups"].size() == 4);
    CHECK(report["mode"] == "ie");
  }
  SUBCASE("diagnose") {
    char* text = nullptr;
    const auto csv = dir.path / "profile.csv";
    REQUIRE(utie_diagnose(data.bundle, data.anchors, UTIE_MODE_IE, 1, csv.c_str(), &text) == UTIE_OK);
    CHECK(fs::exists(csv));
    CHECK(json::parse(take(text))["per_group"].size() == 4);
  }
}

TEST_CASE("capi: bias report") {
  const char* groups[] = {"African", "Asian", "Caucasian", "Indian"};
  const double accs[] = {70.75, 69.73, 79.32, 68.98};
  char* text = nullptr;
  char* md = nullptr;
  REQUIRE(utie_bias_report(groups, accs, 4, "CLIP", "IE", &text, &md) == UTIE_OK);
  const auto report = json::parse(take(text));
  CHECK(report["mean"].get<double>() == doctest::Approx(72.195));
  CHECK(take(md).find("| CLIP | IE |") != std::string::npos);

  const double perfect[] = {100.0, 90.0};
  CHECK(utie_bias_report(groups, perfect, 2, "", "", &text, nullptr) == UTIE_ERR_PERFECT_GROUP);
  CHECK(utie_bias_report(groups, accs, 1, "", "", &text, nullptr) == UTIE_ERR_NEED_TWO_GROUPS);
}

TEST_CASE("capi: selftest") {
  char* text = nullptr;
  std::size_t failures = 99;
  REQUIRE(utie_selftest(&text, &failures) == UTIE_OK);
  CHECK(failures == 0);
  CHECK(take(text).find("PASS") == 0);
}

namespace {
int warnings_seen = 0;
void count_warning(const char*, void*) { ++warnings_seen; }
}  // namespace

TEST_CASE("capi: warning handler receives float64 narrowing warnings") {
  Scratch dir;
  Loaded data;
  load_synth(dir.path, data);
  // Rewrite the embeddings as '<f8' by hand.
  const auto npy = dir.path / "bundle" / "embeddings.npy";
  const std::size_t rows = utie_bundle_rows(data.bundle), cols = utie_bundle_dim(data.bundle);
  std::vector<double> values;
  std::vector<float> row(cols);
  for (std::size_t r = 0; r < rows; ++r) {
    utie_bundle_row(data.bundle, r, row.data());
    values.insert(values.end(), row.begin(), row.end());
  }
  std::string dict = "{'descr': '<f8', 'fortran_order': False, 'shape': (" + std::to_string(rows) + ", " +
                     std::to_string(cols) + "), }";
  while ((10 + dict.size() + 1) % 64 != 0) dict.push_back(' ');
  dict.push_back('\n');
  std::string bytes = "\x93NUMPY";
  bytes += '\x01';
  bytes += '\0';
  bytes += static_cast<char>(dict.size() & 0xFF);
  bytes += static_cast<char>(dict.size() >> 8);
  bytes += dict;
  bytes.append(reinterpret_cast<const char*>(values.data()), values.size() * sizeof(double));
  {
    std::FILE* f = std::fopen(npy.c_str(), "wb");
    REQUIRE(f);
    std::fwrite(bytes.data(), 1, bytes.size(), f);
    std::fclose(f);
  }
  warnings_seen = 0;
  utie_set_warning_handler(count_warning, nullptr);
  utie_bundle* b = nullptr;
  CHECK(utie_bundle_load((dir.path / "bundle").c_str(), &b) == UTIE_OK);
  utie_set_warning_handler(nullptr, nullptr);
  CHECK(warnings_seen >= 1);
  utie_bundle_free(b);
}
