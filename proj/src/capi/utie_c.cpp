#include "utie/utie.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <filesystem>
#include <memory>
#include <new>
#include <string>

#include "core/bias_metrics.hpp"
#include "core/diagnostics.hpp"
#include "core/error.hpp"
#include "core/fusion.hpp"
#include "core/log.hpp"
#include "core/report_format.hpp"
#include "core/selftest.hpp"
#include "core/store.hpp"
#include "core/synth.hpp"
#include "core/verification.hpp"
#include "core/zero_shot.hpp"

struct utie_bundle {
  utie::EmbeddingBundle value;
};

struct utie_anchors {
  utie::AnchorSet value;
};

struct utie_pairs {
  utie::PairSet value;
};

namespace {

thread_local std::string t_last_error;

utie_status set_error(utie_status status, const std::string& message) {
  t_last_error = message;
  return status;
}

// Runs `body`, translating exceptions into a status and the thread-local
// error message.
template <typename Body>
utie_status guarded(Body&& body) noexcept {
  try {
    t_last_error.clear();
    body();
    return UTIE_OK;
  } catch (const utie::Error& e) {
    return set_error(static_cast<utie_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(UTIE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(UTIE_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(UTIE_ERR_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (p == nullptr) utie::fail(utie::ErrorCode::kInvalidArgument, std::string(what) + " must not be NULL");
}

utie::TransformMode to_mode(utie_mode mode) {
  switch (mode) {
    case UTIE_MODE_IE: return utie::TransformMode::kIe;
    case UTIE_MODE_UTIE: return utie::TransformMode::kUtie;
    case UTIE_MODE_IE_PTE: return utie::TransformMode::kIePte;
  }
  utie::fail(utie::ErrorCode::kInvalidArgument, "unknown transform mode " + std::to_string(static_cast<int>(mode)));
}

utie::FusionOptions fusion_options(int normalize) { return utie::FusionOptions{normalize != 0}; }

struct WarningForward {
  utie_warning_fn fn = nullptr;
  void* user = nullptr;
};

WarningForward g_warning_forward;

void forward_warning(std::string_view message, void* user) {
  const auto* fwd = static_cast<const WarningForward*>(user);
  const std::string text(message);
  fwd->fn(text.c_str(), fwd->user);
}

}  // namespace

extern "C" {

const char* utie_last_error(void) { return t_last_error.c_str(); }

const char* utie_status_name(utie_status status) {
  if (status == UTIE_ERR_INTERNAL) return "Internal";
  return utie::error_code_name(static_cast<utie::ErrorCode>(status)).data();
}

int utie_status_is_format_error(utie_status status) {
  return utie::is_format_error(static_cast<utie::ErrorCode>(status)) ? 1 : 0;
}

void utie_string_free(char* str) { std::free(str); }

void utie_set_warning_handler(utie_warning_fn fn, void* user) {
  if (fn == nullptr) {
    utie::set_warning_sink(nullptr, nullptr);
    return;
  }
  g_warning_forward = {fn, user};
  utie::set_warning_sink(&forward_warning, &g_warning_forward);
}

utie_status utie_mode_parse(const char* text, utie_mode* out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    const auto mode = utie::parse_mode(text);
    if (!mode) utie::fail(utie::ErrorCode::kInvalidArgument, std::string("unknown mode '") + text + "'");
    *out = static_cast<utie_mode>(*mode);
  });
}

const char* utie_mode_name(utie_mode mode) {
  switch (mode) {
    case UTIE_MODE_IE: return "ie";
    case UTIE_MODE_UTIE: return "utie";
    case UTIE_MODE_IE_PTE: return "ie_pte";
  }
  return "unknown";
}

utie_status utie_bundle_load(const char* dir, utie_bundle** out) {
  return guarded([&] {
    require(dir, "dir");
    require(out, "out");
    *out = new utie_bundle{utie::load_bundle(dir)};
  });
}

utie_status utie_bundle_save(const utie_bundle* bundle, const char* dir) {
  return guarded([&] {
    require(bundle, "bundle");
    require(dir, "dir");
    utie::write_bundle(bundle->value, dir);
  });
}

size_t utie_bundle_rows(const utie_bundle* bundle) { return bundle == nullptr ? 0 : bundle->value.size(); }

size_t utie_bundle_dim(const utie_bundle* bundle) { return bundle == nullptr ? 0 : bundle->value.dim(); }

utie_status utie_bundle_row(const utie_bundle* bundle, size_t row, float* out) {
  return guarded([&] {
    require(bundle, "bundle");
    require(out, "out");
    if (row >= bundle->value.size()) utie::fail(utie::ErrorCode::kIndexOutOfRange, "row out of range");
    const auto view = bundle->value.row(row);
    std::copy(view.begin(), view.end(), out);
  });
}

void utie_bundle_free(utie_bundle* bundle) { delete bundle; }

utie_status utie_anchors_load(const char* dir, utie_anchors** out) {
  return guarded([&] {
    require(dir, "dir");
    require(out, "out");
    *out = new utie_anchors{utie::load_anchors(dir)};
  });
}

size_t utie_anchors_count(const utie_anchors* anchors) { return anchors == nullptr ? 0 : anchors->value.size(); }

void utie_anchors_free(utie_anchors* anchors) { delete anchors; }

utie_status utie_pairs_load(const char* path, const utie_bundle* bundle, utie_pairs** out) {
  return guarded([&] {
    require(path, "path");
    require(bundle, "bundle");
    require(out, "out");
    *out = new utie_pairs{utie::load_pairs(path, bundle->value)};
  });
}

size_t utie_pairs_count(const utie_pairs* pairs) { return pairs == nullptr ? 0 : pairs->value.pairs.size(); }

void utie_pairs_free(utie_pairs* pairs) { delete pairs; }

utie_status utie_render_prompt(const char* prompt_template, const char* label, char** out) {
  return guarded([&] {
    require(prompt_template, "prompt_template");
    require(label, "label");
    require(out, "out");
    *out = copy_string(utie::render_prompt(prompt_template, label));
  });
}

utie_status utie_transform(const utie_bundle* bundle, const utie_anchors* anchors, utie_mode mode, int normalize,
                           utie_bundle** out) {
  return guarded([&] {
    require(bundle, "bundle");
    require(out, "out");
    *out = new utie_bundle{utie::transform_bundle(bundle->value, anchors ? &anchors->value : nullptr,
                                                  to_mode(mode), fusion_options(normalize))};
  });
}

utie_status utie_classify(const utie_bundle* bundle, const utie_anchors* anchors, char** json_out) {
  return guarded([&] {
    require(bundle, "bundle");
    require(anchors, "anchors");
    require(json_out, "json_out");
    const auto report = utie::zero_shot_accuracy(bundle->value, anchors->value);
    *json_out = copy_string(utie::zero_shot_json(report, anchors->value));
  });
}

utie_status utie_verify(const utie_bundle* bundle, const utie_anchors* anchors, const utie_pairs* const* pair_sets,
                        size_t n_pair_sets, utie_mode mode, int normalize, char** json_out) {
  return guarded([&] {
    require(bundle, "bundle");
    require(json_out, "json_out");
    if (n_pair_sets == 0) utie::fail(utie::ErrorCode::kEmptyInput, "no pair sets given");
    require(pair_sets, "pair_sets");
    std::map<std::string, utie::PairSet> by_group;
    for (size_t i = 0; i < n_pair_sets; ++i) {
      require(pair_sets[i], "pair set");
      for (auto& [group, set] : utie::partition_by_group(bundle->value, pair_sets[i]->value)) {
        auto& dest = by_group[group].pairs;
        dest.insert(dest.end(), set.pairs.begin(), set.pairs.end());
      }
    }
    const utie::FusionOptions options = fusion_options(normalize);
    const auto groups = utie::evaluate_groups(bundle->value, anchors ? &anchors->value : nullptr, by_group,
                                              to_mode(mode), options);
    *json_out = copy_string(utie::verification_json(groups, to_mode(mode), options));
  });
}

utie_status utie_bias_report(const char* const* groups, const double* accuracies, size_t n, const char* approach,
                             const char* representation, char** json_out, char** markdown_out) {
  return guarded([&] {
    if (n > 0) {
      require(groups, "groups");
      require(accuracies, "accuracies");
    }
    std::vector<std::pair<std::string, double>> per_group;
    for (size_t i = 0; i < n; ++i) {
      require(groups[i], "group name");
      per_group.emplace_back(groups[i], accuracies[i]);
    }
    const utie::BiasReport report = utie::bias_report(std::move(per_group));
    std::string json = utie::bias_json(report);
    std::string md = utie::bias_markdown(report, approach ? approach : "-", representation ? representation : "-");
    if (json_out != nullptr) *json_out = copy_string(json);
    if (markdown_out != nullptr) {
      try {
        *markdown_out = copy_string(md);
      } catch (...) {
        if (json_out != nullptr) {
          std::free(*json_out);
          *json_out = nullptr;
        }
        throw;
      }
    }
  });
}

utie_status utie_diagnose(const utie_bundle* bundle, const utie_anchors* anchors, utie_mode mode, int normalize,
                          const char* csv_path, char** gap_json_out) {
  return guarded([&] {
    require(bundle, "bundle");
    require(anchors, "anchors");
    require(csv_path, "csv_path");
    const utie::FusionOptions options = fusion_options(normalize);
    const auto profile = utie::similarity_profile(bundle->value, anchors->value, to_mode(mode), options);
    std::string gap;
    if (gap_json_out != nullptr) {
      gap = utie::gap_json(utie::ambiguity_gap(bundle->value, anchors->value, to_mode(mode), options), to_mode(mode));
    }
    utie::emit_profile_csv(profile, csv_path);
    if (gap_json_out != nullptr) *gap_json_out = copy_string(gap);
  });
}

void utie_synth_config_default(utie_synth_config* config) {
  if (config == nullptr) return;
  const utie::SynthConfig d;
  *config = utie_synth_config{d.n_groups,       d.ids_per_group,     d.images_per_id, d.dim,   d.seed,
                              d.group_strength, d.identity_strength, d.noise_sigma,   nullptr, 0};
}

utie_status utie_synth_write(const utie_synth_config* config, const char* out_dir) {
  return guarded([&] {
    require(config, "config");
    require(out_dir, "out_dir");
    utie::SynthConfig c;
    c.n_groups = config->n_groups;
    c.ids_per_group = config->ids_per_group;
    c.images_per_id = config->images_per_id;
    c.dim = config->dim;
    c.seed = config->seed;
    c.group_strength = config->group_strength;
    c.identity_strength = config->identity_strength;
    c.noise_sigma = config->noise_sigma;
    if (config->noise_scale_len > 0) {
      require(config->noise_scale, "noise_scale");
      c.noise_scale.assign(config->noise_scale, config->noise_scale + config->noise_scale_len);
    }
    const utie::SynthData data = utie::generate(c);
    const std::filesystem::path root(out_dir);
    utie::write_bundle(data.bundle, root / "bundle");
    utie::write_anchors(data.anchors, root / "anchors");
    for (const auto& [group, pairs] : data.pairs_by_group) utie::write_pairs(pairs, root / ("pairs_" + group + ".csv"));
  });
}

utie_status utie_selftest(char** report_out, size_t* failures) {
  return guarded([&] {
    require(report_out, "report_out");
    require(failures, "failures");
    const utie::SelftestResult result = utie::run_selftest();
    *report_out = copy_string(result.to_text());
    *failures = result.failures();
  });
}

}  // extern "C"
