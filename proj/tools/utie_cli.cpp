// utie command-line front end. Talks to the library exclusively through the
// C API in utie/utie.h.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "utie/utie.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitFormat = 2;

// Error raised by the CLI layer itself, carrying the exit code and the
// status name that goes into the error line.
struct CliError {
  int exit_code;
  std::string code;
  std::string message;
};

[[noreturn]] void cli_fail(int exit_code, std::string code, std::string message) {
  throw CliError{exit_code, std::move(code), std::move(message)};
}

void check(utie_status status) {
  if (status == UTIE_OK) return;
  cli_fail(utie_status_is_format_error(status) ? kExitFormat : kExitValidation, utie_status_name(status),
           utie_last_error());
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using BundlePtr = std::unique_ptr<utie_bundle, Deleter<utie_bundle, utie_bundle_free>>;
using AnchorsPtr = std::unique_ptr<utie_anchors, Deleter<utie_anchors, utie_anchors_free>>;
using PairsPtr = std::unique_ptr<utie_pairs, Deleter<utie_pairs, utie_pairs_free>>;
using StringPtr = std::unique_ptr<char, Deleter<char, utie_string_free>>;

void require_dir(const std::string& path, const char* flag) {
  if (!fs::is_directory(path)) cli_fail(kExitFormat, "IoError", std::string(flag) + " directory not found: " + path);
}

void require_file(const std::string& path, const char* flag) {
  if (!fs::is_regular_file(path)) cli_fail(kExitFormat, "IoError", std::string(flag) + " file not found: " + path);
}

BundlePtr load_bundle(const std::string& dir) {
  utie_bundle* raw = nullptr;
  check(utie_bundle_load(dir.c_str(), &raw));
  return BundlePtr(raw);
}

AnchorsPtr load_anchors(const std::optional<std::string>& dir) {
  if (!dir) return nullptr;
  utie_anchors* raw = nullptr;
  check(utie_anchors_load(dir->c_str(), &raw));
  return AnchorsPtr(raw);
}

utie_mode parse_mode(const std::string& text) {
  utie_mode mode;
  check(utie_mode_parse(text.c_str(), &mode));
  return mode;
}

void require_anchors_for(utie_mode mode, const std::optional<std::string>& anchors) {
  if (mode != UTIE_MODE_IE && !anchors) {
    cli_fail(kExitValidation, "InvalidArgument", std::string("anchors required for mode ") + utie_mode_name(mode));
  }
}

void write_text(const std::string& text, const std::optional<std::string>& path) {
  if (!path || *path == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(*path, std::ios::trunc);
  if (!out) cli_fail(kExitFormat, "IoError", "cannot open " + *path + " for writing");
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
  if (!out) cli_fail(kExitFormat, "IoError", "write failed for " + *path);
}

bool same_path(const std::string& a, const std::string& b) {
  std::error_code ec;
  return fs::weakly_canonical(a, ec) == fs::weakly_canonical(b, ec);
}

// --- subcommand options -----------------------------------------------------

struct TransformArgs {
  std::string bundle;
  std::optional<std::string> anchors;
  std::string mode = "utie";
  std::string out;
  bool no_normalize = false;
};

struct ClassifyArgs {
  std::string bundle;
  std::string anchors;
  std::optional<std::string> out;
};

struct VerifyArgs {
  std::string bundle;
  std::optional<std::string> anchors;
  std::vector<std::string> pairs;
  std::string mode = "ie";
  bool no_normalize = false;
  std::optional<std::string> out;
};

struct ReportArgs {
  std::vector<std::string> acc;
  std::optional<std::string> from;
  std::string approach = "-";
  std::string representation = "-";
  std::optional<std::string> out;
  std::optional<std::string> markdown;
};

struct DiagArgs {
  std::string bundle;
  std::string anchors;
  std::string mode = "ie";
  std::string out;
  std::optional<std::string> gap;
  bool no_normalize = false;
};

struct SynthArgs {
  utie_synth_config config{};
  std::vector<double> noise_scale;
  std::string out;
};

// --- subcommand bodies ------------------------------------------------------

void run_transform(const TransformArgs& a) {
  require_dir(a.bundle, "--bundle");
  const utie_mode mode = parse_mode(a.mode);
  require_anchors_for(mode, a.anchors);
  if (a.anchors) require_dir(*a.anchors, "--anchors");
  if (same_path(a.out, a.bundle) || (a.anchors && same_path(a.out, *a.anchors))) {
    cli_fail(kExitValidation, "InvalidArgument", "--out must differ from the input directories");
  }
  const BundlePtr bundle = load_bundle(a.bundle);
  const AnchorsPtr anchors = load_anchors(mode == UTIE_MODE_IE ? std::nullopt : a.anchors);
  utie_bundle* raw = nullptr;
  check(utie_transform(bundle.get(), anchors.get(), mode, a.no_normalize ? 0 : 1, &raw));
  const BundlePtr transformed(raw);
  check(utie_bundle_save(transformed.get(), a.out.c_str()));
}

void run_classify(const ClassifyArgs& a) {
  require_dir(a.bundle, "--bundle");
  require_dir(a.anchors, "--anchors");
  const BundlePtr bundle = load_bundle(a.bundle);
  const AnchorsPtr anchors = load_anchors(a.anchors);
  char* json = nullptr;
  check(utie_classify(bundle.get(), anchors.get(), &json));
  write_text(StringPtr(json).get(), a.out);
}

void run_verify(const VerifyArgs& a) {
  require_dir(a.bundle, "--bundle");
  for (const std::string& p : a.pairs) require_file(p, "--pairs");
  const utie_mode mode = parse_mode(a.mode);
  require_anchors_for(mode, a.anchors);
  if (a.anchors) require_dir(*a.anchors, "--anchors");
  const BundlePtr bundle = load_bundle(a.bundle);
  const AnchorsPtr anchors = load_anchors(a.anchors);
  std::vector<PairsPtr> owned;
  std::vector<const utie_pairs*> sets;
  for (const std::string& path : a.pairs) {
    utie_pairs* raw = nullptr;
    check(utie_pairs_load(path.c_str(), bundle.get(), &raw));
    owned.emplace_back(raw);
    sets.push_back(raw);
  }
  char* json = nullptr;
  check(utie_verify(bundle.get(), anchors.get(), sets.data(), sets.size(), mode, a.no_normalize ? 0 : 1, &json));
  write_text(StringPtr(json).get(), a.out);
}

std::vector<std::pair<std::string, double>> accuracies_from_json(const std::string& path) {
  require_file(path, "--from");
  std::ifstream in(path);
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    cli_fail(kExitFormat, "MalformedRecord", path + ": " + e.what());
  }
  std::vector<std::pair<std::string, double>> out;
  try {
    if (doc.contains("groups")) {
      for (const auto& g : doc.at("groups")) out.emplace_back(g.at("group").get<std::string>(), g.at("accuracy").get<double>());
    } else if (doc.contains("per_group")) {
      for (const auto& [group, acc] : doc.at("per_group").items()) out.emplace_back(group, acc.get<double>());
    } else if (doc.contains("per_group_accuracy")) {
      for (const auto& [group, acc] : doc.at("per_group_accuracy").items()) out.emplace_back(group, acc.get<double>());
    } else {
      cli_fail(kExitFormat, "MalformedRecord", path + ": expected 'groups', 'per_group' or 'per_group_accuracy'");
    }
  } catch (const nlohmann::json::exception& e) {
    cli_fail(kExitFormat, "MalformedRecord", path + ": " + e.what());
  }
  return out;
}

void run_report(const ReportArgs& a) {
  std::vector<std::pair<std::string, double>> entries;
  if (a.from) entries = accuracies_from_json(*a.from);
  for (const std::string& item : a.acc) {
    const auto eq = item.rfind('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
      cli_fail(kExitValidation, "InvalidArgument", "--acc expects GROUP=VALUE, got '" + item + "'");
    }
    double value = 0.0;
    std::size_t used = 0;
    try {
      value = std::stod(item.substr(eq + 1), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() - eq - 1) {
      cli_fail(kExitValidation, "InvalidArgument", "--acc value is not a number: '" + item + "'");
    }
    entries.emplace_back(item.substr(0, eq), value);
  }
  std::vector<const char*> names;
  std::vector<double> values;
  for (const auto& [name, value] : entries) {
    names.push_back(name.c_str());
    values.push_back(value);
  }
  char* json = nullptr;
  char* md = nullptr;
  check(utie_bias_report(names.data(), values.data(), names.size(), a.approach.c_str(), a.representation.c_str(),
                         &json, &md));
  const StringPtr json_owner(json);
  const StringPtr md_owner(md);
  write_text(json, a.out);
  if (a.markdown) write_text(md, a.markdown);
}

void run_diag(const DiagArgs& a) {
  require_dir(a.bundle, "--bundle");
  require_dir(a.anchors, "--anchors");
  const utie_mode mode = parse_mode(a.mode);
  const BundlePtr bundle = load_bundle(a.bundle);
  const AnchorsPtr anchors = load_anchors(a.anchors);
  char* gap = nullptr;
  check(utie_diagnose(bundle.get(), anchors.get(), mode, a.no_normalize ? 0 : 1, a.out.c_str(), a.gap ? &gap : nullptr));
  const StringPtr gap_owner(gap);
  if (a.gap) write_text(gap, a.gap);
}

void run_synth(SynthArgs& a) {
  a.config.noise_scale = a.noise_scale.empty() ? nullptr : a.noise_scale.data();
  a.config.noise_scale_len = a.noise_scale.size();
  check(utie_synth_write(&a.config, a.out.c_str()));
}

int run_selftest() {
  char* report = nullptr;
  std::size_t failures = 0;
  check(utie_selftest(&report, &failures));
  std::cout << StringPtr(report).get();
  return failures == 0 ? kExitOk : kExitValidation;
}

void print_error(const std::string& code, const std::string& message) {
  nlohmann::ordered_json line;
  line["error"] = code;
  line["message"] = message;
  std::cerr << line.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"utie: text-image embedding fusion and demographic bias evaluation"};
  app.set_config("--config", "", "TOML/INI file with option defaults; command-line flags override it");
  app.require_subcommand(1);

  TransformArgs transform;
  auto* t = app.add_subcommand("transform", "Apply IE / UTIE / IE+PTE to a bundle and write a new bundle");
  t->add_option("--bundle", transform.bundle, "Input bundle directory")->required();
  t->add_option("--anchors", transform.anchors, "Anchor set directory (required for utie, ie_pte)");
  t->add_option("--mode", transform.mode, "ie | utie | ie_pte")->capture_default_str();
  t->add_option("--out", transform.out, "Output bundle directory")->required();
  t->add_flag("--no-normalize", transform.no_normalize, "Add raw vectors without unit-normalizing them");

  ClassifyArgs classify;
  auto* c = app.add_subcommand("classify", "Zero-shot demographic prediction accuracy per group");
  c->add_option("--bundle", classify.bundle, "Bundle directory")->required();
  c->add_option("--anchors", classify.anchors, "Anchor set directory")->required();
  c->add_option("--out", classify.out, "JSON output file (default stdout)");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "k-fold verification accuracy per demographic group");
  v->add_option("--bundle", verify.bundle, "Bundle directory")->required();
  v->add_option("--anchors", verify.anchors, "Anchor set directory (required for utie, ie_pte)");
  v->add_option("--pairs", verify.pairs, "Pairs CSV; repeatable. Pairs are grouped by the first id's group")
      ->required();
  v->add_option("--mode", verify.mode, "ie | utie | ie_pte")->capture_default_str();
  v->add_flag("--no-normalize", verify.no_normalize, "Add raw vectors without unit-normalizing them");
  v->add_option("--out", verify.out, "JSON output file (default stdout)");

  ReportArgs report;
  auto* r = app.add_subcommand("report", "Mean / STD / SER over per-group accuracies");
  r->add_option("--acc", report.acc, "GROUP=ACCURACY in percent; repeatable");
  r->add_option("--from", report.from, "verify/classify JSON to read accuracies from");
  r->add_option("--approach", report.approach, "Model name for the Markdown row");
  r->add_option("--representation", report.representation, "Feature representation for the Markdown row");
  r->add_option("--out", report.out, "JSON output file (default stdout)");
  r->add_option("--markdown", report.markdown, "Markdown table output file ('-' for stdout)");

  DiagArgs diag;
  auto* d = app.add_subcommand("diag", "Group x anchor similarity profile and ambiguity gap");
  d->add_option("--bundle", diag.bundle, "Bundle directory")->required();
  d->add_option("--anchors", diag.anchors, "Anchor set directory")->required();
  d->add_option("--mode", diag.mode, "ie | utie | ie_pte")->capture_default_str();
  d->add_option("--out", diag.out, "Profile CSV output file")->required();
  d->add_option("--gap", diag.gap, "Ambiguity gap JSON output file");
  d->add_flag("--no-normalize", diag.no_normalize, "Add raw vectors without unit-normalizing them");

  SynthArgs synth;
  utie_synth_config_default(&synth.config);
  auto* s = app.add_subcommand("synth", "Generate a deterministic synthetic bundle, anchors and pairs");
  s->add_option("--groups", synth.config.n_groups, "Number of demographic groups")->capture_default_str();
  s->add_option("--ids", synth.config.ids_per_group, "Identities per group")->capture_default_str();
  s->add_option("--per-id", synth.config.images_per_id, "Images per identity")->capture_default_str();
  s->add_option("--dim", synth.config.dim, "Embedding dimension")->capture_default_str();
  s->add_option("--seed", synth.config.seed, "PRNG seed")->capture_default_str();
  s->add_option("--group-strength", synth.config.group_strength, "Weight of the group direction")
      ->capture_default_str();
  s->add_option("--id-strength", synth.config.identity_strength, "Weight of the identity direction")
      ->capture_default_str();
  s->add_option("--noise", synth.config.noise_sigma, "Gaussian noise sigma")->capture_default_str();
  s->add_option("--noise-scale", synth.noise_scale, "Per-group noise multipliers (comma separated)")
      ->delimiter(',');
  s->add_option("--out", synth.out, "Output directory")->required();

  app.add_subcommand("selftest", "Run the embedded oracle suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    const bool config_unreadable = dynamic_cast<const CLI::FileError*>(&e) != nullptr;
    print_error(config_unreadable ? "IoError" : "UsageError", e.what());
    return config_unreadable ? kExitFormat : kExitValidation;
  }

  try {
    if (t->parsed()) run_transform(transform);
    if (c->parsed()) run_classify(classify);
    if (v->parsed()) run_verify(verify);
    if (r->parsed()) run_report(report);
    if (d->parsed()) run_diag(diag);
    if (s->parsed()) run_synth(synth);
    if (app.got_subcommand("selftest")) return run_selftest();
  } catch (const CliError& e) {
    print_error(e.code, e.message);
    return e.exit_code;
  }
  return kExitOk;
}
