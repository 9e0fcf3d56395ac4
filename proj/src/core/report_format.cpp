#include "core/report_format.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "core/error.hpp"

namespace utie {
namespace {

using nlohmann::ordered_json;

std::string two_decimals(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string zero_shot_json(const ZeroShotReport& report, const AnchorSet& anchors) {
  ordered_json out;
  out["per_group_accuracy"] = ordered_json::object();
  for (const auto& [group, acc] : report.per_group_accuracy) out["per_group_accuracy"][group] = acc;
  out["per_group_count"] = ordered_json::object();
  for (const auto& [group, n] : report.per_group_count) out["per_group_count"][group] = n;
  out["mean_accuracy"] = report.mean_accuracy;
  out["anchors"] = {{"labels", anchors.labels()},
                    {"prompt_template", anchors.prompt_template()},
                    {"model_id", anchors.model_id()}};
  return out.dump(2);
}

std::string verification_json(const std::vector<GroupAccuracy>& groups, TransformMode mode,
                              const FusionOptions& options) {
  ordered_json out;
  out["mode"] = std::string(mode_name(mode));
  out["normalize"] = options.normalize_inputs;
  ordered_json list = ordered_json::array();
  std::vector<std::pair<std::string, double>> accs;
  for (const GroupAccuracy& g : groups) {
    ordered_json item;
    item["group"] = g.group;
    item["accuracy"] = g.accuracy;
    item["pairs"] = g.pair_count;
    item["folds"] = g.detail.folds.size();
    ordered_json thresholds = ordered_json::array();
    ordered_json fold_acc = ordered_json::array();
    for (const FoldResult& f : g.detail.folds) {
      thresholds.push_back(f.threshold);
      fold_acc.push_back(f.test_accuracy);
    }
    item["thresholds"] = thresholds;
    item["fold_accuracies"] = fold_acc;
    list.push_back(item);
    accs.emplace_back(g.group, g.accuracy);
  }
  out["groups"] = list;
  try {
    const BiasReport report = bias_report(accs);
    out["bias"] = {{"mean", report.mean}, {"std", report.std}, {"ser", report.ser}};
  } catch (const Error& e) {
    out["bias"] = nullptr;
    out["bias_error"] = std::string(error_code_name(e.code())) + ": " + e.what();
  }
  return out.dump(2);
}

std::string bias_json(const BiasReport& report) {
  ordered_json out;
  out["per_group"] = ordered_json::object();
  for (const auto& [group, acc] : report.per_group) out["per_group"][group] = acc;
  out["mean"] = report.mean;
  out["std"] = report.std;
  out["ser"] = report.ser;
  return out.dump(2);
}

std::string bias_markdown(const BiasReport& report, const std::string& approach,
                          const std::string& representation) {
  std::ostringstream md;
  md << "| Approach | Feature Embedding |";
  for (const auto& [group, acc] : report.per_group) md << ' ' << group << " |";
  md << " Mean | STD | SER |\n|---|---|";
  for (std::size_t i = 0; i < report.per_group.size(); ++i) md << "---|";
  md << "---|---|---|\n| " << approach << " | " << representation << " |";
  for (const auto& [group, acc] : report.per_group) md << ' ' << two_decimals(acc) << " |";
  md << ' ' << two_decimals(report.mean) << " | " << two_decimals(report.std) << " | " << two_decimals(report.ser)
     << " |\n";
  return md.str();
}

std::string gap_json(const AmbiguityGap& gap, TransformMode mode) {
  ordered_json out;
  out["mode"] = std::string(mode_name(mode));
  out["per_group"] = ordered_json::object();
  for (const auto& [group, value] : gap.per_group) out["per_group"][group] = value;
  return out.dump(2);
}

}  // namespace utie
