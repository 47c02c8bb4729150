// Copyright 2026 The absa-pair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "absa/metrics.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>

#include "json.hpp"

namespace absa {
namespace {

using Unit = std::pair<std::string, std::optional<int>>;

class PredictionIndex {
 public:
  explicit PredictionIndex(std::span<const GridPrediction> pred) {
    for (const auto& p : pred) {
      if (!by_group_.emplace(p.group, &p).second) {
        throw ValidationError("duplicate prediction for group " + group_id(p.group));
      }
    }
  }

  const GridPrediction& at(const GroupKey& key) const {
    auto it = by_group_.find(key);
    if (it == by_group_.end()) {
      throw ValidationError("no prediction for group " + group_id(key));
    }
    return *it->second;
  }

 private:
  std::map<GroupKey, const GridPrediction*> by_group_;
};

double safe_div(double num, double den) { return den > 0.0 ? num / den : 0.0; }

std::optional<double> mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

constexpr Polarity k4Way[] = {Polarity::kPositive, Polarity::kNegative,
                              Polarity::kNeutral, Polarity::kConflict};
constexpr Polarity k3Way[] = {Polarity::kPositive, Polarity::kNegative,
                              Polarity::kNeutral};
constexpr Polarity kBinary[] = {Polarity::kPositive, Polarity::kNegative};

bool is_polar(Polarity p) {
  return p == Polarity::kPositive || p == Polarity::kNegative;
}

std::string dataset_name(Task t) { return t == Task::kTabsa ? "sentihood" : "semeval"; }

nlohmann::ordered_json opt(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

std::optional<double> read_opt(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

std::string cell(const std::optional<double>& v, int decimals) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, *v * 100.0);
  return buf;
}

std::string pad(std::string s, std::size_t width, bool right = true) {
  if (s.size() >= width) return s;
  std::string fill(width - s.size(), ' ');
  return right ? fill + s : s + fill;
}

}  // namespace

double strict_aspect_accuracy(const GoldGrid& gold,
                              std::span<const GridPrediction> pred) {
  PredictionIndex index(pred);
  std::map<Unit, std::pair<std::set<std::string>, std::set<std::string>>> units;
  for (const auto& [key, label] : gold) {
    auto& [gold_set, pred_set] = units[{key.sentence_id, key.target}];
    if (label != Polarity::kNone) gold_set.insert(key.aspect);
    if (index.at(key).label != Polarity::kNone) pred_set.insert(key.aspect);
  }
  if (units.empty()) return 0.0;
  std::size_t correct = 0;
  for (const auto& [unit, sets] : units) {
    if (sets.first == sets.second) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(units.size());
}

MacroF1 aspect_macro_f1(const GoldGrid& gold, std::span<const GridPrediction> pred,
                        const AspectSet& aspects) {
  PredictionIndex index(pred);
  std::map<std::string, std::array<std::size_t, 3>> counts;  // tp, fp, fn
  for (const auto& a : aspects.names()) counts[a] = {0, 0, 0};
  for (const auto& [key, label] : gold) {
    auto it = counts.find(key.aspect);
    if (it == counts.end()) continue;
    bool g = label != Polarity::kNone;
    bool p = index.at(key).label != Polarity::kNone;
    if (g && p) ++it->second[0];
    if (!g && p) ++it->second[1];
    if (g && !p) ++it->second[2];
  }
  MacroF1 out;
  double sum = 0.0;
  for (const auto& a : aspects.names()) {
    const auto& [tp, fp, fn] = counts[a];
    double precision = safe_div(tp, tp + fp);
    double recall = safe_div(tp, tp + fn);
    double f1 = safe_div(2.0 * precision * recall, precision + recall);
    if (tp + fp == 0 || tp + fn == 0) out.zero_division_aspects.push_back(a);
    out.per_aspect.emplace_back(a, f1);
    sum += f1;
  }
  out.macro_f1 = sum / static_cast<double>(aspects.size());
  return out;
}

std::optional<double> roc_auc(std::span<const ScoredInstance> instances) {
  std::vector<ScoredInstance> sorted(instances.begin(), instances.end());
  for (const auto& s : sorted) {
    if (std::isnan(s.score)) throw ContractViolation("NaN score passed to roc_auc");
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const ScoredInstance& a, const ScoredInstance& b) { return a.score < b.score; });
  std::uint64_t positives = 0;
  std::uint64_t negatives = 0;
  // Twice the Mann-Whitney U, kept integral so the result is exact.
  std::uint64_t twice_u = 0;
  std::uint64_t negatives_below = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    std::uint64_t p = 0;
    std::uint64_t n = 0;
    while (j < sorted.size() && sorted[j].score == sorted[i].score) {
      (sorted[j].positive ? p : n) += 1;
      ++j;
    }
    twice_u += 2 * p * negatives_below + p * n;
    negatives_below += n;
    positives += p;
    negatives += n;
    i = j;
  }
  if (positives == 0 || negatives == 0) return std::nullopt;
  return static_cast<double>(twice_u) /
         (2.0 * static_cast<double>(positives) * static_cast<double>(negatives));
}

AucBundle sentihood_auc_bundle(const GoldGrid& gold,
                               std::span<const GridPrediction> pred,
                               const AspectSet& aspects) {
  PredictionIndex index(pred);
  std::map<std::string, std::vector<ScoredInstance>> presence;
  std::map<std::string, std::vector<ScoredInstance>> sentiment;
  for (const auto& [key, label] : gold) {
    if (!aspects.contains(key.aspect)) continue;
    const auto& p = index.at(key);
    presence[key.aspect].push_back({p.presence_score, label != Polarity::kNone});
    if (is_polar(label)) {
      if (!p.sentiment_score) {
        throw ValidationError("no sentiment score for gold-present group " +
                              group_id(key));
      }
      sentiment[key.aspect].push_back({*p.sentiment_score, label == Polarity::kPositive});
    }
  }
  AucBundle out;
  std::vector<double> aspect_aucs;
  std::vector<double> sentiment_aucs;
  for (const auto& a : aspects.names()) {
    if (auto auc = roc_auc(presence[a])) {
      aspect_aucs.push_back(*auc);
    } else {
      out.aspect_skipped.push_back(a);
    }
    if (auto auc = roc_auc(sentiment[a])) {
      sentiment_aucs.push_back(*auc);
    } else {
      out.sentiment_skipped.push_back(a);
    }
  }
  out.aspect_macro_auc = mean_of(aspect_aucs);
  out.sentiment_macro_auc = mean_of(sentiment_aucs);
  return out;
}

std::optional<double> sentiment_accuracy(const GoldGrid& gold,
                                         std::span<const GridPrediction> pred) {
  PredictionIndex index(pred);
  std::size_t total = 0;
  std::size_t correct = 0;
  for (const auto& [key, label] : gold) {
    if (!is_polar(label)) continue;
    ++total;
    if (restrict_polarity(index.at(key).scores, kBinary) == label) ++correct;
  }
  if (total == 0) return std::nullopt;
  return static_cast<double>(correct) / static_cast<double>(total);
}

Prf semeval_detection_prf(const GoldGrid& gold, std::span<const GridPrediction> pred) {
  PredictionIndex index(pred);
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  for (const auto& [key, label] : gold) {
    bool g = label != Polarity::kNone;
    bool p = index.at(key).label != Polarity::kNone;
    if (g && p) ++tp;
    if (!g && p) ++fp;
    if (g && !p) ++fn;
  }
  Prf out;
  out.precision = safe_div(tp, tp + fp);
  out.recall = safe_div(tp, tp + fn);
  out.f1 = safe_div(2.0 * out.precision * out.recall, out.precision + out.recall);
  out.zero_division = tp + fp == 0 || tp + fn == 0 || out.precision + out.recall == 0.0;
  return out;
}

std::span<const Polarity> mode_polarities(PolarityMode mode) {
  switch (mode) {
    case PolarityMode::k4Way: return k4Way;
    case PolarityMode::k3Way: return k3Way;
    case PolarityMode::kBinary: return kBinary;
  }
  return k4Way;
}

std::optional<double> semeval_polarity_accuracy(
    const GoldGrid& gold, std::span<const GridPrediction> pred, PolarityMode mode) {
  PredictionIndex index(pred);
  auto allowed = mode_polarities(mode);
  std::size_t total = 0;
  std::size_t correct = 0;
  for (const auto& [key, label] : gold) {
    if (std::find(allowed.begin(), allowed.end(), label) == allowed.end()) continue;
    ++total;
    if (restrict_polarity(index.at(key).scores, allowed) == label) ++correct;
  }
  if (total == 0) return std::nullopt;
  return static_cast<double>(correct) / static_cast<double>(total);
}

EvaluationReport evaluate(Task task, const GoldGrid& gold,
                          std::span<const GridPrediction> pred,
                          const AspectSet& aspects, std::string name) {
  EvaluationReport r;
  r.name = std::move(name);
  r.task = task;
  if (task == Task::kTabsa) {
    r.aspect_strict_acc = strict_aspect_accuracy(gold, pred);
    auto f1 = aspect_macro_f1(gold, pred, aspects);
    r.aspect_macro_f1 = f1.macro_f1;
    r.f1_zero_division_aspects = f1.zero_division_aspects;
    auto auc = sentihood_auc_bundle(gold, pred, aspects);
    r.aspect_macro_auc = auc.aspect_macro_auc;
    r.sentiment_macro_auc = auc.sentiment_macro_auc;
    r.auc_skipped_aspects = auc.aspect_skipped;
    r.sentiment_auc_skipped_aspects = auc.sentiment_skipped;
    r.sentiment_acc = sentiment_accuracy(gold, pred);
  } else {
    auto prf = semeval_detection_prf(gold, pred);
    r.detection_precision = prf.precision;
    r.detection_recall = prf.recall;
    r.detection_f1 = prf.f1;
    r.detection_zero_division = prf.zero_division;
    r.polarity_acc_4way = semeval_polarity_accuracy(gold, pred, PolarityMode::k4Way);
    r.polarity_acc_3way = semeval_polarity_accuracy(gold, pred, PolarityMode::k3Way);
    r.polarity_acc_binary = semeval_polarity_accuracy(gold, pred, PolarityMode::kBinary);
  }
  return r;
}

std::string report_to_json(const EvaluationReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["task"] = dataset_name(r.task);
  j["aspect_strict_acc"] = opt(r.aspect_strict_acc);
  j["aspect_macro_f1"] = opt(r.aspect_macro_f1);
  j["aspect_macro_auc"] = opt(r.aspect_macro_auc);
  j["sentiment_acc"] = opt(r.sentiment_acc);
  j["sentiment_macro_auc"] = opt(r.sentiment_macro_auc);
  j["detection_precision"] = opt(r.detection_precision);
  j["detection_recall"] = opt(r.detection_recall);
  j["detection_f1"] = opt(r.detection_f1);
  j["polarity_acc_4way"] = opt(r.polarity_acc_4way);
  j["polarity_acc_3way"] = opt(r.polarity_acc_3way);
  j["polarity_acc_binary"] = opt(r.polarity_acc_binary);
  nlohmann::ordered_json meta;
  meta["auc_averaging"] = "macro_over_aspects";
  meta["prf_zero_division"] = "zero";
  meta["auc_skipped_aspects"] = r.auc_skipped_aspects;
  meta["sentiment_auc_skipped_aspects"] = r.sentiment_auc_skipped_aspects;
  meta["f1_zero_division_aspects"] = r.f1_zero_division_aspects;
  meta["detection_zero_division"] = r.detection_zero_division;
  j["metadata"] = std::move(meta);
  return j.dump(2) + "\n";
}

EvaluationReport report_from_json(std::string_view text) {
  try {
    auto j = nlohmann::json::parse(text);
    EvaluationReport r;
    r.name = j.at("name").get<std::string>();
    auto task = j.at("task").get<std::string>();
    if (task == "sentihood") {
      r.task = Task::kTabsa;
    } else if (task == "semeval") {
      r.task = Task::kAbsa;
    } else {
      throw ParseError("report: unknown task '" + task + "'");
    }
    r.aspect_strict_acc = read_opt(j, "aspect_strict_acc");
    r.aspect_macro_f1 = read_opt(j, "aspect_macro_f1");
    r.aspect_macro_auc = read_opt(j, "aspect_macro_auc");
    r.sentiment_acc = read_opt(j, "sentiment_acc");
    r.sentiment_macro_auc = read_opt(j, "sentiment_macro_auc");
    r.detection_precision = read_opt(j, "detection_precision");
    r.detection_recall = read_opt(j, "detection_recall");
    r.detection_f1 = read_opt(j, "detection_f1");
    r.polarity_acc_4way = read_opt(j, "polarity_acc_4way");
    r.polarity_acc_3way = read_opt(j, "polarity_acc_3way");
    r.polarity_acc_binary = read_opt(j, "polarity_acc_binary");
    const auto& meta = j.at("metadata");
    r.auc_skipped_aspects = meta.at("auc_skipped_aspects").get<std::vector<std::string>>();
    r.sentiment_auc_skipped_aspects =
        meta.at("sentiment_auc_skipped_aspects").get<std::vector<std::string>>();
    r.f1_zero_division_aspects =
        meta.at("f1_zero_division_aspects").get<std::vector<std::string>>();
    r.detection_zero_division = meta.at("detection_zero_division").get<bool>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

std::string render_table(std::span<const EvaluationReport> reports) {
  std::size_t width = 5;
  for (const auto& r : reports) width = std::max(width, r.name.size());
  std::string out;
  auto section = [&](Task task) {
    bool any = std::any_of(reports.begin(), reports.end(),
                           [&](const EvaluationReport& r) { return r.task == task; });
    if (!any) return;
    if (!out.empty()) out += '\n';
    if (task == Task::kTabsa) {
      out += pad("", width, false) + " | " + pad("Aspect", 20, false) + " | Sentiment\n";
      out += pad("Model", width, false) + " |   Acc.     F1    AUC |   Acc.    AUC\n";
      for (const auto& r : reports) {
        if (r.task != task) continue;
        out += pad(r.name, width, false) + " | " + pad(cell(r.aspect_strict_acc, 1), 6) +
               " " + pad(cell(r.aspect_macro_f1, 1), 6) + " " +
               pad(cell(r.aspect_macro_auc, 1), 6) + " | " +
               pad(cell(r.sentiment_acc, 1), 6) + " " +
               pad(cell(r.sentiment_macro_auc, 1), 6) + "\n";
      }
    } else {
      out += pad("Model", width, false) +
             " |      P      R     F1 |  4-way  3-way Binary\n";
      for (const auto& r : reports) {
        if (r.task != task) continue;
        out += pad(r.name, width, false) + " | " + pad(cell(r.detection_precision, 2), 6) +
               " " + pad(cell(r.detection_recall, 2), 6) + " " +
               pad(cell(r.detection_f1, 2), 6) + " | " +
               pad(cell(r.polarity_acc_4way, 1), 6) + " " +
               pad(cell(r.polarity_acc_3way, 1), 6) + " " +
               pad(cell(r.polarity_acc_binary, 1), 6) + "\n";
      }
    }
  };
  section(Task::kTabsa);
  section(Task::kAbsa);
  return out;
}

}  // namespace absa
