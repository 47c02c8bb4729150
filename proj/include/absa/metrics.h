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

// Evaluation protocols.
//
// SentiHood: aspect detection by strict accuracy over (sentence, target)
// units, macro-F1 and macro-AUC over aspects; sentiment by accuracy and
// macro-AUC over gold-present cells labelled positive or negative.
// SemEval-2014 Task 4: micro P/R/F1 for category detection; 4-way, 3-way and
// binary polarity accuracy over gold-annotated categories.
//
// Undefined quantities are reported as nullopt (AUC with a single class,
// accuracy over an empty set). P/R/F1 use 0/0 -> 0 and flag it.

#ifndef ABSA_METRICS_H_
#define ABSA_METRICS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absa/corpus.h"
#include "absa/decode.h"

namespace absa {

// Fraction of (sentence, target) units whose predicted aspect set
// {a : label != none} equals the gold aspect set.
double strict_aspect_accuracy(const GoldGrid& gold,
                              std::span<const GridPrediction> pred);

struct MacroF1 {
  double macro_f1 = 0.0;
  std::vector<std::pair<std::string, double>> per_aspect;
  std::vector<std::string> zero_division_aspects;
};

MacroF1 aspect_macro_f1(const GoldGrid& gold, std::span<const GridPrediction> pred,
                        const AspectSet& aspects);

struct ScoredInstance {
  double score = 0.0;
  bool positive = false;
};

// Mann-Whitney AUC with ties counted one half; nullopt unless both classes
// are present.
std::optional<double> roc_auc(std::span<const ScoredInstance> instances);

struct AucBundle {
  std::optional<double> aspect_macro_auc;
  std::optional<double> sentiment_macro_auc;
  std::vector<std::string> aspect_skipped;
  std::vector<std::string> sentiment_skipped;
};

AucBundle sentihood_auc_bundle(const GoldGrid& gold,
                               std::span<const GridPrediction> pred,
                               const AspectSet& aspects);

// Over gold cells labelled positive or negative, with predictions restricted
// to {positive, negative}.
std::optional<double> sentiment_accuracy(const GoldGrid& gold,
                                         std::span<const GridPrediction> pred);

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool zero_division = false;
};

Prf semeval_detection_prf(const GoldGrid& gold, std::span<const GridPrediction> pred);

enum class PolarityMode { k4Way, k3Way, kBinary };

std::span<const Polarity> mode_polarities(PolarityMode mode);

std::optional<double> semeval_polarity_accuracy(
    const GoldGrid& gold, std::span<const GridPrediction> pred, PolarityMode mode);

struct EvaluationReport {
  std::string name;                 // model/run label shown in tables
  Task task = Task::kTabsa;

  std::optional<double> aspect_strict_acc;
  std::optional<double> aspect_macro_f1;
  std::optional<double> aspect_macro_auc;
  std::optional<double> sentiment_acc;
  std::optional<double> sentiment_macro_auc;

  std::optional<double> detection_precision;
  std::optional<double> detection_recall;
  std::optional<double> detection_f1;
  std::optional<double> polarity_acc_4way;
  std::optional<double> polarity_acc_3way;
  std::optional<double> polarity_acc_binary;

  // Metadata flags.
  std::vector<std::string> auc_skipped_aspects;
  std::vector<std::string> sentiment_auc_skipped_aspects;
  std::vector<std::string> f1_zero_division_aspects;
  bool detection_zero_division = false;

  bool operator==(const EvaluationReport&) const = default;
};

EvaluationReport evaluate(Task task, const GoldGrid& gold,
                          std::span<const GridPrediction> pred,
                          const AspectSet& aspects, std::string name);

std::string report_to_json(const EvaluationReport& report);
EvaluationReport report_from_json(std::string_view text);

// Plain-text comparison table, one section per task.
std::string render_table(std::span<const EvaluationReport> reports);

}  // namespace absa

#endif  // ABSA_METRICS_H_
