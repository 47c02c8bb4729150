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

// Sentence-pair classifier: hashed segment-tagged n-gram features feeding a
// softmax head P = softmax(W x + b), trained by mini-batch gradient descent on
// cross-entropy. Also the score-file and model-file formats.

#ifndef ABSA_CLASSIFIER_H_
#define ABSA_CLASSIFIER_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absa/auxgen.h"

namespace absa {

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

// Sparse vector over [0, dim); indices strictly increasing.
struct FeatureVector {
  std::vector<std::uint32_t> indices;
  std::vector<double> values;
  std::uint32_t dim = 0;

  bool operator==(const FeatureVector&) const = default;
};

// Unigrams and bigrams of each segment's whitespace tokens, tagged "A:" for
// sentence1 and "B:" for sentence2 ("A:tok", "A:tok1 tok2"), hashed with
// fnv1a64 masked to dim - 1. Colliding features add their counts.
FeatureVector encode_features(std::string_view sentence1,
                              std::string_view sentence2, std::uint32_t dim);
FeatureVector encode_features(const PairExample& example, std::uint32_t dim);

struct TrainConfig {
  double learning_rate = 0.2;
  int epochs = 5;  // 0 leaves the zero initialization untouched
  int batch_size = 32;
  std::uint64_t seed = 13;
  int hash_bits = 18;

  std::uint32_t dim() const { return std::uint32_t{1} << hash_bits; }
  void validate() const;  // throws ValidationError
};

struct ModelParams {
  std::vector<std::string> label_names;  // K
  std::uint32_t dim = 0;                 // H
  std::vector<double> weights;           // K x H, row-major
  std::vector<double> bias;              // K

  static ModelParams zeros(std::vector<std::string> labels, std::uint32_t dim);

  std::size_t num_labels() const { return label_names.size(); }
  double weight(std::size_t k, std::uint32_t j) const {
    return weights[k * dim + j];
  }
  double& weight(std::size_t k, std::uint32_t j) { return weights[k * dim + j]; }

  void validate() const;  // K >= 2, shapes, finiteness
  bool operator==(const ModelParams&) const = default;
};

struct ProbDist {
  std::string uid;
  std::vector<std::string> labels;
  std::vector<double> probs;

  // Throws ContractViolation for a label outside the distribution.
  double at(std::string_view label) const;
  bool has(std::string_view label) const;
};

std::vector<double> softmax(std::span<const double> logits);
std::vector<double> logits(const ModelParams& model, const FeatureVector& x);

ProbDist predict_proba(const ModelParams& model, const FeatureVector& x,
                       std::string uid);
ProbDist predict_proba(const ModelParams& model, const PairExample& example);

struct TrainingExample {
  FeatureVector features;
  std::size_t label = 0;  // index into label_names
};

// Mean cross-entropy over the examples.
double mean_cross_entropy(const ModelParams& model,
                          std::span<const TrainingExample> data);

// Gradient of mean_cross_entropy; only columns touched by the batch appear.
struct Gradient {
  std::map<std::uint32_t, std::vector<double>> columns;
  std::vector<double> bias;
};

Gradient cross_entropy_gradient(const ModelParams& model,
                                std::span<const TrainingExample> data,
                                std::span<const std::size_t> batch);
Gradient cross_entropy_gradient(const ModelParams& model,
                                std::span<const TrainingExample> data);

// The single label set shared by all examples; ContractViolation when they
// mix binary and polarity labels or targeted and aspect-only tasks.
std::vector<std::string> common_label_set(std::span<const PairExample> examples);

ModelParams train_softmax(std::span<const TrainingExample> data,
                          std::vector<std::string> label_names,
                          const TrainConfig& config);
ModelParams train_softmax(std::span<const PairExample> examples,
                          const TrainConfig& config);

// Score file: header "uid<TAB>label1...labelK", one row per example.
std::string write_scores_tsv(std::span<const ProbDist> dists,
                             std::span<const std::string> labels);

// Rows whose probabilities sum within [0.99, 1.01] are renormalized; others,
// and rows with a missing uid or a non-numeric value, raise a ParseError
// naming the line. A header that differs from expected_labels is a
// ValidationError.
std::vector<ProbDist> import_external_scores(
    std::string_view document, std::span<const std::string> expected_labels);

// Model file: JSON container described in README.md. `group` is unset for a
// single pair-method model and "<target or ->|<aspect>" for per-group
// single-sentence models.
struct ModelEntry {
  std::optional<std::string> group;
  ModelParams params;

  bool operator==(const ModelEntry&) const = default;
};

std::string write_model_file(std::span<const ModelEntry> models);
std::vector<ModelEntry> read_model_file(std::string_view text);

// Reference hyperparameters for external BERT fine-tuning, key=value lines.
std::string reference_finetune_config();

}  // namespace absa

#endif  // ABSA_CLASSIFIER_H_
