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

// End-to-end orchestration behind the absa_pair CLI.

#ifndef ABSA_HARNESS_H_
#define ABSA_HARNESS_H_

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absa/auxgen.h"
#include "absa/classifier.h"
#include "absa/corpus.h"
#include "absa/metrics.h"

namespace absa {

// Environment variable naming the directory relative input paths are
// resolved against.
inline constexpr const char* kDataDirEnv = "ABSA_DATA_DIR";

std::string read_file(const std::string& path);                        // IoError
void write_file(const std::string& path, std::string_view contents);   // IoError

// Resolves a relative input path against $ABSA_DATA_DIR when the variable is
// set and the path does not exist as given.
std::string resolve_input(const std::string& path);

// Parses a dataset file with the reader for the task.
std::vector<LabeledSentence> load_corpus(Task task, const std::string& path);

AspectSet default_aspects(Task task);

struct RunConfig {
  Task task = Task::kTabsa;
  Method method = Method::kNliM;
  std::vector<std::pair<std::string, std::string>> paths;  // role -> path
  TrainConfig train;
  std::optional<AspectSet> aspects;

  AspectSet resolved_aspects() const;
  void validate() const;  // distinct paths
  std::string describe() const;
};

// Key used to route single-sentence examples to their per-group model:
// "<target or ->|<aspect>".
std::string single_model_key(const GroupKey& group);

// One model for pair methods; one per (target, aspect) group for single.
std::vector<ModelEntry> train_models(std::span<const PairExample> examples,
                                     const TrainConfig& config);

// Groups without a trained model (single framing only) receive the uniform
// distribution over their label set.
std::vector<ProbDist> predict_all(std::span<const ModelEntry> models,
                                  std::span<const PairExample> examples);

// Gold-derived one-hot distribution for an example.
ProbDist oracle_dist(const PairExample& example);

// Decodes `dists` against the examples generated from `expanded` and scores
// them with the task's protocol.
EvaluationReport evaluate_scores(Task task, Method method,
                                 std::span<const LabeledSentence> expanded,
                                 const AspectSet& aspects,
                                 std::span<const ProbDist> dists, std::string name);

struct CompareInputs {
  Task task = Task::kTabsa;
  Method pair_method = Method::kNliM;
  AspectSet aspects = AspectSet::sentihood();
  std::vector<LabeledSentence> train;  // raw or expanded
  std::vector<LabeledSentence> test;
  TrainConfig config;
  // When set, replaces the trained classifier in both arms.
  std::function<ProbDist(const PairExample&)> scorer;
};

struct Comparison {
  EvaluationReport single;
  EvaluationReport pair;
};

// Single-sentence framing (one classifier per (target, aspect)) against one
// pair method, same corpus, same seed.
Comparison compare_single_vs_pair(const CompareInputs& inputs);

// Subcommands: convert | train | predict | eval | report | export-config |
// compare. Returns 0 on success, 1 on usage/validation errors, 2 on I/O
// errors.
int run_cli(std::span<const std::string> args, std::ostream& out,
            std::ostream& err);

}  // namespace absa

#endif  // ABSA_HARNESS_H_
