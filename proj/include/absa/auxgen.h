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

// Auxiliary-sentence construction and pair-dataset emission.
//
// Template table ({target} renders as "location - <k>", hyphens and other
// punctuation inside {aspect} become separate tokens):
//
//   method   targeted                                             aspect-only
//   qa_m     what do you think of the {aspect} of {target} ?      what do you think of the {aspect} of it ?
//   nli_m    {target} - {aspect}                                  {aspect}
//   qa_b     the polarity of the aspect {aspect} of {target} is {candidate}
//                                                                 the polarity of the aspect {aspect} is {candidate}
//   nli_b    {target} - {aspect} - {candidate}                    {aspect} - {candidate}
//   single   (empty)                                              (empty)

#ifndef ABSA_AUXGEN_H_
#define ABSA_AUXGEN_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absa/corpus.h"
#include "absa/types.h"

namespace absa {

struct PairExample {
  std::string uid;
  GroupKey group;
  Method method = Method::kQaM;
  std::string sentence1;
  std::string sentence2;
  std::optional<Polarity> candidate;  // set iff method is qa_b/nli_b
  std::string gold;                   // polarity name, or yes/no

  Task task() const { return group.target ? Task::kTabsa : Task::kAbsa; }
  bool operator==(const PairExample&) const = default;
};

// Throws ContractViolation when the candidate/method pairing is wrong.
std::string make_auxiliary(Method method, std::optional<int> target,
                           const std::string& aspect,
                           std::optional<Polarity> candidate);

// Deterministic in (group, method, candidate).
std::string make_uid(const GroupKey& group, Method method,
                     std::optional<Polarity> candidate);

// Sentences must already be grid-expanded against `aspects`; method must not
// be single. Order: sentence, target index, aspect-set order, canonical
// polarity order.
std::vector<PairExample> build_pairs(std::span<const LabeledSentence> sentences,
                                     Method method, const AspectSet& aspects);

// One sub-dataset per (target index, aspect) for the single-sentence framing.
struct SingleGroup {
  std::optional<int> target;
  std::string aspect;
  std::vector<PairExample> examples;
};

std::vector<SingleGroup> build_single_groups(
    std::span<const LabeledSentence> sentences, const AspectSet& aspects);

// build_pairs for pair methods; concatenated groups for single.
std::vector<PairExample> build_examples(
    std::span<const LabeledSentence> sentences, Method method,
    const AspectSet& aspects);

// Pair file: TSV with header
// uid, group_id, method, candidate, gold, sentence1, sentence2.
std::string write_pairs_tsv(std::span<const PairExample> examples);
std::vector<PairExample> read_pairs_tsv(std::string_view text);

}  // namespace absa

#endif  // ABSA_AUXGEN_H_
