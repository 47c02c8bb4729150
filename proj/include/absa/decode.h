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

#ifndef ABSA_DECODE_H_
#define ABSA_DECODE_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absa/auxgen.h"
#include "absa/classifier.h"

namespace absa {

// Per-polarity evidence for one grid cell, in canonical polarity order.
// For polarity-output methods the values are class probabilities; for
// binary methods they are P(yes) matching scores of each candidate.
struct GroupScores {
  bool matching = false;
  std::vector<std::pair<Polarity, double>> values;

  std::optional<double> get(Polarity p) const;
};

struct GridPrediction {
  GroupKey group;
  Polarity label = Polarity::kNone;
  double presence_score = 0.0;
  std::optional<double> sentiment_score;
  GroupScores scores;
};

using DistMap = std::map<std::string, ProbDist, std::less<>>;

// Throws ParseError on a duplicated uid.
DistMap index_by_uid(std::vector<ProbDist> dists);

// Polarity-output decoding (qa_m, nli_m, single): argmax with the canonical
// tie break; presence = 1 - P(none); sentiment = P(pos) / (P(pos) + P(neg)).
std::vector<GridPrediction> decode_m(const DistMap& dists,
                                     std::span<const PairExample> examples);

// Binary decoding (qa_b, nli_b): the candidate with the highest P(yes) wins;
// presence = max P(yes) over non-none candidates; sentiment as above but on
// the P(yes) values.
std::vector<GridPrediction> decode_b(const DistMap& dists,
                                     std::span<const PairExample> examples);

// Dispatches on the examples' method.
std::vector<GridPrediction> decode(const DistMap& dists,
                                   std::span<const PairExample> examples);

// Argmax over `allowed` only (none may not be allowed). Probabilities are
// renormalized over the allowed labels first; matching scores are compared
// as they are.
Polarity restrict_polarity(const GroupScores& scores,
                           std::span<const Polarity> allowed);

// TSV: group_id, label, presence_score, sentiment_score (empty when unset).
std::string write_predictions_tsv(std::span<const GridPrediction> predictions);

}  // namespace absa

#endif  // ABSA_DECODE_H_
