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

// Dataset ingestion for SentiHood (JSON) and SemEval-2014 Task 4 (XML), plus
// the canonical JSON-lines form and label-grid expansion.

#ifndef ABSA_CORPUS_H_
#define ABSA_CORPUS_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absa/types.h"

namespace absa {

struct TargetId {
  int index = 0;        // 1-based
  std::string surface;  // "LOCATION<index>"

  auto operator<=>(const TargetId&) const = default;
  bool operator==(const TargetId&) const = default;
};

// Ordered, non-empty, duplicate-free list of aspect identifiers.
class AspectSet {
 public:
  explicit AspectSet(std::vector<std::string> names);

  static AspectSet sentihood();  // general, price, transit-location, safety
  static AspectSet semeval();    // food, service, price, ambience, anecdotes/miscellaneous

  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  bool contains(std::string_view aspect) const;

  bool operator==(const AspectSet&) const = default;

 private:
  std::vector<std::string> names_;
};

// Key of a gold entry within one sentence; target is absent for absa.
struct GoldKey {
  std::optional<int> target;
  std::string aspect;

  auto operator<=>(const GoldKey&) const = default;
  bool operator==(const GoldKey&) const = default;
};

struct LabeledSentence {
  std::string id;
  Task task = Task::kTabsa;
  std::string raw_text;
  std::vector<std::string> norm_tokens;
  std::vector<TargetId> targets;  // sorted by index; empty for absa
  std::map<GoldKey, Polarity> gold;

  bool operator==(const LabeledSentence&) const = default;
};

// Lowercases, splits ASCII punctuation into separate tokens and rewrites each
// LOCATION<k> token as "location", "-", "<k>". Total and deterministic.
std::vector<std::string> normalize_text(std::string_view raw);

// Distinct LOCATION<k> tokens in raw text, sorted by index.
std::vector<TargetId> find_targets(std::string_view raw);

// Throws ParseError (with record index or byte offset) on malformed input and
// ValidationError (naming the record id) on content violations.
std::vector<LabeledSentence> parse_sentihood(std::string_view document);
std::vector<LabeledSentence> parse_semeval(std::string_view document);

// Fills every (target, aspect) cell (tabsa) or every aspect (absa) with none
// where unannotated, and drops entries whose aspect is outside `aspects`.
LabeledSentence grid_expand(const LabeledSentence& sentence,
                            const AspectSet& aspects);
std::vector<LabeledSentence> grid_expand(
    std::span<const LabeledSentence> sentences, const AspectSet& aspects);

// True when gold holds exactly the cells grid_expand would produce.
bool is_grid_expanded(const LabeledSentence& sentence,
                      const AspectSet& aspects);

// Canonical internal form: one JSON object per line.
std::string to_jsonl(std::span<const LabeledSentence> sentences);
std::vector<LabeledSentence> from_jsonl(std::string_view text);

// Flattened gold labels keyed by grid cell.
using GoldGrid = std::map<GroupKey, Polarity>;
GoldGrid make_gold_grid(std::span<const LabeledSentence> expanded);

}  // namespace absa

#endif  // ABSA_CORPUS_H_
