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

#include "absa/auxgen.h"

#include <algorithm>
#include <set>

#include "tsv.h"

namespace absa {
namespace {

constexpr std::string_view kPairHeader[] = {
    "uid", "group_id", "method", "candidate", "gold", "sentence1", "sentence2"};

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

std::string render_target(int index) {
  return "location - " + std::to_string(index);
}

std::string render_aspect(const std::string& aspect) {
  return join(normalize_text(aspect));
}

void check_unique_ids(std::span<const LabeledSentence> sentences) {
  std::set<std::string_view> seen;
  for (const auto& s : sentences) {
    if (!seen.insert(s.id).second) {
      throw ValidationError("duplicate sentence id " + s.id);
    }
  }
}

void check_expanded(const LabeledSentence& s, const AspectSet& aspects) {
  if (!is_grid_expanded(s, aspects)) {
    throw ValidationError("sentence " + s.id +
                          " is not grid-expanded against the aspect set");
  }
}

std::vector<std::optional<int>> target_rows(const LabeledSentence& s) {
  std::vector<std::optional<int>> rows;
  if (s.task == Task::kTabsa) {
    for (const auto& t : s.targets) rows.emplace_back(t.index);
  } else {
    rows.emplace_back(std::nullopt);
  }
  return rows;
}

}  // namespace

std::string make_auxiliary(Method method, std::optional<int> target,
                           const std::string& aspect,
                           std::optional<Polarity> candidate) {
  if (is_binary_method(method) != candidate.has_value()) {
    throw ContractViolation(
        std::string("candidate polarity must be supplied for exactly the "
                    "binary methods; got method ") +
        std::string(method_name(method)));
  }
  const std::string a = render_aspect(aspect);
  const std::string c = candidate ? std::string(polarity_name(*candidate)) : "";
  if (target) {
    const std::string t = render_target(*target);
    switch (method) {
      case Method::kQaM: return "what do you think of the " + a + " of " + t + " ?";
      case Method::kNliM: return t + " - " + a;
      case Method::kQaB: return "the polarity of the aspect " + a + " of " + t + " is " + c;
      case Method::kNliB: return t + " - " + a + " - " + c;
      case Method::kSingle: return "";
    }
  } else {
    switch (method) {
      case Method::kQaM: return "what do you think of the " + a + " of it ?";
      case Method::kNliM: return a;
      case Method::kQaB: return "the polarity of the aspect " + a + " is " + c;
      case Method::kNliB: return a + " - " + c;
      case Method::kSingle: return "";
    }
  }
  return "";
}

std::string make_uid(const GroupKey& group, Method method,
                     std::optional<Polarity> candidate) {
  std::string uid = group_id(group);
  uid += '|';
  uid += method_name(method);
  if (candidate) {
    uid += '|';
    uid += polarity_name(*candidate);
  }
  return uid;
}

std::vector<PairExample> build_pairs(std::span<const LabeledSentence> sentences,
                                     Method method, const AspectSet& aspects) {
  if (method == Method::kSingle) {
    throw ContractViolation("build_pairs does not accept the single method");
  }
  check_unique_ids(sentences);
  std::vector<PairExample> out;
  for (const auto& s : sentences) {
    check_expanded(s, aspects);
    const std::string sentence1 = join(s.norm_tokens);
    for (const auto& target : target_rows(s)) {
      for (const auto& aspect : aspects.names()) {
        GroupKey group{s.id, target, aspect};
        Polarity label = s.gold.at(GoldKey{target, aspect});
        auto emit = [&](std::optional<Polarity> candidate) {
          PairExample ex;
          ex.uid = make_uid(group, method, candidate);
          ex.group = group;
          ex.method = method;
          ex.sentence1 = sentence1;
          ex.sentence2 = make_auxiliary(method, target, aspect, candidate);
          ex.candidate = candidate;
          if (candidate) {
            ex.gold = std::string(*candidate == label ? kYes : kNo);
          } else {
            ex.gold = std::string(polarity_name(label));
          }
          out.push_back(std::move(ex));
        };
        if (is_binary_method(method)) {
          for (Polarity p : task_polarities(s.task)) emit(p);
        } else {
          emit(std::nullopt);
        }
      }
    }
  }
  return out;
}

std::vector<SingleGroup> build_single_groups(
    std::span<const LabeledSentence> sentences, const AspectSet& aspects) {
  check_unique_ids(sentences);
  std::set<std::optional<int>> rows;
  for (const auto& s : sentences) {
    check_expanded(s, aspects);
    for (const auto& t : target_rows(s)) rows.insert(t);
  }
  std::vector<SingleGroup> groups;
  for (const auto& target : rows) {
    for (const auto& aspect : aspects.names()) {
      SingleGroup g{target, aspect, {}};
      for (const auto& s : sentences) {
        auto it = s.gold.find(GoldKey{target, aspect});
        if (it == s.gold.end()) continue;
        PairExample ex;
        ex.group = GroupKey{s.id, target, aspect};
        ex.uid = make_uid(ex.group, Method::kSingle, std::nullopt);
        ex.method = Method::kSingle;
        ex.sentence1 = join(s.norm_tokens);
        ex.gold = std::string(polarity_name(it->second));
        g.examples.push_back(std::move(ex));
      }
      groups.push_back(std::move(g));
    }
  }
  return groups;
}

std::vector<PairExample> build_examples(
    std::span<const LabeledSentence> sentences, Method method,
    const AspectSet& aspects) {
  if (method != Method::kSingle) return build_pairs(sentences, method, aspects);
  std::vector<PairExample> out;
  for (auto& g : build_single_groups(sentences, aspects)) {
    for (auto& ex : g.examples) out.push_back(std::move(ex));
  }
  return out;
}

std::string write_pairs_tsv(std::span<const PairExample> examples) {
  std::string out;
  tsv::append_row(out, kPairHeader);
  for (const auto& ex : examples) {
    const std::string gid = group_id(ex.group);
    const std::string candidate =
        ex.candidate ? std::string(polarity_name(*ex.candidate)) : "";
    const std::string_view row[] = {ex.uid,    gid,          method_name(ex.method),
                                    candidate, ex.gold,      ex.sentence1,
                                    ex.sentence2};
    tsv::append_row(out, row);
  }
  return out;
}

std::vector<PairExample> read_pairs_tsv(std::string_view text) {
  auto rows = tsv::split_lines(text);
  if (rows.empty()) throw ParseError("pair file is empty");
  auto header = tsv::split_fields(rows[0].text);
  if (!std::equal(header.begin(), header.end(), std::begin(kPairHeader),
                  std::end(kPairHeader))) {
    throw ParseError("pair file: unexpected header");
  }
  std::vector<PairExample> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    auto fail = [&](const std::string& what) -> ParseError {
      return ParseError("pair file line " + std::to_string(row.line) + ": " + what);
    };
    auto f = tsv::split_fields(row.text);
    if (f.size() != std::size(kPairHeader)) {
      throw fail("expected 7 fields, found " + std::to_string(f.size()));
    }
    PairExample ex;
    ex.uid = std::string(f[0]);
    if (ex.uid.empty()) throw fail("empty uid");
    try {
      ex.group = parse_group_id(f[1]);
    } catch (const ParseError& e) {
      throw fail(e.what());
    }
    auto method = parse_method(f[2]);
    if (!method) throw fail("unknown method '" + std::string(f[2]) + "'");
    ex.method = *method;
    if (!f[3].empty()) {
      auto c = parse_polarity(f[3]);
      if (!c) throw fail("unknown candidate '" + std::string(f[3]) + "'");
      ex.candidate = *c;
    }
    if (is_binary_method(ex.method) != ex.candidate.has_value()) {
      throw fail("candidate must be set exactly for binary methods");
    }
    ex.gold = std::string(f[4]);
    auto labels = label_set(ex.method, ex.task());
    if (std::find(labels.begin(), labels.end(), ex.gold) == labels.end()) {
      throw fail("gold label '" + ex.gold + "' outside the method's label set");
    }
    ex.sentence1 = std::string(f[5]);
    ex.sentence2 = std::string(f[6]);
    out.push_back(std::move(ex));
  }
  return out;
}

}  // namespace absa
