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

#include "absa/types.h"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace absa {
namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

constexpr Polarity kTabsaSet[] = {Polarity::kPositive, Polarity::kNegative,
                                  Polarity::kNone};

}  // namespace

std::string_view polarity_name(Polarity p) {
  switch (p) {
    case Polarity::kPositive: return "positive";
    case Polarity::kNegative: return "negative";
    case Polarity::kNeutral: return "neutral";
    case Polarity::kConflict: return "conflict";
    case Polarity::kNone: return "none";
  }
  return "none";
}

std::optional<Polarity> parse_polarity(std::string_view s) {
  for (Polarity p : kAllPolarities) {
    if (iequals(s, polarity_name(p))) return p;
  }
  return std::nullopt;
}

std::string_view task_name(Task t) {
  return t == Task::kTabsa ? "tabsa" : "absa";
}

std::optional<Task> parse_task(std::string_view s) {
  if (s == "tabsa") return Task::kTabsa;
  if (s == "absa") return Task::kAbsa;
  return std::nullopt;
}

std::span<const Polarity> task_polarities(Task t) {
  if (t == Task::kTabsa) return kTabsaSet;
  return kAllPolarities;
}

bool polarity_allowed(Task t, Polarity p) {
  auto set = task_polarities(t);
  return std::find(set.begin(), set.end(), p) != set.end();
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kQaM: return "qa_m";
    case Method::kNliM: return "nli_m";
    case Method::kQaB: return "qa_b";
    case Method::kNliB: return "nli_b";
    case Method::kSingle: return "single";
  }
  return "single";
}

std::optional<Method> parse_method(std::string_view s) {
  for (Method m : {Method::kQaM, Method::kNliM, Method::kQaB, Method::kNliB,
                   Method::kSingle}) {
    if (iequals(s, method_name(m))) return m;
  }
  // Hyphenated spellings as used in prose ("QA-M", "NLI-B").
  std::string alt(s);
  std::replace(alt.begin(), alt.end(), '-', '_');
  if (alt != s) return parse_method(alt);
  return std::nullopt;
}

std::string group_id(const GroupKey& key) {
  std::string out = key.sentence_id;
  out += '|';
  out += key.target ? std::to_string(*key.target) : std::string("-");
  out += '|';
  out += key.aspect;
  return out;
}

GroupKey parse_group_id(std::string_view id) {
  auto first = id.find('|');
  if (first == std::string_view::npos) {
    throw ParseError("malformed group id '" + std::string(id) + "'");
  }
  auto second = id.find('|', first + 1);
  if (second == std::string_view::npos) {
    throw ParseError("malformed group id '" + std::string(id) + "'");
  }
  GroupKey key;
  key.sentence_id = std::string(id.substr(0, first));
  auto target = id.substr(first + 1, second - first - 1);
  if (target != "-") {
    int value = 0;
    auto [ptr, ec] =
        std::from_chars(target.data(), target.data() + target.size(), value);
    if (ec != std::errc() || ptr != target.data() + target.size() ||
        value < 1) {
      throw ParseError("malformed target index in group id '" +
                       std::string(id) + "'");
    }
    key.target = value;
  }
  key.aspect = std::string(id.substr(second + 1));
  if (key.aspect.empty()) {
    throw ParseError("empty aspect in group id '" + std::string(id) + "'");
  }
  return key;
}

std::vector<std::string> label_set(Method m, Task t) {
  if (is_binary_method(m)) return {std::string(kYes), std::string(kNo)};
  std::vector<std::string> out;
  for (Polarity p : task_polarities(t)) out.emplace_back(polarity_name(p));
  return out;
}

}  // namespace absa
