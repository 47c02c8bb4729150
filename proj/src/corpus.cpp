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

#include "absa/corpus.h"

#include <algorithm>
#include <cctype>
#include <set>

#include "json.hpp"
#include "xml.h"

namespace absa {
namespace {

using ordered_json = nlohmann::ordered_json;

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_ascii_punct(char c) {
  auto u = static_cast<unsigned char>(c);
  return u < 0x80 && std::ispunct(u);
}

// Whitespace/punctuation split of the raw text, case preserved.
std::vector<std::string> split_raw(std::string_view raw) {
  std::vector<std::string> out;
  std::string word;
  auto flush = [&] {
    if (!word.empty()) out.push_back(std::move(word));
    word.clear();
  };
  for (char c : raw) {
    if (is_ascii_space(c)) {
      flush();
    } else if (is_ascii_punct(c)) {
      flush();
      out.emplace_back(1, c);
    } else {
      word += c;
    }
  }
  flush();
  return out;
}

// Index k of a LOCATION<k> token (k >= 1, no leading zero), or 0.
int location_index(std::string_view token) {
  constexpr std::string_view kPrefix = "LOCATION";
  if (token.size() <= kPrefix.size() || token.substr(0, kPrefix.size()) != kPrefix) {
    return 0;
  }
  std::string_view digits = token.substr(kPrefix.size());
  if (digits[0] == '0' || digits.size() > 6) return 0;
  int value = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') return 0;
    value = value * 10 + (c - '0');
  }
  return value;
}

std::string lower_ascii(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

void check_identifier(const std::string& id, std::string_view what) {
  if (id.empty() ||
      id.find_first_of("|\t\n\r") != std::string::npos) {
    throw ValidationError(std::string(what) + " '" + id +
                          "' is empty or contains '|', tab or newline");
  }
}

void check_aspect(const std::string& aspect, const std::string& sentence_id) {
  if (aspect.empty() || aspect.find_first_of("\t\n\r") != std::string::npos) {
    throw ValidationError("sentence " + sentence_id +
                          ": aspect is empty or contains tab/newline");
  }
}

void insert_gold(LabeledSentence& s, GoldKey key, Polarity p) {
  auto [it, inserted] = s.gold.emplace(key, p);
  if (!inserted && it->second != p) {
    throw ValidationError("sentence " + s.id + ": conflicting labels for aspect '" +
                          key.aspect + "'");
  }
}

std::string id_string(const nlohmann::json& value, std::size_t record) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  throw ParseError("SentiHood record " + std::to_string(record) +
                   ": field 'id' must be an integer or string");
}

const nlohmann::json& field(const nlohmann::json& obj, const char* name,
                            std::size_t record) {
  auto it = obj.find(name);
  if (it == obj.end()) {
    throw ParseError("SentiHood record " + std::to_string(record) +
                     ": missing field '" + name + "'");
  }
  return *it;
}

}  // namespace

AspectSet::AspectSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw ValidationError("aspect set must not be empty");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty() || n.find_first_of("\t\n\r") != std::string::npos) {
      throw ValidationError("invalid aspect name '" + n + "'");
    }
    if (!seen.insert(n).second) {
      throw ValidationError("duplicate aspect '" + n + "'");
    }
  }
}

AspectSet AspectSet::sentihood() {
  return AspectSet({"general", "price", "transit-location", "safety"});
}

AspectSet AspectSet::semeval() {
  return AspectSet(
      {"food", "service", "price", "ambience", "anecdotes/miscellaneous"});
}

bool AspectSet::contains(std::string_view aspect) const {
  return std::find(names_.begin(), names_.end(), aspect) != names_.end();
}

std::vector<std::string> normalize_text(std::string_view raw) {
  std::vector<std::string> out;
  for (auto& token : split_raw(raw)) {
    if (int k = location_index(token)) {
      out.emplace_back("location");
      out.emplace_back("-");
      out.push_back(std::to_string(k));
    } else {
      out.push_back(lower_ascii(std::move(token)));
    }
  }
  return out;
}

std::vector<TargetId> find_targets(std::string_view raw) {
  std::set<int> indices;
  for (const auto& token : split_raw(raw)) {
    if (int k = location_index(token)) indices.insert(k);
  }
  std::vector<TargetId> out;
  for (int k : indices) out.push_back({k, "LOCATION" + std::to_string(k)});
  return out;
}

std::vector<LabeledSentence> parse_sentihood(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("SentiHood JSON parse error at byte offset " +
                     std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_array()) throw ParseError("SentiHood document must be a JSON array");

  std::vector<LabeledSentence> out;
  out.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& rec = doc[i];
    if (!rec.is_object()) {
      throw ParseError("SentiHood record " + std::to_string(i) +
                       ": expected an object");
    }
    LabeledSentence s;
    s.task = Task::kTabsa;
    s.id = id_string(field(rec, "id", i), i);
    check_identifier(s.id, "sentence id");
    const auto& text = field(rec, "text", i);
    if (!text.is_string()) {
      throw ParseError("SentiHood record " + std::to_string(i) +
                       ": field 'text' must be a string");
    }
    s.raw_text = text.get<std::string>();
    s.norm_tokens = normalize_text(s.raw_text);
    s.targets = find_targets(s.raw_text);

    const auto& opinions = field(rec, "opinions", i);
    if (!opinions.is_array()) {
      throw ParseError("SentiHood record " + std::to_string(i) +
                       ": field 'opinions' must be an array");
    }
    for (const auto& op : opinions) {
      if (!op.is_object()) {
        throw ParseError("SentiHood record " + std::to_string(i) +
                         ": opinion must be an object");
      }
      const auto& target = field(op, "target_entity", i);
      const auto& aspect = field(op, "aspect", i);
      const auto& sentiment = field(op, "sentiment", i);
      if (!target.is_string() || !aspect.is_string() || !sentiment.is_string()) {
        throw ParseError("SentiHood record " + std::to_string(i) +
                         ": opinion fields must be strings");
      }
      auto surface = target.get<std::string>();
      int k = location_index(surface);
      bool found = std::any_of(s.targets.begin(), s.targets.end(),
                               [&](const TargetId& t) { return t.index == k; });
      if (k == 0 || !found) {
        throw ValidationError("sentence " + s.id + ": opinion target '" +
                              surface + "' does not occur in the text");
      }
      auto name = aspect.get<std::string>();
      check_aspect(name, s.id);
      auto p = parse_polarity(sentiment.get<std::string>());
      if (!p || !polarity_allowed(Task::kTabsa, *p)) {
        throw ValidationError("sentence " + s.id + ": unknown sentiment '" +
                              sentiment.get<std::string>() + "'");
      }
      insert_gold(s, GoldKey{k, std::move(name)}, *p);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<LabeledSentence> parse_semeval(std::string_view document) {
  xml::Element root = xml::parse(document);
  std::vector<LabeledSentence> out;
  for (const auto& node : root.children) {
    if (node.name != "sentence") continue;
    LabeledSentence s;
    s.task = Task::kAbsa;
    const std::string* id = node.attribute("id");
    if (id == nullptr) {
      throw ValidationError("sentence element at byte offset " +
                            std::to_string(node.offset) + " has no id");
    }
    s.id = *id;
    check_identifier(s.id, "sentence id");
    if (const auto* text = node.child("text")) s.raw_text = text->text;
    s.norm_tokens = normalize_text(s.raw_text);
    if (const auto* cats = node.child("aspectCategories")) {
      for (const auto& cat : cats->children) {
        if (cat.name != "aspectCategory") continue;
        const std::string* category = cat.attribute("category");
        const std::string* polarity = cat.attribute("polarity");
        if (category == nullptr || polarity == nullptr) {
          throw ValidationError("sentence " + s.id +
                                ": aspectCategory lacks category or polarity");
        }
        check_aspect(*category, s.id);
        auto p = parse_polarity(*polarity);
        if (!p || *p == Polarity::kNone) {
          throw ValidationError("sentence " + s.id + ": unknown polarity '" +
                                *polarity + "'");
        }
        insert_gold(s, GoldKey{std::nullopt, *category}, *p);
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

LabeledSentence grid_expand(const LabeledSentence& sentence,
                            const AspectSet& aspects) {
  LabeledSentence out = sentence;
  out.gold.clear();
  auto fill = [&](std::optional<int> target) {
    for (const auto& a : aspects.names()) {
      GoldKey key{target, a};
      auto it = sentence.gold.find(key);
      out.gold.emplace(key, it == sentence.gold.end() ? Polarity::kNone : it->second);
    }
  };
  if (sentence.task == Task::kTabsa) {
    if (sentence.targets.empty()) {
      throw ValidationError("sentence " + sentence.id +
                            ": targeted sentence has no targets");
    }
    for (const auto& t : sentence.targets) fill(t.index);
  } else {
    fill(std::nullopt);
  }
  return out;
}

std::vector<LabeledSentence> grid_expand(
    std::span<const LabeledSentence> sentences, const AspectSet& aspects) {
  std::vector<LabeledSentence> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(grid_expand(s, aspects));
  return out;
}

bool is_grid_expanded(const LabeledSentence& sentence,
                      const AspectSet& aspects) {
  std::size_t rows =
      sentence.task == Task::kTabsa ? sentence.targets.size() : 1;
  if (sentence.task == Task::kTabsa && rows == 0) return false;
  if (sentence.gold.size() != rows * aspects.size()) return false;
  for (const auto& a : aspects.names()) {
    if (sentence.task == Task::kTabsa) {
      for (const auto& t : sentence.targets) {
        if (!sentence.gold.contains(GoldKey{t.index, a})) return false;
      }
    } else if (!sentence.gold.contains(GoldKey{std::nullopt, a})) {
      return false;
    }
  }
  return true;
}

std::string to_jsonl(std::span<const LabeledSentence> sentences) {
  std::string out;
  for (const auto& s : sentences) {
    ordered_json j;
    j["id"] = s.id;
    j["task"] = task_name(s.task);
    j["raw_text"] = s.raw_text;
    j["norm_tokens"] = s.norm_tokens;
    j["targets"] = ordered_json::array();
    for (const auto& t : s.targets) {
      j["targets"].push_back({{"index", t.index}, {"surface", t.surface}});
    }
    j["gold"] = ordered_json::array();
    for (const auto& [key, p] : s.gold) {
      ordered_json g;
      g["target"] = key.target ? ordered_json(*key.target) : ordered_json(nullptr);
      g["aspect"] = key.aspect;
      g["polarity"] = polarity_name(p);
      j["gold"].push_back(std::move(g));
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<LabeledSentence> from_jsonl(std::string_view text) {
  std::vector<LabeledSentence> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      LabeledSentence s;
      s.id = j.at("id").get<std::string>();
      auto task = parse_task(j.at("task").get<std::string>());
      if (!task) throw ParseError("unknown task");
      s.task = *task;
      s.raw_text = j.at("raw_text").get<std::string>();
      s.norm_tokens = j.at("norm_tokens").get<std::vector<std::string>>();
      for (const auto& t : j.at("targets")) {
        s.targets.push_back(
            {t.at("index").get<int>(), t.at("surface").get<std::string>()});
      }
      for (const auto& g : j.at("gold")) {
        GoldKey key;
        if (!g.at("target").is_null()) key.target = g.at("target").get<int>();
        key.aspect = g.at("aspect").get<std::string>();
        auto p = parse_polarity(g.at("polarity").get<std::string>());
        if (!p) throw ParseError("unknown polarity");
        s.gold.emplace(std::move(key), *p);
      }
      out.push_back(std::move(s));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("canonical JSON line " + std::to_string(line_no) + ": " +
                       e.what());
    } catch (const ParseError& e) {
      throw ParseError("canonical JSON line " + std::to_string(line_no) + ": " +
                       e.what());
    }
  }
  return out;
}

GoldGrid make_gold_grid(std::span<const LabeledSentence> expanded) {
  GoldGrid grid;
  for (const auto& s : expanded) {
    for (const auto& [key, p] : s.gold) {
      grid.emplace(GroupKey{s.id, key.target, key.aspect}, p);
    }
  }
  return grid;
}

}  // namespace absa
