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

#include "absa/decode.h"

#include <algorithm>
#include <cstdio>
#include <set>

#include "tsv.h"

namespace absa {
namespace {

const ProbDist& lookup(const DistMap& dists, const std::string& uid) {
  auto it = dists.find(uid);
  if (it == dists.end()) throw ValidationError("no score for uid " + uid);
  return it->second;
}

// Strictly-greater scan in canonical order gives the canonical tie break.
Polarity argmax(const std::vector<std::pair<Polarity, double>>& values) {
  Polarity best = values.front().first;
  double best_score = values.front().second;
  for (const auto& [p, v] : values) {
    if (v > best_score) {
      best = p;
      best_score = v;
    }
  }
  return best;
}

std::optional<double> pairwise_sentiment(const GroupScores& s) {
  auto pos = s.get(Polarity::kPositive);
  auto neg = s.get(Polarity::kNegative);
  if (!pos || !neg) return std::nullopt;
  double denom = *pos + *neg;
  if (!(denom > 0.0)) return std::nullopt;
  return *pos / denom;
}

std::string format_score(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::optional<double> GroupScores::get(Polarity p) const {
  for (const auto& [q, v] : values) {
    if (q == p) return v;
  }
  return std::nullopt;
}

DistMap index_by_uid(std::vector<ProbDist> dists) {
  DistMap out;
  for (auto& d : dists) {
    std::string uid = d.uid;
    if (!out.emplace(uid, std::move(d)).second) {
      throw ParseError("duplicate score for uid " + uid);
    }
  }
  return out;
}

std::vector<GridPrediction> decode_m(const DistMap& dists,
                                     std::span<const PairExample> examples) {
  std::vector<GridPrediction> out;
  std::set<GroupKey> seen;
  for (const auto& ex : examples) {
    if (is_binary_method(ex.method)) {
      throw ContractViolation("decode_m received binary example " + ex.uid);
    }
    if (!seen.insert(ex.group).second) {
      throw ValidationError("group " + group_id(ex.group) + " appears twice");
    }
    const ProbDist& d = lookup(dists, ex.uid);
    GridPrediction pred;
    pred.group = ex.group;
    pred.scores.matching = false;
    for (Polarity p : task_polarities(ex.task())) {
      if (!d.has(polarity_name(p))) {
        throw ValidationError("score for " + ex.uid + " lacks label '" +
                              std::string(polarity_name(p)) + "'");
      }
      pred.scores.values.emplace_back(p, d.at(polarity_name(p)));
    }
    pred.label = argmax(pred.scores.values);
    pred.presence_score = 1.0 - *pred.scores.get(Polarity::kNone);
    pred.sentiment_score = pairwise_sentiment(pred.scores);
    out.push_back(std::move(pred));
  }
  return out;
}

std::vector<GridPrediction> decode_b(const DistMap& dists,
                                     std::span<const PairExample> examples) {
  // Groups in order of first appearance.
  std::vector<GroupKey> order;
  std::map<GroupKey, std::vector<const PairExample*>> members;
  for (const auto& ex : examples) {
    if (!is_binary_method(ex.method) || !ex.candidate) {
      throw ContractViolation("decode_b received non-binary example " + ex.uid);
    }
    auto [it, inserted] = members.try_emplace(ex.group);
    if (inserted) order.push_back(ex.group);
    it->second.push_back(&ex);
  }
  std::vector<GridPrediction> out;
  out.reserve(order.size());
  for (const auto& group : order) {
    const auto& list = members[group];
    const Task task = group.target ? Task::kTabsa : Task::kAbsa;
    std::map<Polarity, double> yes;
    for (const PairExample* ex : list) {
      if (!polarity_allowed(task, *ex->candidate)) {
        throw ValidationError("group " + group_id(group) + ": candidate " +
                              std::string(polarity_name(*ex->candidate)) +
                              " outside the task polarity set");
      }
      const ProbDist& d = lookup(dists, ex->uid);
      if (!yes.emplace(*ex->candidate, d.at(kYes)).second) {
        throw ValidationError("group " + group_id(group) + ": duplicate candidate " +
                              std::string(polarity_name(*ex->candidate)));
      }
    }
    if (yes.size() != task_polarities(task).size()) {
      throw ValidationError("group " + group_id(group) + ": incomplete candidate set");
    }
    GridPrediction pred;
    pred.group = group;
    pred.scores.matching = true;
    for (Polarity p : task_polarities(task)) pred.scores.values.emplace_back(p, yes.at(p));
    pred.label = argmax(pred.scores.values);
    double presence = 0.0;
    for (const auto& [p, v] : pred.scores.values) {
      if (p != Polarity::kNone) presence = std::max(presence, v);
    }
    pred.presence_score = presence;
    pred.sentiment_score = pairwise_sentiment(pred.scores);
    out.push_back(std::move(pred));
  }
  return out;
}

std::vector<GridPrediction> decode(const DistMap& dists,
                                   std::span<const PairExample> examples) {
  if (examples.empty()) return {};
  return is_binary_method(examples.front().method) ? decode_b(dists, examples)
                                                   : decode_m(dists, examples);
}

Polarity restrict_polarity(const GroupScores& scores,
                           std::span<const Polarity> allowed) {
  if (allowed.empty()) throw ContractViolation("allowed polarity set is empty");
  std::vector<std::pair<Polarity, double>> masked;
  for (Polarity p : kAllPolarities) {
    if (std::find(allowed.begin(), allowed.end(), p) == allowed.end()) continue;
    if (p == Polarity::kNone) {
      throw ContractViolation("none may not be an allowed polarity");
    }
    auto v = scores.get(p);
    if (!v) {
      throw ValidationError("group lacks a score for allowed polarity " +
                            std::string(polarity_name(p)));
    }
    masked.emplace_back(p, *v);
  }
  if (!scores.matching) {
    double sum = 0.0;
    for (const auto& [p, v] : masked) sum += v;
    if (sum > 0.0) {
      for (auto& [p, v] : masked) v /= sum;
    }
  }
  return argmax(masked);
}

std::string write_predictions_tsv(std::span<const GridPrediction> predictions) {
  std::string out;
  const std::string_view header[] = {"group_id", "label", "presence_score",
                                     "sentiment_score"};
  tsv::append_row(out, header);
  for (const auto& p : predictions) {
    const std::string gid = group_id(p.group);
    const std::string presence = format_score(p.presence_score);
    const std::string sentiment = p.sentiment_score ? format_score(*p.sentiment_score) : "";
    const std::string_view row[] = {gid, polarity_name(p.label), presence, sentiment};
    tsv::append_row(out, row);
  }
  return out;
}

}  // namespace absa
