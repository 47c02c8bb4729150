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

// Acceptance suite: one PASS / FAIL / SKIP line per criterion. Exit status is
// non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "absa/harness.h"
#include "json.hpp"
#include "test_util.h"

namespace absa {
namespace {

using testing::fixture_path;
using testing::read_fixture;

enum class Outcome { kPass, kFail, kSkip };

struct Result {
  Outcome outcome;
  std::string detail;
};

Result pass(std::string d) { return {Outcome::kPass, std::move(d)}; }
Result fail(std::string d) { return {Outcome::kFail, std::move(d)}; }
Result skip(std::string d) { return {Outcome::kSkip, std::move(d)}; }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Directory holding sentihood-{train,dev,test}.json, if any.
std::optional<std::filesystem::path> sentihood_dir() {
  for (const char* env : {"SENTIHOOD_DIR", kDataDirEnv}) {
    const char* v = std::getenv(env);
    if (v == nullptr || *v == '\0') continue;
    std::filesystem::path dir(v);
    bool all = true;
    for (const char* split : {"train", "dev", "test"}) {
      all &= std::filesystem::exists(dir / ("sentihood-" + std::string(split) + ".json"));
    }
    if (all) return dir;
  }
  return std::nullopt;
}

// Independent count of distinct LOCATION<k> mentions per record.
std::vector<std::size_t> independent_target_counts(const std::string& text) {
  static const std::regex loc(R"(LOCATION([1-9][0-9]*))");
  std::vector<std::size_t> out;
  for (const auto& rec : nlohmann::json::parse(text)) {
    std::string t = rec.at("text").get<std::string>();
    std::set<std::string> seen;
    for (auto it = std::sregex_iterator(t.begin(), t.end(), loc); it != std::sregex_iterator();
         ++it) {
      seen.insert((*it)[1].str());
    }
    out.push_back(seen.size());
  }
  return out;
}

Result criterion1() {
  auto two_targets = grid_expand(parse_sentihood(read_fixture("two_targets.json")), AspectSet::sentihood());
  std::ostringstream d;
  for (Method m : {Method::kQaM, Method::kNliM, Method::kQaB, Method::kNliB}) {
    auto pairs = build_pairs(two_targets, m, AspectSet::sentihood());
    std::size_t expected = is_binary_method(m) ? 24 : 8;
    if (pairs.size() != expected) {
      return fail(std::string(method_name(m)) + " emitted " + std::to_string(pairs.size()));
    }
    if (is_binary_method(m)) {
      std::map<GroupKey, int> yes;
      for (const auto& p : pairs) yes[p.group] += p.gold == kYes;
      for (const auto& [g, n] : yes) {
        if (n != 1) return fail(group_id(g) + " has " + std::to_string(n) + " yes rows");
      }
      if (yes.size() != 8) return fail("expected 8 binary groups");
    }
  }
  d << "two-target fixture M=8 B=24 one yes per group";

  auto dir = sentihood_dir();
  if (!dir) {
    d << "; full-data count skipped (dataset absent)";
    return pass(d.str());
  }
  std::size_t ours = 0, theirs = 0;
  for (const char* split : {"train", "dev", "test"}) {
    std::string text = read_file((*dir / ("sentihood-" + std::string(split) + ".json")).string());
    for (auto n : independent_target_counts(text)) theirs += n * 4;
    auto expanded = grid_expand(parse_sentihood(text), AspectSet::sentihood());
    ours += build_pairs(expanded, Method::kNliM, AspectSet::sentihood()).size();
  }
  d << "; full data M-count " << ours << " vs independent " << theirs;
  return ours == theirs ? pass(d.str()) : fail(d.str());
}

Result criterion2() {
  const std::pair<std::string, std::string> want[] = {
      {make_auxiliary(Method::kQaM, 1, "safety", std::nullopt),
       "what do you think of the safety of location - 1 ?"},
      {make_auxiliary(Method::kNliM, 1, "safety", std::nullopt), "location - 1 - safety"},
      {make_auxiliary(Method::kQaB, 1, "safety", Polarity::kPositive),
       "the polarity of the aspect safety of location - 1 is positive"},
      {make_auxiliary(Method::kNliB, 1, "safety", Polarity::kPositive),
       "location - 1 - safety - positive"},
  };
  for (const auto& [got, expected] : want) {
    if (got != expected) return fail("got \"" + got + "\", want \"" + expected + "\"");
  }
  return pass("4 of 4 strings identical");
}

Result criterion3() {
  std::mt19937_64 rng(20260);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<PairExample> examples;
  std::vector<ProbDist> dists;
  std::vector<Polarity> expected;
  std::size_t ties = 0;
  for (int i = 0; i < 1000; ++i) {
    Task task = i % 2 ? Task::kAbsa : Task::kTabsa;
    GroupKey g{"g" + std::to_string(i), task == Task::kTabsa ? std::optional<int>(1 + i % 3)
                                                             : std::nullopt,
               "price"};
    std::vector<std::pair<Polarity, double>> yes;
    for (Polarity p : task_polarities(task)) {
      double v = i % 4 == 0 ? std::round(u(rng) * 3) / 3 : u(rng);
      if (i % 10 == 1) v = 0.5;
      yes.emplace_back(p, v);
    }
    std::shuffle(yes.begin(), yes.end(), rng);
    double best = 0;
    for (auto& [p, v] : yes) best = std::max(best, v);
    std::size_t at_best = 0;
    for (auto& [p, v] : yes) at_best += v == best;
    ties += at_best > 1;
    for (const auto& [p, v] : yes) {
      PairExample e{make_uid(g, Method::kNliB, p), g, Method::kNliB, "s", "a", p, "no"};
      dists.push_back(ProbDist{e.uid, {"yes", "no"}, {v, 1.0 - v}});
      examples.push_back(e);
    }
    expected.push_back(testing::brute_force_decode_b(yes));
  }
  auto got = decode_b(index_by_uid(dists), examples);
  if (got.size() != expected.size()) return fail("group count mismatch");
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < got.size(); ++i) mismatches += got[i].label != expected[i];
  std::string d = "1000 groups, " + std::to_string(ties) + " with ties, " +
                  std::to_string(mismatches) + " mismatches";
  return mismatches == 0 ? pass(d) : fail(d);
}

Result criterion4() {
  struct Fixture {
    Task task;
    const char* file;
  };
  const Fixture fixtures[] = {{Task::kTabsa, "two_targets.json"},
                              {Task::kTabsa, "sentihood_small.json"},
                              {Task::kAbsa, "semeval_two.xml"},
                              {Task::kAbsa, "restaurants_three.xml"},
                              {Task::kAbsa, "semeval_small.xml"}};
  std::size_t checked = 0;
  std::size_t fully_supported = 0;
  for (const auto& f : fixtures) {
    auto aspects = default_aspects(f.task);
    auto expanded = grid_expand(load_corpus(f.task, fixture_path(f.file)), aspects);
    for (Method m : {Method::kQaM, Method::kNliM, Method::kQaB, Method::kNliB, Method::kSingle}) {
      auto examples = build_examples(expanded, m, aspects);
      std::vector<ProbDist> dists;
      for (const auto& e : examples) dists.push_back(oracle_dist(e));
      auto r = evaluate_scores(f.task, m, expanded, aspects, dists, "oracle");
      std::vector<std::pair<const char*, std::optional<double>>> values;
      if (f.task == Task::kTabsa) {
        values = {{"strict acc", r.aspect_strict_acc}, {"macro F1", r.aspect_macro_f1},
                  {"aspect AUC", r.aspect_macro_auc}, {"sentiment acc", r.sentiment_acc},
                  {"sentiment AUC", r.sentiment_macro_auc}};
      } else {
        values = {{"P", r.detection_precision}, {"R", r.detection_recall},
                  {"F1", r.detection_f1}, {"4-way", r.polarity_acc_4way},
                  {"3-way", r.polarity_acc_3way}, {"binary", r.polarity_acc_binary}};
      }
      if (f.task == Task::kTabsa) {
        // Aspects without gold support score 0 by the 0/0 convention and are
        // flagged; every supported aspect must be perfect.
        auto f1 = aspect_macro_f1(make_gold_grid(expanded),
                                  decode(index_by_uid(dists), examples), aspects);
        std::size_t perfect = 0;
        for (const auto& [a, v] : f1.per_aspect) {
          bool flagged = std::find(f1.zero_division_aspects.begin(),
                                   f1.zero_division_aspects.end(),
                                   a) != f1.zero_division_aspects.end();
          if (!flagged && v != 1.0) return fail(std::string(f.file) + " F1(" + a + ") = " + fmt(v));
          perfect += !flagged;
        }
        double expected = static_cast<double>(perfect) / static_cast<double>(aspects.size());
        if (*r.aspect_macro_f1 != expected) {
          return fail(std::string(f.file) + " macro F1 " + fmt(*r.aspect_macro_f1));
        }
        if (perfect == aspects.size()) ++fully_supported;
        values.erase(values.begin() + 1);
      }
      for (const auto& [what, v] : values) {
        // Undefined values (a single gold class) are skipped by definition.
        if (v && *v != 1.0) {
          return fail(std::string(f.file) + " " + std::string(method_name(m)) + " " + what +
                      " = " + fmt(*v));
        }
        checked += v.has_value();
      }
      if (std::string(f.file) == "sentihood_small.json" &&
          !(r.aspect_macro_auc && r.sentiment_macro_auc)) {
        return fail("AUC bundle undefined on sentihood_small.json");
      }
    }
  }

  // Constant scores: every example gets the uniform distribution.
  auto aspects = AspectSet::sentihood();
  auto expanded = grid_expand(parse_sentihood(read_fixture("sentihood_small.json")), aspects);
  for (Method m : {Method::kNliM, Method::kQaB}) {
    std::vector<ProbDist> dists;
    for (const auto& e : build_examples(expanded, m, aspects)) {
      auto d = oracle_dist(e);
      for (double& p : d.probs) p = 1.0 / static_cast<double>(d.probs.size());
      dists.push_back(d);
    }
    auto r = evaluate_scores(Task::kTabsa, m, expanded, aspects, dists, "constant");
    if (r.aspect_macro_auc != 0.5 || r.sentiment_macro_auc != 0.5) {
      return fail("constant scores gave AUC " + fmt(r.aspect_macro_auc.value_or(-1)) + " / " +
                  fmt(r.sentiment_macro_auc.value_or(-1)));
    }
  }
  if (fully_supported == 0) return fail("no fixture exercises macro F1 = 1.0");
  return pass(std::to_string(checked) + " defined metric values equal 1.0, macro F1 1.0 on " +
              std::to_string(fully_supported) +
              " fully supported runs (unsupported aspects flagged); constant AUC 0.5");
}

Result criterion5() {
  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 2 + rng() % 49;
    std::vector<ScoredInstance> s;
    std::vector<double> pos, neg;
    for (std::size_t i = 0; i < n; ++i) {
      double score = trial % 2 ? static_cast<double>(rng() % 7) / 7.0
                               : std::uniform_real_distribution<double>(0, 1)(rng);
      bool positive = i == 0 || (i != 1 && rng() % 2 == 0);
      s.push_back({score, positive});
      (positive ? pos : neg).push_back(score);
    }
    auto auc = roc_auc(s);
    double oracle = testing::brute_force_auc(pos, neg);
    if (!auc || *auc != oracle) {
      return fail("trial " + std::to_string(trial) + ": " + fmt(auc.value_or(-1)) + " vs " +
                  fmt(oracle));
    }
  }
  return pass("200 of 200 exact");
}

Result criterion6() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  auto aspects = AspectSet::sentihood();
  auto expanded = grid_expand(parse_sentihood(read_fixture("sentihood_small.json")), aspects);
  double worst = 0.0;
  const std::uint32_t dim = 1024;
  for (Method m : {Method::kQaM, Method::kNliB}) {
    auto pairs = build_pairs(expanded, m, aspects);
    auto labels = common_label_set(pairs);
    for (int trial = 0; trial < 10; ++trial) {
      auto model = ModelParams::zeros(labels, dim);
      for (double& w : model.weights) w = u(rng);
      for (double& b : model.bias) b = u(rng);
      std::vector<TrainingExample> batch;
      for (int i = 0; i < 5; ++i) {
        const auto& p = pairs[rng() % pairs.size()];
        std::size_t y = std::find(labels.begin(), labels.end(), p.gold) - labels.begin();
        batch.push_back({encode_features(p, dim), y});
      }
      auto g = cross_entropy_gradient(model, batch);
      const double h = 1e-5;
      for (const auto& [col, grads] : g.columns) {
        for (std::size_t k = 0; k < labels.size(); ++k) {
          double saved = model.weight(k, col);
          model.weight(k, col) = saved + h;
          double up = mean_cross_entropy(model, batch);
          model.weight(k, col) = saved - h;
          double down = mean_cross_entropy(model, batch);
          model.weight(k, col) = saved;
          double numeric = (up - down) / (2 * h);
          double denom = std::max(1e-8, std::abs(numeric) + std::abs(grads[k]));
          worst = std::max(worst, std::abs(numeric - grads[k]) / denom);
        }
      }
    }
  }
  std::string d = "max relative error " + fmt(worst);
  return worst <= 1e-4 ? pass(d) : fail(d);
}

Result criterion7() {
  auto start = std::chrono::steady_clock::now();
  auto aspects = AspectSet::sentihood();
  auto expanded = grid_expand(parse_sentihood(testing::synthetic_separable_json()), aspects);
  TrainConfig cfg;
  cfg.epochs = 20;
  std::ostringstream d;
  for (Method m : {Method::kQaM, Method::kNliM}) {
    auto pairs = build_pairs(expanded, m, aspects);
    auto labels = common_label_set(pairs);
    std::vector<FeatureVector> xs;
    std::vector<std::size_t> ys;
    for (const auto& p : pairs) {
      xs.push_back(encode_features(p, cfg.dim()));
      ys.push_back(std::find(labels.begin(), labels.end(), p.gold) - labels.begin());
    }
    if (!testing::perceptron_separates(xs, ys, labels.size())) {
      return fail(std::string(method_name(m)) + " corpus not certified separable");
    }
    auto a = train_softmax(pairs, cfg);
    auto b = train_softmax(pairs, cfg);
    if (!(a == b)) return fail(std::string(method_name(m)) + " training not bit-identical");
    std::size_t correct = 0;
    for (const auto& p : pairs) {
      auto dist = predict_proba(a, p);
      std::size_t best = 0;
      for (std::size_t k = 1; k < dist.probs.size(); ++k) {
        if (dist.probs[k] > dist.probs[best]) best = k;
      }
      correct += dist.labels[best] == p.gold;
    }
    double acc = static_cast<double>(correct) / static_cast<double>(pairs.size());
    d << method_name(m) << " acc " << fmt(acc) << " on " << pairs.size() << "; ";
    if (acc != 1.0) return fail(d.str());
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  d << "deterministic; " << fmt(secs) << " s";
  return secs < 30.0 ? pass(d.str()) : fail(d.str());
}

Result criterion8() {
  auto dir = sentihood_dir();
  if (!dir) return skip("SentiHood files not found under $SENTIHOOD_DIR or $ABSA_DATA_DIR");
  std::size_t total = 0, single = 0;
  for (const char* split : {"train", "dev", "test"}) {
    auto s = parse_sentihood(
        read_file((*dir / ("sentihood-" + std::string(split) + ".json")).string()));
    total += s.size();
    for (const auto& x : s) single += x.targets.size() == 1;
  }
  std::string d = std::to_string(total) + " sentences, " + std::to_string(single) +
                  " single-target";
  return total == 5215 && single == 3862 ? pass(d) : fail(d);
}

Result criterion9() {
  namespace fs = std::filesystem;
  struct Run {
    const char* task;
    const char* method;
    const char* fixture;
  };
  const Run runs[] = {{"sentihood", "nli_m", "sentihood_small.json"},
                      {"sentihood", "qa_b", "sentihood_small.json"},
                      {"sentihood", "single", "sentihood_small.json"},
                      {"semeval", "nli_b", "semeval_small.xml"}};
  const char* artifacts[] = {"pairs.tsv", "model.json", "scores.tsv", "report.json", "pred.tsv"};
  std::size_t compared = 0;
  for (const auto& r : runs) {
    testing::TempDir first("e2e_a"), second("e2e_b");
    for (auto* dir : {&first, &second}) {
      auto f = [&](const char* n) { return dir->file(n); };
      std::vector<std::vector<std::string>> steps = {
          {"convert", "--task", r.task, "--method", r.method, "--input",
           fixture_path(r.fixture), "--output", f("pairs.tsv")},
          {"train", "--pairs", f("pairs.tsv"), "--model", f("model.json"), "--hash-bits", "14"},
          {"predict", "--model", f("model.json"), "--pairs", f("pairs.tsv"), "--output",
           f("scores.tsv")},
          {"eval", "--task", r.task, "--method", r.method, "--input", fixture_path(r.fixture),
           "--scores", f("scores.tsv"), "--output", f("report.json"), "--predictions",
           f("pred.tsv")}};
      for (const auto& args : steps) {
        std::ostringstream out, err;
        if (run_cli(args, out, err) != 0) return fail(args[0] + ": " + err.str());
      }
    }
    for (const char* a : artifacts) {
      if (read_file(first.file(a)) != read_file(second.file(a))) {
        return fail(std::string(r.method) + " " + a + " differs");
      }
      ++compared;
    }
  }
  return pass(std::to_string(compared) + " artifact pairs byte-identical");
}

}  // namespace
}  // namespace absa

int main() {
  using absa::Outcome;
  using absa::Result;
  const std::pair<const char*, std::function<Result()>> criteria[] = {
      {"pair-generation counts", absa::criterion1},
      {"template fidelity", absa::criterion2},
      {"decoding oracle equivalence", absa::criterion3},
      {"metric oracle closure", absa::criterion4},
      {"AUC exactness", absa::criterion5},
      {"gradient check", absa::criterion6},
      {"trainability", absa::criterion7},
      {"dataset parse counts", absa::criterion8},
      {"end-to-end determinism", absa::criterion9},
  };
  const double limits[] = {5.0, 0, 0, 0, 0, 0, 30.0, 0, 0};
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = run();
    } catch (const std::exception& e) {
      r = {Outcome::kFail, std::string("exception: ") + e.what()};
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limits[index] > 0 && secs >= limits[index] && r.outcome == Outcome::kPass) {
      r = {Outcome::kFail, r.detail + "; took " + absa::fmt(secs) + " s"};
    }
    const char* tag = r.outcome == Outcome::kPass ? "PASS" : r.outcome == Outcome::kFail ? "FAIL"
                                                                                        : "SKIP";
    std::cout << tag << "  criterion " << ++index << " " << name << ": " << r.detail << " ("
              << absa::fmt(secs) << " s)\n";
    failures += r.outcome == Outcome::kFail;
  }
  std::cout << (failures == 0 ? "all criteria passed or skipped" : "some criteria failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
