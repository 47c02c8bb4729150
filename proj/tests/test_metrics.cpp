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

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "absa/metrics.h"
#include "doctest.h"
#include "test_util.h"

namespace absa {
namespace {

using P = Polarity;

// Prediction carrying one-hot class probabilities for `label`.
GridPrediction predict(const GroupKey& g, Polarity label, Task task) {
  GridPrediction p;
  p.group = g;
  p.label = label;
  p.presence_score = label == P::kNone ? 0.0 : 1.0;
  if (label == P::kPositive) p.sentiment_score = 1.0;
  if (label == P::kNegative) p.sentiment_score = 0.0;
  if (label != P::kPositive && label != P::kNegative) p.sentiment_score = 0.5;
  for (P q : task_polarities(task)) p.scores.values.emplace_back(q, q == label ? 1.0 : 0.0);
  return p;
}

GroupKey tk(const std::string& s, int t, const std::string& a) { return {s, t, a}; }
GroupKey ak(const std::string& s, const std::string& a) { return {s, std::nullopt, a}; }

std::vector<GridPrediction> oracle(const GoldGrid& gold, Task task) {
  std::vector<GridPrediction> out;
  for (const auto& [k, v] : gold) out.push_back(predict(k, v, task));
  return out;
}

TEST_CASE("strict_aspect_accuracy") {
  AspectSet aspects = AspectSet::sentihood();
  GoldGrid gold;
  for (const auto& a : aspects.names()) {
    gold[tk("A", 1, a)] = a == "general" ? P::kPositive : P::kNone;
    gold[tk("B", 1, a)] = (a == "price" || a == "safety") ? P::kNegative : P::kNone;
  }
  CHECK(strict_aspect_accuracy(gold, oracle(gold, Task::kTabsa)) == 1.0);

  auto pred = oracle(gold, Task::kTabsa);
  for (auto& p : pred) {
    if (p.group == tk("B", 1, "safety")) p = predict(p.group, P::kNone, Task::kTabsa);
  }
  CHECK(strict_aspect_accuracy(gold, pred) == 0.5);

  GoldGrid empty_unit;
  std::vector<GridPrediction> all_none;
  for (const auto& a : aspects.names()) {
    empty_unit[tk("C", 2, a)] = P::kNone;
    all_none.push_back(predict(tk("C", 2, a), P::kNone, Task::kTabsa));
  }
  CHECK(strict_aspect_accuracy(empty_unit, all_none) == 1.0);

  pred.pop_back();
  CHECK_THROWS_AS(strict_aspect_accuracy(gold, pred), ValidationError);
}

TEST_CASE("aspect_macro_f1") {
  AspectSet aspects({"a1", "a2", "a3", "a4"});
  GoldGrid gold;
  std::vector<GridPrediction> pred;
  // Units u1, u2. a1: TP on u1, FP on u2. Others perfect with support.
  for (const auto& a : aspects.names()) {
    gold[tk("u1", 1, a)] = P::kPositive;
    gold[tk("u2", 1, a)] = a == "a1" ? P::kNone : P::kNegative;
    pred.push_back(predict(tk("u1", 1, a), P::kPositive, Task::kTabsa));
    pred.push_back(predict(tk("u2", 1, a), P::kNegative, Task::kTabsa));
  }
  auto f1 = aspect_macro_f1(gold, pred, aspects);
  CHECK(f1.macro_f1 == doctest::Approx((3.0 + 2.0 / 3.0) / 4.0).epsilon(1e-15));
  CHECK(f1.zero_division_aspects.empty());
  CHECK(aspect_macro_f1(gold, oracle(gold, Task::kTabsa), aspects).macro_f1 == 1.0);

  // a4 never gold and never predicted.
  GoldGrid g2;
  for (const auto& a : aspects.names()) g2[tk("u", 1, a)] = a == "a4" ? P::kNone : P::kPositive;
  auto r = aspect_macro_f1(g2, oracle(g2, Task::kTabsa), aspects);
  CHECK(r.macro_f1 == 0.75);
  CHECK(r.zero_division_aspects == std::vector<std::string>{"a4"});
}

TEST_CASE("roc_auc examples") {
  std::vector<ScoredInstance> s = {{0.9, true}, {0.4, true}, {0.8, false}, {0.1, false}};
  CHECK(*roc_auc(s) == 0.75);
  std::vector<ScoredInstance> tied = {{0.3, true}, {0.3, false}, {0.3, true}};
  CHECK(*roc_auc(tied) == 0.5);
  std::vector<ScoredInstance> sep = {{0.9, true}, {0.8, true}, {0.1, false}};
  CHECK(*roc_auc(sep) == 1.0);
  std::vector<ScoredInstance> one_class = {{0.9, true}, {0.8, true}};
  CHECK_FALSE(roc_auc(one_class).has_value());
  CHECK_FALSE(roc_auc(std::vector<ScoredInstance>{}).has_value());
  std::vector<ScoredInstance> nan = {{std::nan(""), true}, {0.1, false}};
  CHECK_THROWS_AS(roc_auc(nan), ContractViolation);
}

TEST_CASE("roc_auc is exact against the pairwise count and symmetric") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 2 + rng() % 49;
    std::vector<ScoredInstance> s;
    std::vector<double> pos, neg;
    for (std::size_t i = 0; i < n; ++i) {
      double score = static_cast<double>(rng() % 10) / 10.0;
      bool positive = i == 0 ? true : i == 1 ? false : (rng() % 2 == 0);
      s.push_back({score, positive});
      (positive ? pos : neg).push_back(score);
    }
    auto auc = roc_auc(s);
    REQUIRE(auc.has_value());
    CHECK(*auc == testing::brute_force_auc(pos, neg));

    std::vector<ScoredInstance> flipped;
    for (const auto& x : s) flipped.push_back({-x.score, !x.positive});
    CHECK(*roc_auc(flipped) == *auc);

    auto shuffled = s;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(*roc_auc(shuffled) == *auc);
  }
}

TEST_CASE("sentihood_auc_bundle") {
  AspectSet aspects({"x", "y"});
  GoldGrid gold;
  std::vector<GridPrediction> pred;
  // Aspect x: positives 0.9, 0.4; negatives 0.8, 0.1 -> 0.75. Aspect y separable -> 1.0.
  const double xs[] = {0.9, 0.4, 0.8, 0.1};
  const double ys[] = {0.7, 0.6, 0.2, 0.3};
  for (int i = 0; i < 4; ++i) {
    std::string s = "s" + std::to_string(i);
    Polarity label = i < 2 ? P::kPositive : P::kNone;
    gold[tk(s, 1, "x")] = label;
    gold[tk(s, 1, "y")] = label;
    auto px = predict(tk(s, 1, "x"), label, Task::kTabsa);
    px.presence_score = xs[i];
    auto py = predict(tk(s, 1, "y"), label, Task::kTabsa);
    py.presence_score = ys[i];
    pred.push_back(px);
    pred.push_back(py);
  }
  auto b = sentihood_auc_bundle(gold, pred, aspects);
  CHECK(*b.aspect_macro_auc == 0.875);
  // Only positive sentiment present: both aspects skipped.
  CHECK_FALSE(b.sentiment_macro_auc.has_value());
  CHECK(b.sentiment_skipped == std::vector<std::string>{"x", "y"});

  // Constant scores.
  auto constant = pred;
  for (auto& p : constant) {
    p.presence_score = 0.5;
    p.sentiment_score = 0.5;
  }
  gold[tk("s0", 1, "x")] = P::kNegative;
  gold[tk("s0", 1, "y")] = P::kNegative;
  auto c = sentihood_auc_bundle(gold, constant, aspects);
  CHECK(*c.aspect_macro_auc == 0.5);
  CHECK(*c.sentiment_macro_auc == 0.5);
  CHECK(c.aspect_skipped.empty());

  constant[0].sentiment_score.reset();
  CHECK_THROWS_AS(sentihood_auc_bundle(gold, constant, aspects), ValidationError);
}

TEST_CASE("sentiment_accuracy") {
  GoldGrid gold = {{tk("a", 1, "general"), P::kPositive},
                   {tk("b", 1, "general"), P::kPositive},
                   {tk("c", 1, "general"), P::kPositive},
                   {tk("d", 1, "general"), P::kNone}};
  std::vector<GridPrediction> pred = {predict(tk("a", 1, "general"), P::kPositive, Task::kTabsa),
                                      predict(tk("b", 1, "general"), P::kNegative, Task::kTabsa),
                                      predict(tk("c", 1, "general"), P::kPositive, Task::kTabsa),
                                      predict(tk("d", 1, "general"), P::kNegative, Task::kTabsa)};
  CHECK(*sentiment_accuracy(gold, pred) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(*sentiment_accuracy(gold, oracle(gold, Task::kTabsa)) == 1.0);
  GoldGrid nones = {{tk("d", 1, "general"), P::kNone}};
  CHECK_FALSE(sentiment_accuracy(nones, pred).has_value());
}

TEST_CASE("semeval_detection_prf") {
  AspectSet aspects = AspectSet::semeval();
  GoldGrid gold;
  for (const auto& a : aspects.names()) {
    gold[ak("s1", a)] = (a == "food" || a == "service") ? P::kPositive : P::kNone;
    gold[ak("s2", a)] = a == "price" ? P::kNegative : P::kNone;
  }
  std::vector<GridPrediction> pred;
  for (const auto& a : aspects.names()) {
    pred.push_back(predict(ak("s1", a), a == "food" ? P::kPositive : P::kNone, Task::kAbsa));
    pred.push_back(predict(ak("s2", a),
                           (a == "price" || a == "ambience") ? P::kNegative : P::kNone,
                           Task::kAbsa));
  }
  auto prf = semeval_detection_prf(gold, pred);
  CHECK(prf.precision == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(prf.recall == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(prf.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK_FALSE(prf.zero_division);

  auto perfect = semeval_detection_prf(gold, oracle(gold, Task::kAbsa));
  CHECK(perfect.precision == 1.0);
  CHECK(perfect.recall == 1.0);
  CHECK(perfect.f1 == 1.0);

  std::vector<GridPrediction> nothing;
  for (const auto& [k, v] : gold) nothing.push_back(predict(k, P::kNone, Task::kAbsa));
  auto none = semeval_detection_prf(gold, nothing);
  CHECK(none.precision == 0.0);
  CHECK(none.recall == 0.0);
  CHECK(none.f1 == 0.0);
  CHECK(none.zero_division);
}

TEST_CASE("semeval_detection_prf F1 is the harmonic mean") {
  std::mt19937_64 rng(4);
  auto aspects = AspectSet::semeval();
  for (int trial = 0; trial < 200; ++trial) {
    GoldGrid gold;
    std::vector<GridPrediction> pred;
    for (int s = 0; s < 6; ++s) {
      for (const auto& a : aspects.names()) {
        auto k = ak("s" + std::to_string(s), a);
        gold[k] = kAllPolarities[rng() % 5];
        pred.push_back(predict(k, kAllPolarities[rng() % 5], Task::kAbsa));
      }
    }
    auto prf = semeval_detection_prf(gold, pred);
    if (prf.precision + prf.recall > 0) {
      CHECK(prf.f1 == doctest::Approx(2 * prf.precision * prf.recall /
                                      (prf.precision + prf.recall)).epsilon(1e-12));
    }
    std::shuffle(pred.begin(), pred.end(), rng);
    auto again = semeval_detection_prf(gold, pred);
    CHECK(again.f1 == prf.f1);
    auto r1 = evaluate(Task::kAbsa, gold, pred, aspects, "x");
    std::reverse(pred.begin(), pred.end());
    CHECK(evaluate(Task::kAbsa, gold, pred, aspects, "x") == r1);
  }
}

TEST_CASE("semeval_polarity_accuracy") {
  GoldGrid gold = {{ak("a", "food"), P::kPositive},
                   {ak("b", "food"), P::kNegative},
                   {ak("c", "food"), P::kNeutral},
                   {ak("d", "food"), P::kConflict},
                   {ak("e", "food"), P::kNone}};
  std::vector<GridPrediction> pred = {
      predict(ak("a", "food"), P::kPositive, Task::kAbsa),
      predict(ak("b", "food"), P::kPositive, Task::kAbsa),
      predict(ak("c", "food"), P::kNeutral, Task::kAbsa),
      predict(ak("d", "food"), P::kConflict, Task::kAbsa),
      predict(ak("e", "food"), P::kNone, Task::kAbsa)};
  CHECK(*semeval_polarity_accuracy(gold, pred, PolarityMode::k4Way) == 0.75);
  CHECK(*semeval_polarity_accuracy(gold, pred, PolarityMode::k3Way) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(*semeval_polarity_accuracy(gold, pred, PolarityMode::kBinary) == 0.5);
  for (auto mode : {PolarityMode::k4Way, PolarityMode::k3Way, PolarityMode::kBinary}) {
    CHECK(*semeval_polarity_accuracy(gold, oracle(gold, Task::kAbsa), mode) == 1.0);
  }
  GoldGrid three = {{ak("a", "food"), P::kPositive},
                    {ak("d", "food"), P::kConflict},
                    {ak("b", "food"), P::kNegative}};
  CHECK(*semeval_polarity_accuracy(three, pred, PolarityMode::k3Way) == 0.5);
  GoldGrid only_none = {{ak("e", "food"), P::kNone}};
  CHECK_FALSE(semeval_polarity_accuracy(only_none, pred, PolarityMode::k4Way).has_value());
}

TEST_CASE("evaluate populates the task's fields only, and reports round-trip") {
  auto sh = grid_expand(parse_sentihood(testing::read_fixture("sentihood_small.json")),
                        AspectSet::sentihood());
  auto gold = make_gold_grid(sh);
  auto r = evaluate(Task::kTabsa, gold, oracle(gold, Task::kTabsa), AspectSet::sentihood(), "o");
  CHECK(r.aspect_strict_acc.has_value());
  CHECK(r.sentiment_macro_auc.has_value());
  CHECK_FALSE(r.detection_f1.has_value());
  CHECK_FALSE(r.polarity_acc_4way.has_value());
  CHECK(report_from_json(report_to_json(r)) == r);

  auto se = grid_expand(parse_semeval(testing::read_fixture("semeval_small.xml")),
                        AspectSet::semeval());
  auto sgold = make_gold_grid(se);
  auto s = evaluate(Task::kAbsa, sgold, oracle(sgold, Task::kAbsa), AspectSet::semeval(), "o");
  CHECK_FALSE(s.aspect_strict_acc.has_value());
  CHECK(*s.detection_f1 == 1.0);
  CHECK(report_from_json(report_to_json(s)) == s);

  auto json = report_to_json(s);
  CHECK(json.find("\"macro_over_aspects\"") != std::string::npos);
  CHECK_THROWS_AS(report_from_json("{"), ParseError);

  std::vector<EvaluationReport> both = {r, s};
  auto table = render_table(both);
  CHECK(table.find("100.0") != std::string::npos);
  CHECK(table.find("100.00") != std::string::npos);
}

TEST_CASE("metric values stay in [0, 1] on random grids") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto aspects = AspectSet::sentihood();
  for (int trial = 0; trial < 100; ++trial) {
    auto corpus = testing::random_corpus(rng, Task::kTabsa, aspects, 8);
    auto gold = make_gold_grid(corpus);
    std::vector<GridPrediction> pred;
    for (const auto& [k, v] : gold) {
      auto p = predict(k, task_polarities(Task::kTabsa)[rng() % 3], Task::kTabsa);
      p.presence_score = u(rng);
      p.sentiment_score = u(rng);
      pred.push_back(p);
    }
    auto r = evaluate(Task::kTabsa, gold, pred, aspects, "r");
    for (auto v : {r.aspect_strict_acc, r.aspect_macro_f1, r.aspect_macro_auc, r.sentiment_acc,
                   r.sentiment_macro_auc}) {
      if (v) {
        CHECK(*v >= 0.0);
        CHECK(*v <= 1.0);
      }
    }
  }
}

}  // namespace
}  // namespace absa
