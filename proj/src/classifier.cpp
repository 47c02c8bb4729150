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

#include "absa/classifier.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>

#include "json.hpp"
#include "tsv.h"

namespace absa {
namespace {

constexpr std::string_view kModelFormat = "absa-pair-model";
constexpr int kModelVersion = 1;

void add_segment(std::string_view sentence, std::string_view tag,
                 std::uint32_t mask, std::map<std::uint32_t, double>& acc) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < sentence.size()) {
    while (pos < sentence.size() && (sentence[pos] == ' ' || sentence[pos] == '\t')) ++pos;
    std::size_t start = pos;
    while (pos < sentence.size() && sentence[pos] != ' ' && sentence[pos] != '\t') ++pos;
    if (pos > start) tokens.push_back(sentence.substr(start, pos - start));
  }
  std::string feature;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    feature.assign(tag);
    feature += tokens[i];
    acc[static_cast<std::uint32_t>(fnv1a64(feature) & mask)] += 1.0;
    if (i > 0) {
      feature.assign(tag);
      feature += tokens[i - 1];
      feature += ' ';
      feature += tokens[i];
      acc[static_cast<std::uint32_t>(fnv1a64(feature) & mask)] += 1.0;
    }
  }
}

// Uniform draw in [0, n) without modulo bias; mt19937_64 output is fixed by
// the standard, so the shuffle is reproducible across platforms.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

void shuffle(std::vector<std::size_t>& order, std::mt19937_64& rng) {
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[bounded(rng, i)]);
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

FeatureVector encode_features(std::string_view sentence1,
                              std::string_view sentence2, std::uint32_t dim) {
  if (!is_power_of_two(dim)) {
    throw ContractViolation("hash dimension must be a power of two");
  }
  std::map<std::uint32_t, double> acc;
  add_segment(sentence1, "A:", dim - 1, acc);
  add_segment(sentence2, "B:", dim - 1, acc);
  FeatureVector fv;
  fv.dim = dim;
  fv.indices.reserve(acc.size());
  fv.values.reserve(acc.size());
  for (const auto& [idx, v] : acc) {
    fv.indices.push_back(idx);
    fv.values.push_back(v);
  }
  return fv;
}

FeatureVector encode_features(const PairExample& example, std::uint32_t dim) {
  return encode_features(example.sentence1, example.sentence2, dim);
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ValidationError("learning_rate must be a positive real");
  }
  if (epochs < 0) throw ValidationError("epochs must be non-negative");
  if (batch_size < 1) throw ValidationError("batch_size must be positive");
  if (hash_bits < 10 || hash_bits > 26) {
    throw ValidationError("hash_bits must lie in [10, 26]");
  }
}

ModelParams ModelParams::zeros(std::vector<std::string> labels,
                               std::uint32_t dim) {
  ModelParams m;
  m.label_names = std::move(labels);
  m.dim = dim;
  m.weights.assign(m.label_names.size() * dim, 0.0);
  m.bias.assign(m.label_names.size(), 0.0);
  m.validate();
  return m;
}

void ModelParams::validate() const {
  if (label_names.size() < 2) throw ValidationError("model needs at least two labels");
  if (std::set<std::string>(label_names.begin(), label_names.end()).size() !=
      label_names.size()) {
    throw ValidationError("model labels must be distinct");
  }
  if (!is_power_of_two(dim)) throw ValidationError("model dimension must be a power of two");
  if (weights.size() != label_names.size() * static_cast<std::size_t>(dim) ||
      bias.size() != label_names.size()) {
    throw ValidationError("model parameter shapes do not match K x H");
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(weights.begin(), weights.end(), finite) ||
      !std::all_of(bias.begin(), bias.end(), finite)) {
    throw ValidationError("model parameters must be finite");
  }
}

double ProbDist::at(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return probs[i];
  }
  throw ContractViolation("distribution for " + uid + " has no label '" +
                          std::string(label) + "'");
}

bool ProbDist::has(std::string_view label) const {
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

std::vector<double> softmax(std::span<const double> z) {
  std::vector<double> p(z.begin(), z.end());
  if (p.empty()) return p;
  const double m = *std::max_element(p.begin(), p.end());
  double sum = 0.0;
  for (double& v : p) {
    v = std::exp(v - m);
    sum += v;
  }
  for (double& v : p) v /= sum;
  return p;
}

std::vector<double> logits(const ModelParams& model, const FeatureVector& x) {
  if (x.dim != model.dim) {
    throw ContractViolation("feature dimension does not match the model");
  }
  std::vector<double> z = model.bias;
  for (std::size_t k = 0; k < z.size(); ++k) {
    const double* row = model.weights.data() + k * model.dim;
    for (std::size_t i = 0; i < x.indices.size(); ++i) {
      z[k] += row[x.indices[i]] * x.values[i];
    }
  }
  return z;
}

ProbDist predict_proba(const ModelParams& model, const FeatureVector& x,
                       std::string uid) {
  ProbDist d;
  d.uid = std::move(uid);
  d.labels = model.label_names;
  d.probs = softmax(logits(model, x));
  return d;
}

ProbDist predict_proba(const ModelParams& model, const PairExample& example) {
  return predict_proba(model, encode_features(example, model.dim), example.uid);
}

double mean_cross_entropy(const ModelParams& model,
                          std::span<const TrainingExample> data) {
  if (data.empty()) return 0.0;
  double total = 0.0;
  for (const auto& ex : data) {
    auto z = logits(model, ex.features);
    const double m = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double v : z) sum += std::exp(v - m);
    total += (m + std::log(sum)) - z[ex.label];
  }
  return total / static_cast<double>(data.size());
}

Gradient cross_entropy_gradient(const ModelParams& model,
                                std::span<const TrainingExample> data,
                                std::span<const std::size_t> batch) {
  const std::size_t K = model.num_labels();
  Gradient g;
  g.bias.assign(K, 0.0);
  if (batch.empty()) return g;
  const double scale = 1.0 / static_cast<double>(batch.size());
  for (std::size_t b : batch) {
    const auto& ex = data[b];
    if (ex.label >= K) throw ContractViolation("training label out of range");
    auto p = softmax(logits(model, ex.features));
    p[ex.label] -= 1.0;
    for (std::size_t k = 0; k < K; ++k) g.bias[k] += scale * p[k];
    for (std::size_t i = 0; i < ex.features.indices.size(); ++i) {
      auto& col = g.columns[ex.features.indices[i]];
      if (col.empty()) col.assign(K, 0.0);
      for (std::size_t k = 0; k < K; ++k) {
        col[k] += scale * p[k] * ex.features.values[i];
      }
    }
  }
  return g;
}

Gradient cross_entropy_gradient(const ModelParams& model,
                                std::span<const TrainingExample> data) {
  std::vector<std::size_t> all(data.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return cross_entropy_gradient(model, data, all);
}

std::vector<std::string> common_label_set(std::span<const PairExample> examples) {
  if (examples.empty()) throw ContractViolation("no training examples");
  const auto& first = examples.front();
  const bool binary = is_binary_method(first.method);
  const Task task = first.task();
  for (const auto& ex : examples) {
    if (is_binary_method(ex.method) != binary || ex.task() != task) {
      throw ContractViolation("training examples mix label sets (" +
                              first.uid + " vs " + ex.uid + ")");
    }
  }
  return label_set(first.method, task);
}

ModelParams train_softmax(std::span<const TrainingExample> data,
                          std::vector<std::string> label_names,
                          const TrainConfig& config) {
  config.validate();
  if (data.empty()) throw ContractViolation("no training examples");
  ModelParams model = ModelParams::zeros(std::move(label_names), config.dim());
  const std::size_t K = model.num_labels();
  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto batch_size = static_cast<std::size_t>(config.batch_size);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    shuffle(order, rng);
    for (std::size_t start = 0; start < order.size(); start += batch_size) {
      std::size_t len = std::min(batch_size, order.size() - start);
      std::span<const std::size_t> batch(order.data() + start, len);
      Gradient g = cross_entropy_gradient(model, data, batch);
      for (const auto& [j, col] : g.columns) {
        for (std::size_t k = 0; k < K; ++k) {
          model.weight(k, j) -= config.learning_rate * col[k];
        }
      }
      for (std::size_t k = 0; k < K; ++k) {
        model.bias[k] -= config.learning_rate * g.bias[k];
      }
    }
  }
  return model;
}

ModelParams train_softmax(std::span<const PairExample> examples,
                          const TrainConfig& config) {
  config.validate();
  auto labels = common_label_set(examples);
  std::vector<TrainingExample> data;
  data.reserve(examples.size());
  for (const auto& ex : examples) {
    auto it = std::find(labels.begin(), labels.end(), ex.gold);
    if (it == labels.end()) {
      throw ContractViolation("gold label '" + ex.gold + "' of " + ex.uid +
                              " outside the label set");
    }
    data.push_back({encode_features(ex, config.dim()),
                    static_cast<std::size_t>(it - labels.begin())});
  }
  return train_softmax(data, std::move(labels), config);
}

std::string write_scores_tsv(std::span<const ProbDist> dists,
                             std::span<const std::string> labels) {
  std::string out;
  std::vector<std::string_view> header{"uid"};
  header.insert(header.end(), labels.begin(), labels.end());
  tsv::append_row(out, header);
  std::vector<std::string> cells;
  std::vector<std::string_view> row;
  for (const auto& d : dists) {
    if (!std::equal(d.labels.begin(), d.labels.end(), labels.begin(), labels.end())) {
      throw ContractViolation("distribution " + d.uid +
                              " does not match the score file labels");
    }
    cells.assign(1, d.uid);
    for (double p : d.probs) cells.push_back(format_double(p));
    row.assign(cells.begin(), cells.end());
    tsv::append_row(out, row);
  }
  return out;
}

std::vector<ProbDist> import_external_scores(
    std::string_view document, std::span<const std::string> expected_labels) {
  auto lines = tsv::split_lines(document);
  if (lines.empty()) throw ValidationError("score file has no header");
  auto header = tsv::split_fields(lines[0].text);
  bool header_ok = header.size() == expected_labels.size() + 1 && header[0] == "uid" &&
                   std::equal(header.begin() + 1, header.end(),
                              expected_labels.begin(), expected_labels.end());
  if (!header_ok) {
    std::string want = "uid";
    for (const auto& l : expected_labels) want += "," + l;
    std::string got;
    for (auto h : header) got += (got.empty() ? "" : ",") + std::string(h);
    throw ValidationError("score file header [" + got + "] does not match expected [" +
                          want + "]");
  }
  const std::vector<std::string> labels(expected_labels.begin(), expected_labels.end());
  std::vector<ProbDist> out;
  std::set<std::string> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto line_no = lines[i].line;
    auto fail = [&](const std::string& what) {
      return ParseError("score file line " + std::to_string(line_no) + ": " + what);
    };
    auto f = tsv::split_fields(lines[i].text);
    if (f.size() != labels.size() + 1) {
      throw fail("expected " + std::to_string(labels.size() + 1) + " fields, found " +
                 std::to_string(f.size()));
    }
    if (f[0].empty()) throw fail("missing uid");
    if (!seen.insert(std::string(f[0])).second) {
      throw fail("duplicate uid " + std::string(f[0]));
    }
    ProbDist d;
    d.uid = std::string(f[0]);
    d.labels = labels;
    double sum = 0.0;
    for (std::size_t k = 1; k < f.size(); ++k) {
      double v = 0.0;
      auto field = f[k];
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (field.empty() || ec != std::errc() || ptr != field.data() + field.size() ||
          !std::isfinite(v)) {
        throw fail("non-numeric probability '" + std::string(field) + "'");
      }
      if (v < 0.0) throw fail("negative probability");
      d.probs.push_back(v);
      sum += v;
    }
    if (sum < 0.99 || sum > 1.01) {
      throw fail("probabilities sum to " + format_double(sum) +
                 ", outside [0.99, 1.01]");
    }
    // Sums within 1e-12 of one are already unit up to rounding; leave them
    // bit-exact so exported scores re-import unchanged.
    if (std::abs(sum - 1.0) > 1e-12) {
      for (double& v : d.probs) v /= sum;
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::string write_model_file(std::span<const ModelEntry> models) {
  nlohmann::ordered_json doc;
  doc["format"] = kModelFormat;
  doc["version"] = kModelVersion;
  doc["models"] = nlohmann::ordered_json::array();
  for (const auto& entry : models) {
    const auto& m = entry.params;
    m.validate();
    nlohmann::ordered_json j;
    j["group"] = entry.group ? nlohmann::ordered_json(*entry.group)
                             : nlohmann::ordered_json(nullptr);
    j["label_names"] = m.label_names;
    j["hash_dim"] = m.dim;
    j["bias"] = m.bias;
    auto columns = nlohmann::ordered_json::array();
    const std::size_t K = m.num_labels();
    for (std::uint32_t c = 0; c < m.dim; ++c) {
      bool nonzero = false;
      for (std::size_t k = 0; k < K && !nonzero; ++k) nonzero = m.weight(k, c) != 0.0;
      if (!nonzero) continue;
      auto col = nlohmann::ordered_json::array();
      col.push_back(c);
      for (std::size_t k = 0; k < K; ++k) col.push_back(m.weight(k, c));
      columns.push_back(std::move(col));
    }
    j["columns"] = std::move(columns);
    doc["models"].push_back(std::move(j));
  }
  return doc.dump() + "\n";
}

std::vector<ModelEntry> read_model_file(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("model file: ") + e.what());
  }
  std::vector<ModelEntry> out;
  try {
    if (doc.at("format").get<std::string>() != kModelFormat) {
      throw ParseError("model file: unknown format");
    }
    if (doc.at("version").get<int>() != kModelVersion) {
      throw ParseError("model file: unsupported version");
    }
    for (const auto& j : doc.at("models")) {
      ModelEntry e;
      if (!j.at("group").is_null()) e.group = j.at("group").get<std::string>();
      auto labels = j.at("label_names").get<std::vector<std::string>>();
      auto dim = j.at("hash_dim").get<std::uint32_t>();
      if (!is_power_of_two(dim)) throw ParseError("model file: hash_dim not a power of two");
      e.params = ModelParams::zeros(std::move(labels), dim);
      e.params.bias = j.at("bias").get<std::vector<double>>();
      const std::size_t K = e.params.num_labels();
      for (const auto& col : j.at("columns")) {
        if (col.size() != K + 1) throw ParseError("model file: malformed column");
        auto c = col[0].get<std::uint32_t>();
        if (c >= dim) throw ParseError("model file: column index out of range");
        for (std::size_t k = 0; k < K; ++k) e.params.weight(k, c) = col[k + 1].get<double>();
      }
      e.params.validate();
      out.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model file: ") + e.what());
  } catch (const ValidationError& e) {
    throw ParseError(std::string("model file: ") + e.what());
  }
  return out;
}

std::string reference_finetune_config() {
  return "model=bert-base-uncased\n"
         "num_layers=12\n"
         "hidden_size=768\n"
         "num_attention_heads=12\n"
         "num_parameters=110M\n"
         "learning_rate=2e-5\n"
         "epochs=4\n"
         "dropout=0.1\n"
         "batch_size=24\n";
}

}  // namespace absa
