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

#include "absa/harness.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

namespace absa {
namespace {

namespace fs = std::filesystem;

Task parse_dataset(const std::string& s) {
  if (s == "sentihood") return Task::kTabsa;
  if (s == "semeval") return Task::kAbsa;
  throw ValidationError("unknown task '" + s + "' (expected sentihood or semeval)");
}

std::string dataset_label(Task t) { return t == Task::kTabsa ? "sentihood" : "semeval"; }

Method require_method(const std::string& s) {
  auto m = parse_method(s);
  if (!m) throw ValidationError("unknown method '" + s + "'");
  return *m;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ",") + n;
  return out;
}

std::string model_name(Method m) {
  return m == Method::kSingle ? "single" : "pair-" + std::string(method_name(m));
}

ProbDist uniform_dist(const PairExample& ex) {
  ProbDist d;
  d.uid = ex.uid;
  d.labels = label_set(ex.method, ex.task());
  d.probs.assign(d.labels.size(), 1.0 / static_cast<double>(d.labels.size()));
  return d;
}

std::vector<EvaluationReport> load_reports(const std::string& path) {
  std::string text = read_file(path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  std::vector<EvaluationReport> out;
  if (doc.is_array()) {
    for (const auto& r : doc) out.push_back(report_from_json(r.dump()));
  } else {
    out.push_back(report_from_json(text));
  }
  return out;
}

std::string reports_to_json(std::span<const EvaluationReport> reports) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    arr.push_back(nlohmann::ordered_json::parse(report_to_json(r)));
  }
  return arr.dump(2) + "\n";
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("error writing '" + path + "'");
}

std::string resolve_input(const std::string& path) {
  const char* dir = std::getenv(kDataDirEnv);
  if (dir == nullptr || *dir == '\0') return path;
  fs::path p(path);
  if (p.is_absolute() || fs::exists(p)) return path;
  return (fs::path(dir) / p).string();
}

std::vector<LabeledSentence> load_corpus(Task task, const std::string& path) {
  std::string text = read_file(resolve_input(path));
  return task == Task::kTabsa ? parse_sentihood(text) : parse_semeval(text);
}

AspectSet default_aspects(Task task) {
  return task == Task::kTabsa ? AspectSet::sentihood() : AspectSet::semeval();
}

AspectSet RunConfig::resolved_aspects() const {
  return aspects ? *aspects : default_aspects(task);
}

void RunConfig::validate() const {
  train.validate();
  std::set<fs::path> seen;
  for (const auto& [role, path] : paths) {
    if (path.empty()) continue;
    auto norm = fs::absolute(fs::path(path)).lexically_normal();
    if (!seen.insert(norm).second) {
      throw ValidationError("path '" + path + "' is used for more than one role");
    }
  }
}

std::string RunConfig::describe() const {
  std::ostringstream s;
  s << "config task=" << dataset_label(task) << " method=" << method_name(method)
    << " aspects=" << join_names(resolved_aspects().names());
  for (const auto& [role, path] : paths) s << ' ' << role << '=' << path;
  char lr[32];
  std::snprintf(lr, sizeof(lr), "%g", train.learning_rate);
  s << " learning_rate=" << lr << " epochs=" << train.epochs
    << " batch_size=" << train.batch_size << " hash_bits=" << train.hash_bits
    << " seed=" << train.seed;
  return s.str();
}

std::string single_model_key(const GroupKey& group) {
  return (group.target ? std::to_string(*group.target) : std::string("-")) + "|" +
         group.aspect;
}

std::vector<ModelEntry> train_models(std::span<const PairExample> examples,
                                     const TrainConfig& config) {
  if (examples.empty()) throw ContractViolation("no training examples");
  const bool single = examples.front().method == Method::kSingle;
  for (const auto& ex : examples) {
    if ((ex.method == Method::kSingle) != single) {
      throw ContractViolation("single and pair examples cannot train together");
    }
  }
  if (!single) return {ModelEntry{std::nullopt, train_softmax(examples, config)}};

  std::vector<std::string> order;
  std::map<std::string, std::vector<PairExample>> groups;
  for (const auto& ex : examples) {
    auto key = single_model_key(ex.group);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(ex);
  }
  std::vector<ModelEntry> out;
  for (const auto& key : order) {
    out.push_back(ModelEntry{key, train_softmax(groups[key], config)});
  }
  return out;
}

std::vector<ProbDist> predict_all(std::span<const ModelEntry> models,
                                  std::span<const PairExample> examples) {
  std::map<std::string, const ModelParams*> by_group;
  const ModelParams* shared = nullptr;
  for (const auto& m : models) {
    if (m.group) {
      by_group[*m.group] = &m.params;
    } else {
      shared = &m.params;
    }
  }
  std::vector<ProbDist> out;
  out.reserve(examples.size());
  for (const auto& ex : examples) {
    const ModelParams* model = nullptr;
    if (ex.method == Method::kSingle) {
      auto it = by_group.find(single_model_key(ex.group));
      if (it != by_group.end()) model = it->second;
    } else {
      model = shared;
      if (model == nullptr) {
        throw ValidationError("model file has no pair-method model for " + ex.uid);
      }
    }
    if (model == nullptr) {
      out.push_back(uniform_dist(ex));
      continue;
    }
    if (model->label_names != label_set(ex.method, ex.task())) {
      throw ValidationError("model labels [" + join_names(model->label_names) +
                            "] do not match the label set of " + ex.uid);
    }
    out.push_back(predict_proba(*model, ex));
  }
  return out;
}

ProbDist oracle_dist(const PairExample& example) {
  ProbDist d;
  d.uid = example.uid;
  d.labels = label_set(example.method, example.task());
  for (const auto& l : d.labels) d.probs.push_back(l == example.gold ? 1.0 : 0.0);
  return d;
}

EvaluationReport evaluate_scores(Task task, Method method,
                                 std::span<const LabeledSentence> expanded,
                                 const AspectSet& aspects,
                                 std::span<const ProbDist> dists, std::string name) {
  auto examples = build_examples(expanded, method, aspects);
  auto index = index_by_uid(std::vector<ProbDist>(dists.begin(), dists.end()));
  auto predictions = decode(index, examples);
  return evaluate(task, make_gold_grid(expanded), predictions, aspects, std::move(name));
}

Comparison compare_single_vs_pair(const CompareInputs& in) {
  in.config.validate();
  auto train = grid_expand(in.train, in.aspects);
  auto test = grid_expand(in.test, in.aspects);
  auto run_arm = [&](Method method) {
    auto test_examples = build_examples(test, method, in.aspects);
    std::vector<ProbDist> dists;
    if (in.scorer) {
      for (const auto& ex : test_examples) dists.push_back(in.scorer(ex));
    } else {
      auto models = train_models(build_examples(train, method, in.aspects), in.config);
      dists = predict_all(models, test_examples);
    }
    return evaluate_scores(in.task, method, test, in.aspects, dists, model_name(method));
  };
  if (in.pair_method == Method::kSingle) {
    throw ContractViolation("the pair arm needs a pair construction method");
  }
  return Comparison{run_arm(Method::kSingle), run_arm(in.pair_method)};
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Aspect-based sentiment analysis as sentence-pair classification"};
  app.name("absa_pair");
  app.require_subcommand(1, 1);

  std::string task_s, method_s = "nli_m", input, output, aspects_s, canonical,
                      pairs, model, scores, name, predictions, train_path, test_path;
  std::vector<std::string> report_files;
  TrainConfig tc;

  auto add_task = [&](CLI::App* sub) {
    sub->add_option("--task", task_s, "sentihood or semeval")->required();
  };
  auto add_method = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--method", method_s,
                                "qa_m, nli_m, qa_b, nli_b or single");
    if (required) opt->required();
  };
  auto add_aspects = [&](CLI::App* sub) {
    sub->add_option("--aspects", aspects_s, "comma-separated aspect set override");
  };
  auto add_training = [&](CLI::App* sub) {
    sub->add_option("--learning-rate", tc.learning_rate);
    sub->add_option("--epochs", tc.epochs);
    sub->add_option("--batch-size", tc.batch_size);
    sub->add_option("--seed", tc.seed);
    sub->add_option("--hash-bits", tc.hash_bits);
  };

  auto* convert = app.add_subcommand("convert", "dataset -> pair TSV");
  add_task(convert);
  add_method(convert, true);
  add_aspects(convert);
  convert->add_option("--input", input)->required();
  convert->add_option("--output", output)->required();
  convert->add_option("--canonical", canonical, "also write canonical JSON-lines");

  auto* train = app.add_subcommand("train", "pair TSV -> model file");
  train->add_option("--pairs", pairs)->required();
  train->add_option("--model", model)->required();
  add_training(train);

  auto* predict = app.add_subcommand("predict", "model + pair TSV -> score TSV");
  predict->add_option("--model", model)->required();
  predict->add_option("--pairs", pairs)->required();
  predict->add_option("--output", output)->required();

  auto* eval = app.add_subcommand("eval", "gold dataset + score TSV -> report JSON");
  add_task(eval);
  add_method(eval, true);
  add_aspects(eval);
  eval->add_option("--input", input, "gold dataset")->required();
  eval->add_option("--scores", scores)->required();
  eval->add_option("--output", output)->required();
  eval->add_option("--name", name, "row label in tables");
  eval->add_option("--predictions", predictions, "also write grid predictions TSV");

  auto* report = app.add_subcommand("report", "report JSONs -> comparison table");
  report->add_option("reports", report_files)->required();
  report->add_option("--output", output);

  auto* export_config = app.add_subcommand("export-config",
                                           "write the reference fine-tuning config");
  export_config->add_option("--output", output)->required();

  auto* compare = app.add_subcommand("compare", "single-sentence vs pair framing");
  add_task(compare);
  add_method(compare, false);
  add_aspects(compare);
  compare->add_option("--train", train_path)->required();
  compare->add_option("--test", test_path, "defaults to the training file");
  compare->add_option("--output", output)->required();
  add_training(compare);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    RunConfig cfg;
    cfg.train = tc;
    if (!task_s.empty()) cfg.task = parse_dataset(task_s);
    cfg.method = require_method(method_s);
    if (!aspects_s.empty()) cfg.aspects = AspectSet(split_commas(aspects_s));
    const AspectSet aspects = cfg.resolved_aspects();

    if (convert->parsed()) {
      cfg.paths = {{"input", input}, {"output", output}, {"canonical", canonical}};
      cfg.validate();
      out << cfg.describe() << "\n";
      auto sentences = load_corpus(cfg.task, input);
      auto expanded = grid_expand(sentences, aspects);
      auto examples = build_examples(expanded, cfg.method, aspects);
      write_file(output, write_pairs_tsv(examples));
      if (!canonical.empty()) write_file(canonical, to_jsonl(sentences));
      out << "wrote " << examples.size() << " examples from " << sentences.size()
          << " sentences to " << output << "\n";
    } else if (train->parsed()) {
      cfg.paths = {{"pairs", pairs}, {"model", model}};
      cfg.validate();
      auto examples = read_pairs_tsv(read_file(pairs));
      if (examples.empty()) throw ValidationError("pair file has no examples");
      cfg.method = examples.front().method;
      cfg.task = examples.front().task();
      out << cfg.describe() << "\n";
      auto models = train_models(examples, tc);
      write_file(model, write_model_file(models));
      out << "trained " << models.size() << " model(s) on " << examples.size()
          << " examples\n";
    } else if (predict->parsed()) {
      cfg.paths = {{"model", model}, {"pairs", pairs}, {"output", output}};
      cfg.validate();
      auto examples = read_pairs_tsv(read_file(pairs));
      if (examples.empty()) throw ValidationError("pair file has no examples");
      cfg.method = examples.front().method;
      cfg.task = examples.front().task();
      out << cfg.describe() << "\n";
      auto labels = common_label_set(examples);
      auto models = read_model_file(read_file(model));
      auto dists = predict_all(models, examples);
      write_file(output, write_scores_tsv(dists, labels));
      out << "wrote " << dists.size() << " score rows to " << output << "\n";
    } else if (eval->parsed()) {
      cfg.paths = {{"input", input}, {"scores", scores}, {"output", output},
                   {"predictions", predictions}};
      cfg.validate();
      out << cfg.describe() << "\n";
      auto expanded = grid_expand(load_corpus(cfg.task, input), aspects);
      auto labels = label_set(cfg.method, cfg.task);
      auto dists = import_external_scores(read_file(scores), labels);
      auto examples = build_examples(expanded, cfg.method, aspects);
      auto predicted = decode(index_by_uid(dists), examples);
      auto rep = evaluate(cfg.task, make_gold_grid(expanded), predicted, aspects,
                          name.empty() ? model_name(cfg.method) : name);
      write_file(output, report_to_json(rep));
      if (!predictions.empty()) write_file(predictions, write_predictions_tsv(predicted));
      out << render_table(std::span<const EvaluationReport>(&rep, 1));
    } else if (report->parsed()) {
      std::vector<EvaluationReport> all;
      for (const auto& f : report_files) {
        auto loaded = load_reports(f);
        all.insert(all.end(), loaded.begin(), loaded.end());
      }
      std::string table = render_table(all);
      if (!output.empty()) write_file(output, table);
      out << table;
    } else if (export_config->parsed()) {
      cfg.paths = {{"output", output}};
      out << cfg.describe() << "\n";
      write_file(output, reference_finetune_config());
    } else if (compare->parsed()) {
      if (cfg.method == Method::kSingle) {
        throw ValidationError("compare needs a pair method for the pair arm");
      }
      cfg.paths = {{"train", train_path}, {"test", test_path}, {"output", output}};
      cfg.validate();
      out << cfg.describe() << "\n";
      CompareInputs ci;
      ci.task = cfg.task;
      ci.pair_method = cfg.method;
      ci.aspects = aspects;
      ci.train = load_corpus(cfg.task, train_path);
      ci.test = test_path.empty() ? ci.train : load_corpus(cfg.task, test_path);
      ci.config = tc;
      auto result = compare_single_vs_pair(ci);
      const EvaluationReport both[] = {result.single, result.pair};
      write_file(output, reports_to_json(both));
      out << render_table(both);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace absa
