// Copyright 2026 The spellvar Authors
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

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spellvar/report.hpp"
#include "spellvar/spellvar.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Exit codes past the CLI11 parse-error range:
//   10 model load   11 out-of-vocabulary   12 configuration
//   13 learning     14 data                15 I/O            1 anything else
constexpr int kExitModelLoad = 10;
constexpr int kExitOov = 11;
constexpr int kExitConfig = 12;
constexpr int kExitLearning = 13;
constexpr int kExitData = 14;
constexpr int kExitIo = 15;

struct Options {
  std::string model_path;
  std::string format = "word2vec-text";
  std::vector<std::string> seeds;
  std::string seeds_file;
  double lt = 0.75;
  std::size_t ssl = 4000;
  std::string mode = "default";
  std::string profile_path;
  std::string ratio_formula = "length-sum";
  bool no_case_fold = false;

  std::string pairs_path;
  std::size_t window = 0;
  double bucket_width = 0.2;
  double scale = 0.05;
  unsigned substitution_cost = 2;

  std::string gold_path;
  std::string predictions_path;
  std::vector<double> betas;
  std::vector<double> lt_values;

  std::string corpus_path;
  std::string variants_path;

  std::string out_path;
  std::string out_format = "structured";
};

void emit(const Options& opt, const std::string& content) {
  if (opt.out_path.empty()) {
    std::cout << content;
  } else {
    spellvar::atomic_write_file(opt.out_path, content);
  }
}

spellvar::ModelFormat parse_format(const std::string& name) {
  if (name == "word2vec-text") return spellvar::ModelFormat::kWord2vecText;
  if (name == "word2vec-binary") return spellvar::ModelFormat::kWord2vecBinary;
  throw spellvar::ConfigError("unknown model format '" + name + "'");
}

spellvar::VectorModel load_model(const Options& opt) {
  std::string path = opt.model_path;
  if (path.empty()) {
    if (const char* env = std::getenv("SPELLVAR_MODEL")) path = env;
  }
  if (path.empty()) {
    throw spellvar::ConfigError(
        "no model given; pass --model or set SPELLVAR_MODEL");
  }
  return spellvar::VectorModel::load(path, parse_format(opt.format));
}

std::vector<std::string> collect_seeds(const Options& opt) {
  std::vector<std::string> seeds = opt.seeds;
  if (!opt.seeds_file.empty()) {
    std::ifstream in(opt.seeds_file);
    if (!in) {
      throw spellvar::IoError("cannot open seeds file: " + opt.seeds_file);
    }
    std::string line;
    while (std::getline(in, line)) {
      const auto t = spellvar::trim(line);
      if (!t.empty() && t.front() != '#') seeds.emplace_back(t);
    }
  }
  if (seeds.empty()) {
    throw spellvar::ConfigError("no seeds given; use --seed or --seeds-file");
  }
  return seeds;
}

spellvar::GenerationConfig build_config(const Options& opt) {
  spellvar::GenerationConfig config;
  config.ssl = opt.ssl;
  config.lt = opt.lt;
  config.mode = spellvar::ratio_mode_from_name(opt.mode);
  config.case_fold = !opt.no_case_fold;
  if (opt.ratio_formula == "max-length") {
    config.formula = spellvar::RatioFormula::kMaxLength;
  } else if (opt.ratio_formula != "length-sum") {
    throw spellvar::ConfigError("unknown ratio formula '" + opt.ratio_formula +
                                "'");
  }
  if (!opt.profile_path.empty()) {
    config.profile = spellvar::load_profile(opt.profile_path);
  }
  config.validate();
  return config;
}

std::vector<double> betas_or_default(const Options& opt) {
  if (opt.betas.empty()) return {1.0, 0.25};
  return opt.betas;
}

json model_json(const Options& opt, const spellvar::VectorModel& model) {
  std::string path = opt.model_path;
  if (path.empty()) {
    if (const char* env = std::getenv("SPELLVAR_MODEL")) path = env;
  }
  return json{{"path", path},
              {"vocab_size", model.size()},
              {"dim", model.dim()},
              {"digest", model.digest()}};
}

std::map<std::string, std::set<std::string>> predictions_from_file(
    const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw spellvar::IoError("cannot open predictions: " + path.string());
  std::map<std::string, std::set<std::string>> predictions;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = spellvar::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto fields = spellvar::split_record(t);
    if (fields.size() < 2 || fields[0].empty() || fields[1].empty()) {
      throw spellvar::DataError("predictions line " + std::to_string(line_no) +
                                ": expected 'seed<sep>variant...'");
    }
    predictions[fields[0]].insert(fields[1]);
  }
  return predictions;
}

int run_generate(const Options& opt) {
  // Cheap inputs are read and validated before the model load.
  const spellvar::GenerationConfig config = build_config(opt);
  const std::vector<std::string> seeds = collect_seeds(opt);
  const spellvar::VectorModel model = load_model(opt);
  const auto batch = spellvar::generate_batch(seeds, model, config);

  if (opt.out_format == "flat") {
    emit(opt, spellvar::flat_variants(batch));
    for (const std::string& seed : batch.skipped) {
      std::cerr << "skipped (out of vocabulary): " << seed << "\n";
    }
  } else if (opt.out_format == "structured") {
    json doc = spellvar::run_json(config, batch);
    doc["model"] = model_json(opt, model);
    emit(opt, doc.dump(2) + "\n");
  } else {
    throw spellvar::ConfigError("unknown output format '" + opt.out_format +
                                "' (expected 'structured' or 'flat')");
  }
  return 0;
}

int run_learn_weights(const Options& opt) {
  const auto pairs = spellvar::read_labeled_pairs(opt.pairs_path);
  const spellvar::EditCosts costs{1, 1, opt.substitution_cost};
  if (!costs.substitution_effective()) {
    std::cerr << "warning: substitution cost " << opt.substitution_cost
              << " exceeds insertion+deletion; distances degenerate to "
                 "indel distance\n";
  }
  const auto dist = spellvar::estimate_distributions(pairs, opt.window,
                                                     opt.bucket_width, costs);
  const auto profile =
      spellvar::learn_profile(dist, opt.scale, opt.window, opt.bucket_width);
  emit(opt, spellvar::serialize_profile(profile));
  return 0;
}

int run_evaluate(const Options& opt) {
  if (opt.gold_path.empty()) {
    throw spellvar::ConfigError("evaluate requires --gold");
  }
  const auto gold = spellvar::GoldStandard::load(opt.gold_path);
  const auto betas = betas_or_default(opt);

  std::map<std::string, std::set<std::string>> predictions;
  json provenance;
  if (!opt.predictions_path.empty()) {
    predictions = predictions_from_file(opt.predictions_path);
    provenance = json{{"predictions", opt.predictions_path}};
  } else {
    const spellvar::GenerationConfig config = build_config(opt);
    const std::vector<std::string> seeds = collect_seeds(opt);
    const spellvar::VectorModel model = load_model(opt);
    const auto batch = spellvar::generate_batch(seeds, model, config);
    for (const auto& [seed, set] : batch.results) {
      auto& tokens = predictions[seed];
      for (const auto& v : set.variants) tokens.insert(v.token);
    }
    provenance = json{{"config", spellvar::config_json(config)},
                      {"model", model_json(opt, model)},
                      {"skipped", batch.skipped}};
  }

  const auto result = spellvar::score(predictions, gold, betas);
  json doc = spellvar::score_json(result);
  doc["run"] = std::move(provenance);
  emit(opt, doc.dump(2) + "\n");
  return 0;
}

int run_sweep(const Options& opt) {
  if (opt.gold_path.empty()) {
    throw spellvar::ConfigError("sweep requires --gold");
  }
  const auto gold = spellvar::GoldStandard::load(opt.gold_path);
  const auto betas = betas_or_default(opt);
  const auto seeds = collect_seeds(opt);

  std::vector<double> lts = opt.lt_values;
  if (lts.empty()) {
    for (int i = 0; i <= 8; ++i) lts.push_back((55 + 5 * i) / 100.0);
  }

  std::vector<std::string> modes;
  if (opt.mode == "both") {
    modes = {"default", "weighted"};
  } else {
    modes = {opt.mode};
  }

  // Every mode's config must be valid before the model load or any sweeping.
  std::vector<spellvar::GenerationConfig> configs;
  for (const std::string& mode : modes) {
    Options mode_opt = opt;
    mode_opt.mode = mode;
    configs.push_back(build_config(mode_opt));
  }

  const spellvar::VectorModel model = load_model(opt);
  std::vector<spellvar::SweepRow> rows;
  for (const spellvar::GenerationConfig& config : configs) {
    const auto mode_rows =
        spellvar::threshold_sweep(seeds, model, config, gold, lts, betas);
    rows.insert(rows.end(), mode_rows.begin(), mode_rows.end());
  }
  emit(opt, spellvar::sweep_table(rows, betas));
  return 0;
}

int run_candidates(const Options& opt) {
  const std::vector<std::string> seeds = collect_seeds(opt);
  const spellvar::VectorModel model = load_model(opt);
  std::string out;
  for (const std::string& seed : seeds) {
    const std::string keyword =
        opt.no_case_fold ? seed : spellvar::to_lower_ascii(seed);
    for (const auto& c : spellvar::fuzzy_candidates(keyword, model.vocab())) {
      out += keyword;
      out += '\t';
      out += c.token;
      out += '\t';
      out += std::to_string(c.distance);
      out += '\n';
    }
  }
  emit(opt, out);
  return 0;
}

// The expansion file is either the flat generate output (variant in the
// second column) or a plain one-token-per-line list.
std::set<std::string> read_expansion_tokens(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw spellvar::IoError("cannot open variants file: " + path.string());
  std::set<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = spellvar::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto fields = spellvar::split_record(t);
    tokens.insert(fields.size() >= 2 ? fields[1] : fields[0]);
  }
  return tokens;
}

int run_retrieval(const Options& opt) {
  if (opt.corpus_path.empty()) {
    throw spellvar::ConfigError("retrieval requires --corpus");
  }
  std::set<std::string> base;
  for (const std::string& s : collect_seeds(opt)) base.insert(s);
  const std::size_t base_count = spellvar::retrieval_count(
      fs::path(opt.corpus_path), base);

  json doc{{"corpus", opt.corpus_path},
           {"base_keywords", base.size()},
           {"base_count", base_count}};
  if (!opt.variants_path.empty()) {
    std::set<std::string> expanded = base;
    const auto extra = read_expansion_tokens(opt.variants_path);
    expanded.insert(extra.begin(), extra.end());
    const std::size_t expanded_count =
        spellvar::retrieval_count(fs::path(opt.corpus_path), expanded);
    doc["expanded_keywords"] = expanded.size();
    doc["expanded_count"] = expanded_count;
    doc["gain"] = spellvar::retrieval_gain(base_count, expanded_count);
  }
  emit(opt, doc.dump(2) + "\n");
  return 0;
}

void attach_model_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--model", opt.model_path,
                  "word2vec model file (default: $SPELLVAR_MODEL)");
  cmd->add_option("--format", opt.format, "model format")
      ->check(CLI::IsMember({"word2vec-text", "word2vec-binary"}))
      ->capture_default_str();
}

void attach_seed_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--seed", opt.seeds, "seed keyword (repeatable)");
  cmd->add_option("--seeds-file", opt.seeds_file,
                  "file with one seed keyword per line");
}

void attach_generation_flags(CLI::App* cmd, Options& opt,
                             bool allow_both_modes = false) {
  cmd->add_option("--lt", opt.lt, "lexical similarity threshold")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--ssl", opt.ssl, "semantic search limit (neighbors per term)")
      ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()))
      ->capture_default_str();
  const std::vector<std::string> modes =
      allow_both_modes ? std::vector<std::string>{"default", "weighted", "both"}
                       : std::vector<std::string>{"default", "weighted"};
  cmd->add_option("--mode", opt.mode, "ratio mode")
      ->check(CLI::IsMember(modes))
      ->capture_default_str();
  cmd->add_option("--profile", opt.profile_path,
                  "weight profile file (required for weighted mode)");
  cmd->add_option("--ratio-formula", opt.ratio_formula,
                  "similarity normalization")
      ->check(CLI::IsMember({"length-sum", "max-length"}))
      ->capture_default_str();
  cmd->add_flag("--no-case-fold", opt.no_case_fold,
                "look seeds up without lowercasing");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spelling-variant generation over a word embedding model"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* generate =
      app.add_subcommand("generate", "generate spelling variants for seeds");
  attach_model_flags(generate, opt);
  attach_seed_flags(generate, opt);
  attach_generation_flags(generate, opt);
  generate->add_option("--out", opt.out_path, "output path (default: stdout)");
  generate->add_option("--out-format", opt.out_format, "output format")
      ->check(CLI::IsMember({"structured", "flat"}))
      ->capture_default_str();

  CLI::App* learn = app.add_subcommand(
      "learn-weights", "learn a weight profile from labeled pairs");
  learn->add_option("--pairs", opt.pairs_path,
                    "labeled pairs file: keyword<sep>candidate<sep>0|1")
      ->required();
  learn->add_option("--window", opt.window,
                    "window length in characters (0 = derive per keyword)")
      ->capture_default_str();
  learn->add_option("--bucket-width", opt.bucket_width,
                    "relative-position bucket width")
      ->check(CLI::Range(1e-9, 1.0))
      ->capture_default_str();
  learn->add_option("--scale", opt.scale, "max reward/penalty fraction k")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  learn->add_option("--substitution-cost", opt.substitution_cost,
                    "substitution cost for window distances")
      ->capture_default_str();
  learn->add_option("--out", opt.out_path, "profile output path");

  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "score generated variants against a gold standard");
  attach_model_flags(evaluate, opt);
  attach_seed_flags(evaluate, opt);
  attach_generation_flags(evaluate, opt);
  evaluate->add_option("--gold", opt.gold_path, "gold standard file");
  evaluate->add_option("--predictions", opt.predictions_path,
                       "score this flat predictions file instead of generating");
  evaluate->add_option("--beta", opt.betas,
                       "F-score beta (repeatable; default 1 and 0.25)");
  evaluate->add_option("--out", opt.out_path, "report output path");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "evaluate across a grid of lt thresholds");
  attach_model_flags(sweep, opt);
  attach_seed_flags(sweep, opt);
  attach_generation_flags(sweep, opt, /*allow_both_modes=*/true);
  sweep->add_option("--gold", opt.gold_path, "gold standard file");
  sweep->add_option("--lt-values", opt.lt_values,
                    "explicit lt grid (default 0.55..0.95 step 0.05)");
  sweep->add_option("--beta", opt.betas,
                    "F-score beta (repeatable; default 1 and 0.25)");
  sweep->add_option("--out", opt.out_path, "table output path");

  CLI::App* candidates = app.add_subcommand(
      "candidates", "fuzzy candidate extraction from the model vocabulary");
  attach_model_flags(candidates, opt);
  attach_seed_flags(candidates, opt);
  candidates->add_flag("--no-case-fold", opt.no_case_fold,
                       "match keywords without lowercasing");
  candidates->add_option("--out", opt.out_path, "output path");

  CLI::App* retrieval = app.add_subcommand(
      "retrieval", "count corpus documents matched by keywords");
  attach_seed_flags(retrieval, opt);
  retrieval->add_option("--corpus", opt.corpus_path,
                        "corpus file, one document per line");
  retrieval->add_option("--variants", opt.variants_path,
                        "expansion terms: flat generate output or token list");
  retrieval->add_option("--out", opt.out_path, "report output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return run_generate(opt);
    if (learn->parsed()) return run_learn_weights(opt);
    if (evaluate->parsed()) return run_evaluate(opt);
    if (sweep->parsed()) return run_sweep(opt);
    if (candidates->parsed()) return run_candidates(opt);
    if (retrieval->parsed()) return run_retrieval(opt);
  } catch (const spellvar::ModelLoadError& e) {
    std::cerr << json{{"error", "model_load"}, {"message", e.what()}}.dump()
              << "\n";
    return kExitModelLoad;
  } catch (const spellvar::OovError& e) {
    std::cerr << json{{"error", "out_of_vocabulary"},
                      {"message", e.what()},
                      {"token", e.token()}}
                     .dump()
              << "\n";
    return kExitOov;
  } catch (const spellvar::ConfigError& e) {
    std::cerr << json{{"error", "config"}, {"message", e.what()}}.dump()
              << "\n";
    return kExitConfig;
  } catch (const spellvar::LearningError& e) {
    std::cerr << json{{"error", "learning"}, {"message", e.what()}}.dump()
              << "\n";
    return kExitLearning;
  } catch (const spellvar::DataError& e) {
    std::cerr << json{{"error", "data"}, {"message", e.what()}}.dump() << "\n";
    return kExitData;
  } catch (const spellvar::IoError& e) {
    std::cerr << json{{"error", "io"}, {"message", e.what()}}.dump() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump()
              << "\n";
    return 1;
  }
  return 0;
}
