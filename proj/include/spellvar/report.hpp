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

#pragma once

#include <json.hpp>

#include <cstdio>
#include <span>
#include <string>

#include "spellvar/evaluate.hpp"
#include "spellvar/generator.hpp"
#include "spellvar/util.hpp"
#include "spellvar/weight_profile.hpp"

namespace spellvar {

inline nlohmann::json config_json(const GenerationConfig& config) {
  nlohmann::json j{
      {"ssl", config.ssl},
      {"lt", config.lt},
      {"mode", ratio_mode_name(config.mode)},
      {"ratio_formula", config.formula == RatioFormula::kMaxLength
                            ? "max_length"
                            : "length_sum"},
      {"case_fold", config.case_fold},
  };
  if (config.profile.has_value()) {
    j["profile_digest"] = fnv1a64_hex(serialize_profile(*config.profile));
  } else {
    j["profile_digest"] = nullptr;
  }
  return j;
}

/// Structured generation run: config echo, one entry per seed with the
/// ranked variant list, and the seeds skipped as out-of-vocabulary.
inline nlohmann::json run_json(const GenerationConfig& config,
                               const BatchResult& batch) {
  nlohmann::json results = nlohmann::json::array();
  for (const auto& [seed, set] : batch.results) {
    nlohmann::json variants = nlohmann::json::array();
    for (const Variant& v : set.variants) {
      variants.push_back({{"token", v.token},
                          {"ratio", v.ratio},
                          {"cosine", v.cosine_to_seed}});
    }
    results.push_back({{"seed", seed}, {"variants", std::move(variants)}});
  }
  return nlohmann::json{{"config", config_json(config)},
                        {"results", std::move(results)},
                        {"skipped", batch.skipped}};
}

inline nlohmann::json report_json(const EvalReport& report) {
  nlohmann::json f = nlohmann::json::object();
  char key[32];
  for (const auto& [beta, value] : report.f_scores) {
    std::snprintf(key, sizeof(key), "%g", beta);
    f[key] = value;
  }
  return nlohmann::json{{"tp", report.tp},
                        {"fp", report.fp},
                        {"fn", report.fn},
                        {"precision", report.precision},
                        {"recall", report.recall},
                        {"precision_defined", report.precision_defined},
                        {"recall_defined", report.recall_defined},
                        {"f", std::move(f)}};
}

inline nlohmann::json score_json(const ScoreResult& result) {
  nlohmann::json per_keyword = nlohmann::json::object();
  for (const auto& [keyword, report] : result.per_keyword) {
    per_keyword[keyword] = report_json(report);
  }
  nlohmann::json macro_f = nlohmann::json::object();
  char key[32];
  for (const auto& [beta, value] : result.macro_f) {
    std::snprintf(key, sizeof(key), "%g", beta);
    macro_f[key] = value;
  }
  return nlohmann::json{{"micro", report_json(result.micro)},
                        {"per_keyword", std::move(per_keyword)},
                        {"macro",
                         {{"precision", result.macro_precision},
                          {"recall", result.macro_recall},
                          {"f", std::move(macro_f)}}}};
}

}  // namespace spellvar
