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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spellvar/edit_distance.hpp"
#include "spellvar/errors.hpp"
#include "spellvar/generator.hpp"
#include "spellvar/util.hpp"
#include "spellvar/vector_model.hpp"

namespace spellvar {

/// Keyword -> set of true misspellings.
struct GoldStandard {
  std::map<std::string, std::set<std::string>> entries;

  /// Reads one (keyword, misspelling) pair per line, tab- or
  /// comma-separated. Blank lines and '#' comments are skipped.
  static GoldStandard load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open gold standard file: " + path.string());
    GoldStandard gold;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const std::string_view t = trim(line);
      if (t.empty() || t.front() == '#') continue;
      const std::vector<std::string> fields = split_record(t);
      if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
        throw DataError("gold standard line " + std::to_string(line_no) +
                        ": expected 'keyword<sep>misspelling'");
      }
      if (fields[0] == fields[1]) {
        throw DataError("gold standard line " + std::to_string(line_no) +
                        ": keyword listed as its own misspelling ('" +
                        fields[0] + "')");
      }
      gold.entries[fields[0]].insert(fields[1]);
    }
    return gold;
  }
};

/// F_beta from precision and recall: (1+b^2)*P*R / (b^2*P + R).
/// Defined as 0 when the denominator vanishes.
inline double f_beta(double precision, double recall, double beta) {
  const double b2 = beta * beta;
  const double denom = b2 * precision + recall;
  if (denom <= 0.0) return 0.0;
  return (1.0 + b2) * precision * recall / denom;
}

/// Counts plus the metrics derived from them. When a metric's denominator
/// is zero the value is reported as 0 with the corresponding *_defined flag
/// cleared.
struct EvalReport {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  std::map<double, double> f_scores;  // beta -> F_beta
  bool precision_defined = false;
  bool recall_defined = false;

  static EvalReport from_counts(std::size_t tp, std::size_t fp, std::size_t fn,
                                std::span<const double> betas) {
    EvalReport r;
    r.tp = tp;
    r.fp = fp;
    r.fn = fn;
    r.precision_defined = tp + fp > 0;
    r.recall_defined = tp + fn > 0;
    r.precision =
        r.precision_defined ? static_cast<double>(tp) / (tp + fp) : 0.0;
    r.recall = r.recall_defined ? static_cast<double>(tp) / (tp + fn) : 0.0;
    for (double beta : betas) {
      r.f_scores[beta] = f_beta(r.precision, r.recall, beta);
    }
    return r;
  }
};

/// Micro-averaged report (one pooled tp/fp/fn count across all evaluated
/// keywords) plus per-keyword sub-reports and macro averages.
struct ScoreResult {
  EvalReport micro;
  std::map<std::string, EvalReport> per_keyword;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  std::map<double, double> macro_f;
};

/// Scores a prediction map against the gold standard. Every predicted
/// keyword must exist in the gold standard; unknown keywords raise a
/// DataError that lists them. Gold keywords without a prediction entry are
/// not evaluated.
inline ScoreResult score(
    const std::map<std::string, std::set<std::string>>& predictions,
    const GoldStandard& gold, std::span<const double> betas) {
  if (gold.entries.empty()) throw DataError("gold standard is empty");
  std::string unknown;
  for (const auto& [keyword, _] : predictions) {
    if (gold.entries.find(keyword) == gold.entries.end()) {
      if (!unknown.empty()) unknown += ", ";
      unknown += keyword;
    }
  }
  if (!unknown.empty()) {
    throw DataError("keywords not in the gold standard: " + unknown);
  }

  ScoreResult result;
  std::size_t tp = 0, fp = 0, fn = 0;
  for (const auto& [keyword, predicted] : predictions) {
    const std::set<std::string>& truth = gold.entries.at(keyword);
    std::size_t ktp = 0, kfp = 0;
    for (const std::string& token : predicted) {
      if (truth.count(token)) {
        ++ktp;
      } else {
        ++kfp;
      }
    }
    const std::size_t kfn = truth.size() - ktp;
    tp += ktp;
    fp += kfp;
    fn += kfn;
    result.per_keyword.emplace(keyword,
                               EvalReport::from_counts(ktp, kfp, kfn, betas));
  }
  result.micro = EvalReport::from_counts(tp, fp, fn, betas);

  const double n = static_cast<double>(result.per_keyword.size());
  if (n > 0) {
    for (const auto& [_, report] : result.per_keyword) {
      result.macro_precision += report.precision / n;
      result.macro_recall += report.recall / n;
      for (const auto& [beta, f] : report.f_scores) {
        result.macro_f[beta] += f / n;
      }
    }
  }
  return result;
}

struct SweepRow {
  RatioMode mode;
  double lt;
  EvalReport report;
};

/// Generates and scores once per lt value, holding everything else in
/// `config` fixed. Rows come back in the order of `lt_values`.
inline std::vector<SweepRow> threshold_sweep(
    std::span<const std::string> seeds, const VectorModel& model,
    GenerationConfig config, const GoldStandard& gold,
    std::span<const double> lt_values, std::span<const double> betas) {
  if (lt_values.empty()) throw ConfigError("no lt values to sweep");
  for (double lt : lt_values) {
    if (lt < 0.0 || lt > 1.0) {
      throw ConfigError("sweep lt value out of [0,1]: " + std::to_string(lt));
    }
  }
  std::vector<SweepRow> rows;
  rows.reserve(lt_values.size());
  for (double lt : lt_values) {
    config.lt = lt;
    const BatchResult batch = generate_batch(seeds, model, config);
    std::map<std::string, std::set<std::string>> predictions;
    for (const auto& [seed, set] : batch.results) {
      std::set<std::string>& tokens = predictions[seed];
      for (const Variant& v : set.variants) tokens.insert(v.token);
    }
    rows.push_back({config.mode, lt, score(predictions, gold, betas).micro});
  }
  return rows;
}

/// Renders sweep rows as a tab-separated table with one column per beta.
inline std::string sweep_table(std::span<const SweepRow> rows,
                               std::span<const double> betas) {
  std::string out = "mode\tlt\ttp\tfp\tfn\tprecision\trecall";
  char buf[64];
  for (double beta : betas) {
    std::snprintf(buf, sizeof(buf), "\tf_%g", beta);
    out += buf;
  }
  out += '\n';
  for (const SweepRow& row : rows) {
    std::snprintf(buf, sizeof(buf), "%s\t%g\t%zu\t%zu\t%zu\t%.6f\t%.6f",
                  ratio_mode_name(row.mode), row.lt, row.report.tp,
                  row.report.fp, row.report.fn, row.report.precision,
                  row.report.recall);
    out += buf;
    for (double beta : betas) {
      std::snprintf(buf, sizeof(buf), "\t%.6f", row.report.f_scores.at(beta));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

struct Candidate {
  std::string token;
  std::size_t distance;
};

/// All vocabulary tokens within plain edit distance min(6, len(keyword)-2)
/// of the keyword, excluding the keyword itself; ascending by distance,
/// then token. Intended as annotation input when building a gold standard.
inline std::vector<Candidate> fuzzy_candidates(
    std::string_view keyword, std::span<const std::string> vocabulary) {
  if (keyword.size() < 3) {
    throw ConfigError(
        "fuzzy candidate threshold is not positive for keyword '" +
        std::string(keyword) + "' (need length >= 3)");
  }
  const std::size_t threshold = std::min<std::size_t>(6, keyword.size() - 2);
  std::vector<Candidate> out;
  for (const std::string& token : vocabulary) {
    if (token == keyword) continue;
    const std::size_t len_gap = token.size() > keyword.size()
                                    ? token.size() - keyword.size()
                                    : keyword.size() - token.size();
    if (len_gap > threshold) continue;  // length gap lower-bounds distance
    const std::size_t d = edit_distance(keyword, token, EditCosts::search());
    if (d <= threshold) out.push_back({token, d});
  }
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.token < b.token;
  });
  return out;
}

namespace detail {

inline bool is_token_byte(unsigned char c) {
  // Non-ASCII bytes stay inside tokens so UTF-8 sequences are not split.
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z') || c >= 0x80;
}

}  // namespace detail

/// Counts documents (lines) containing at least one keyword as a whole
/// token. Documents split on non-alphanumeric boundaries; matching is
/// case-insensitive; each document counts at most once.
inline std::size_t retrieval_count(std::istream& corpus,
                                   const std::set<std::string>& keywords) {
  if (keywords.empty()) throw ConfigError("keyword set is empty");
  std::set<std::string> folded;
  for (const std::string& k : keywords) folded.insert(to_lower_ascii(k));

  std::size_t matched = 0;
  std::string line;
  while (std::getline(corpus, line)) {
    std::size_t i = 0;
    bool hit = false;
    while (i < line.size() && !hit) {
      while (i < line.size() &&
             !detail::is_token_byte(static_cast<unsigned char>(line[i]))) {
        ++i;
      }
      std::size_t start = i;
      while (i < line.size() &&
             detail::is_token_byte(static_cast<unsigned char>(line[i]))) {
        ++i;
      }
      if (i > start) {
        std::string token =
            to_lower_ascii(std::string_view(line).substr(start, i - start));
        hit = folded.count(token) > 0;
      }
    }
    if (hit) ++matched;
  }
  return matched;
}

inline std::size_t retrieval_count(const std::filesystem::path& corpus_path,
                                   const std::set<std::string>& keywords) {
  std::ifstream in(corpus_path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus: " + corpus_path.string());
  return retrieval_count(in, keywords);
}

/// Fractional increase in matched documents: (expanded - base) / base.
inline double retrieval_gain(std::size_t base_count,
                             std::size_t expanded_count) {
  if (base_count == 0) {
    throw DataError("retrieval gain is undefined for a base count of 0");
  }
  return (static_cast<double>(expanded_count) -
          static_cast<double>(base_count)) /
         static_cast<double>(base_count);
}

}  // namespace spellvar
