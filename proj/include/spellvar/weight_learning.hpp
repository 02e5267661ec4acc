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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "spellvar/edit_distance.hpp"
#include "spellvar/errors.hpp"
#include "spellvar/util.hpp"
#include "spellvar/weight_profile.hpp"

namespace spellvar {

/// A (keyword, candidate) pair with its manual label.
struct LabeledPair {
  std::string keyword;
  std::string candidate;
  bool is_misspelling = false;
};

/// Per-bucket mean window edit distances, split by label class. Counts are
/// kept so callers can detect buckets with no samples.
struct PositionDistributions {
  double bucket_width = 0.2;
  std::size_t window = 0;  // as requested; 0 = derived per keyword
  std::vector<double> true_mean;    // misspelling pairs
  std::vector<double> false_mean;   // non-misspelling pairs
  std::vector<std::size_t> true_count;
  std::vector<std::size_t> false_count;
};

/// Slides an n-character window jointly over each labeled pair, accumulates
/// the window edit distance into the bucket of the window's relative
/// position, and averages per bucket and class.
///
/// `window` 0 derives the length per pair from the keyword
/// (default_window_length). Throws LearningError when either class is
/// absent from `pairs`.
inline PositionDistributions estimate_distributions(
    std::span<const LabeledPair> pairs, std::size_t window,
    double bucket_width, const EditCosts& costs = EditCosts::ratio()) {
  const std::size_t buckets = bucket_count(bucket_width);
  PositionDistributions dist;
  dist.bucket_width = bucket_width;
  dist.window = window;
  dist.true_mean.assign(buckets, 0.0);
  dist.false_mean.assign(buckets, 0.0);
  dist.true_count.assign(buckets, 0);
  dist.false_count.assign(buckets, 0);

  bool saw_true = false, saw_false = false;
  for (const LabeledPair& pair : pairs) {
    (pair.is_misspelling ? saw_true : saw_false) = true;
    auto& sums = pair.is_misspelling ? dist.true_mean : dist.false_mean;
    auto& counts = pair.is_misspelling ? dist.true_count : dist.false_count;

    const std::size_t n =
        window > 0 ? window : default_window_length(pair.keyword.size());
    const std::size_t longest =
        std::max(pair.keyword.size(), pair.candidate.size());
    const std::size_t window_count = longest > n ? longest - n + 1 : 1;
    for (std::size_t p = 0; p < window_count; ++p) {
      const std::string_view wa = p < pair.keyword.size()
                                      ? std::string_view(pair.keyword).substr(p, n)
                                      : std::string_view{};
      const std::string_view wb =
          p < pair.candidate.size()
              ? std::string_view(pair.candidate).substr(p, n)
              : std::string_view{};
      const std::size_t b = relative_position_bucket(p, window_count, bucket_width);
      sums[b] += static_cast<double>(edit_distance(wa, wb, costs));
      counts[b] += 1;
    }
  }
  if (!saw_true) {
    throw LearningError("no pairs labeled as misspellings in the input");
  }
  if (!saw_false) {
    throw LearningError("no pairs labeled as non-misspellings in the input");
  }
  for (std::size_t b = 0; b < buckets; ++b) {
    if (dist.true_count[b] > 0) dist.true_mean[b] /= dist.true_count[b];
    if (dist.false_count[b] > 0) dist.false_mean[b] /= dist.false_count[b];
  }
  return dist;
}

namespace detail {

inline double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace detail

/// Turns class distance distributions into per-bucket weights.
///
/// raw[i] = false-class mean / true-class mean; raw is normalized by its
/// median, then deviations from 1 are rescaled into the [1-k, 1+k] band:
/// the largest above-median deviation maps to exactly 1+k and the largest
/// below-median deviation to exactly 1-k. Indistinguishable classes yield
/// the all-ones profile. Weights are floored at a tiny positive epsilon so
/// they stay strictly positive at k=1.
///
/// Throws ConfigError for scale outside (0,1] and LearningError when a
/// bucket is empty in either class or has a zero true-class mean (the ratio
/// would be undefined; use more data or wider buckets).
inline WeightProfile learn_profile(const PositionDistributions& dist,
                                   double scale, std::size_t window,
                                   double bucket_width) {
  if (!(scale > 0.0) || scale > 1.0) {
    throw ConfigError("scale must be in (0,1]");
  }
  const std::size_t buckets = bucket_count(bucket_width);
  if (dist.true_mean.size() != buckets || dist.false_mean.size() != buckets) {
    throw LearningError("distribution bucket count does not match bucket_width");
  }

  std::vector<double> raw(buckets);
  for (std::size_t b = 0; b < buckets; ++b) {
    if (dist.true_count[b] == 0 || dist.false_count[b] == 0) {
      throw LearningError(
          "bucket " + std::to_string(b) +
          " has no samples in one class; use a larger dataset or wider buckets");
    }
    if (!(dist.true_mean[b] > 0.0)) {
      throw LearningError(
          "bucket " + std::to_string(b) +
          " has zero mean distance for true misspellings; the weight ratio is "
          "undefined (use a larger dataset or wider buckets)");
    }
    raw[b] = dist.false_mean[b] / dist.true_mean[b];
  }

  const double med = detail::median(raw);
  std::vector<double> deviation(buckets);
  double max_pos = 0.0, max_neg = 0.0;
  for (std::size_t b = 0; b < buckets; ++b) {
    deviation[b] = raw[b] / med - 1.0;
    max_pos = std::max(max_pos, deviation[b]);
    max_neg = std::max(max_neg, -deviation[b]);
  }

  WeightProfile profile;
  profile.bucket_width = bucket_width;
  profile.window = window;
  profile.scale = scale;
  profile.weights.assign(buckets, 1.0);
  for (std::size_t b = 0; b < buckets; ++b) {
    double w = 1.0;
    if (deviation[b] > 0.0) {
      w = 1.0 + scale * deviation[b] / max_pos;
    } else if (deviation[b] < 0.0) {
      w = 1.0 - scale * (-deviation[b]) / max_neg;
    }
    profile.weights[b] = std::max(w, 1e-9);
  }
  profile.validate();
  return profile;
}

/// Reads labeled pairs from a delimiter-separated file: one
/// keyword/candidate/label record per line, label 1 for a misspelling and 0
/// otherwise. Blank lines and lines starting with '#' are skipped.
inline std::vector<LabeledPair> read_labeled_pairs(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open labeled pairs file: " + path.string());
  std::vector<LabeledPair> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const std::vector<std::string> fields = split_record(t);
    if (fields.size() != 3) {
      throw DataError("labeled pairs line " + std::to_string(line_no) +
                      ": expected 3 fields, got " +
                      std::to_string(fields.size()));
    }
    if (fields[2] != "0" && fields[2] != "1") {
      throw DataError("labeled pairs line " + std::to_string(line_no) +
                      ": label must be 0 or 1, got '" + fields[2] + "'");
    }
    LabeledPair pair{fields[0], fields[1], fields[2] == "1"};
    if (pair.keyword.empty() || pair.candidate.empty()) {
      throw DataError("labeled pairs line " + std::to_string(line_no) +
                      ": empty keyword or candidate");
    }
    if (pair.keyword == pair.candidate) {
      throw DataError("labeled pairs line " + std::to_string(line_no) +
                      ": keyword equals candidate ('" + pair.keyword + "')");
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

}  // namespace spellvar
