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
#include <cstddef>
#include <string_view>
#include <vector>

#include "spellvar/errors.hpp"

namespace spellvar {

/// Per-operation costs for the edit-distance dynamic program.
///
/// Two conventions are used in this project:
///   - ratio():  insertion 1, deletion 1, substitution 2. The convention
///     behind the similarity ratio; a substitution counts as a
///     delete-plus-insert.
///   - search(): all operations cost 1. Plain Levenshtein distance, used
///     for fuzzy candidate extraction.
struct EditCosts {
  unsigned insertion = 1;
  unsigned deletion = 1;
  unsigned substitution = 2;

  static constexpr EditCosts ratio() { return {1, 1, 2}; }
  static constexpr EditCosts search() { return {1, 1, 1}; }

  /// False when substitution > insertion + deletion, in which case the
  /// substitution op can never appear in a cheapest script and the distance
  /// degenerates to indel distance.
  constexpr bool substitution_effective() const {
    return substitution <= insertion + deletion;
  }
};

/// Cost of the cheapest edit script transforming `a` into `b`.
/// Classic two-row dynamic program; O(len(a)*len(b)) time, O(len(b)) space.
inline std::size_t edit_distance(std::string_view a, std::string_view b,
                                 const EditCosts& costs = EditCosts::ratio()) {
  const std::size_t la = a.size();
  const std::size_t lb = b.size();
  if (la == 0) return lb * costs.insertion;
  if (lb == 0) return la * costs.deletion;

  std::vector<std::size_t> row(lb + 1);
  for (std::size_t j = 0; j <= lb; ++j) row[j] = j * costs.insertion;

  for (std::size_t i = 1; i <= la; ++i) {
    std::size_t diag = row[0];  // dp[i-1][j-1]
    row[0] = i * costs.deletion;
    for (std::size_t j = 1; j <= lb; ++j) {
      const std::size_t up = row[j];  // dp[i-1][j]
      std::size_t best = diag + (a[i - 1] == b[j - 1] ? 0 : costs.substitution);
      best = std::min(best, up + costs.deletion);
      best = std::min(best, row[j - 1] + costs.insertion);
      row[j] = best;
      diag = up;
    }
  }
  return row[lb];
}

/// Normalization rule for turning an edit distance into a similarity ratio.
///
/// LengthSum divides by len(a)+len(b) and is the default: together with
/// substitution cost 2 it yields the standard similarity-ratio convention
/// (1.0 iff equal, 0.0 for fully disjoint strings). MaxLength divides by
/// max(len(a),len(b)); with substitution cost 2 that quotient can exceed 1,
/// so the result is clamped at 0.
enum class RatioFormula {
  kLengthSum,
  kMaxLength,
};

/// Similarity ratio in [0,1] under the cost-2 substitution convention.
/// Throws DataError when both strings are empty (the ratio is undefined).
inline double lev_ratio(std::string_view a, std::string_view b,
                        RatioFormula formula = RatioFormula::kLengthSum) {
  if (a.empty() && b.empty()) {
    throw DataError("lev_ratio is undefined for two empty strings");
  }
  const double dist =
      static_cast<double>(edit_distance(a, b, EditCosts::ratio()));
  double denom;
  switch (formula) {
    case RatioFormula::kMaxLength:
      denom = static_cast<double>(std::max(a.size(), b.size()));
      break;
    case RatioFormula::kLengthSum:
    default:
      denom = static_cast<double>(a.size() + b.size());
      break;
  }
  const double ratio = 1.0 - dist / denom;
  return ratio < 0.0 ? 0.0 : ratio;
}

}  // namespace spellvar
