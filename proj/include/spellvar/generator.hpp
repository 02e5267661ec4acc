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
#include <cstdio>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "spellvar/edit_distance.hpp"
#include "spellvar/errors.hpp"
#include "spellvar/util.hpp"
#include "spellvar/vector_model.hpp"
#include "spellvar/weight_profile.hpp"

namespace spellvar {

enum class RatioMode {
  kPlain,     // lev_ratio against the seed
  kWeighted,  // weighted_lev_ratio against the seed, needs a profile
};

inline const char* ratio_mode_name(RatioMode mode) {
  return mode == RatioMode::kWeighted ? "weighted" : "default";
}

inline RatioMode ratio_mode_from_name(std::string_view name) {
  if (name == "default") return RatioMode::kPlain;
  if (name == "weighted") return RatioMode::kWeighted;
  throw ConfigError("unknown mode '" + std::string(name) +
                    "' (expected 'default' or 'weighted')");
}

/// Seed-independent parameters of a generation run.
struct GenerationConfig {
  std::size_t ssl = 4000;  // nearest neighbors fetched per expanded term
  double lt = 0.75;        // ratio-against-seed acceptance threshold
  RatioMode mode = RatioMode::kPlain;
  std::optional<WeightProfile> profile;  // required iff mode == kWeighted
  RatioFormula formula = RatioFormula::kLengthSum;
  bool case_fold = true;  // lowercase seeds before vocabulary lookup

  void validate() const {
    if (ssl < 1) throw ConfigError("ssl must be >= 1");
    if (lt < 0.0 || lt > 1.0) throw ConfigError("lt must be in [0,1]");
    if (mode == RatioMode::kWeighted) {
      if (!profile.has_value()) {
        throw ConfigError("weighted mode requires a weight profile");
      }
      profile->validate();
    }
  }

  /// The lexical similarity of `candidate` to `seed` under this config.
  double seed_ratio(std::string_view seed, std::string_view candidate) const {
    if (mode == RatioMode::kWeighted) {
      return weighted_lev_ratio(seed, candidate, *profile, formula);
    }
    return lev_ratio(seed, candidate, formula);
  }
};

struct Variant {
  std::string token;
  double ratio;           // similarity to the seed under the config's mode
  double cosine_to_seed;  // embedding similarity to the seed
};

/// The discovered variants of one seed, ordered by descending ratio and
/// then ascending token. The seed itself never appears and every ratio
/// meets the generating config's lt.
struct VariantSet {
  std::string seed;
  std::vector<Variant> variants;
};

/// Expands a seed keyword to its full variant closure.
///
/// Starting from the seed, repeatedly pops a term, fetches its ssl nearest
/// neighbors in the model, and accepts every neighbor whose lexical ratio
/// against the ORIGINAL seed meets lt. Accepted terms are expanded in turn,
/// so variants of variants are found transitively; anchoring the ratio to
/// the seed bounds the reachable set and guarantees termination. The result
/// is deterministic given model, seed and config.
///
/// Throws OovError when the (case-folded) seed is missing from the model
/// vocabulary; fuzzy candidate extraction can be used to look for spelling
/// candidates of such seeds instead.
inline VariantSet generate_variants(std::string_view seed,
                                    const VectorModel& model,
                                    const GenerationConfig& config) {
  config.validate();
  const std::string seed_key =
      config.case_fold ? to_lower_ascii(seed) : std::string(seed);
  if (!model.contains(seed_key)) {
    throw OovError(seed_key, "seed '" + seed_key +
                                 "' is not in the model vocabulary; try fuzzy "
                                 "candidate extraction for it instead");
  }

  std::vector<std::string> frontier{seed_key};  // LIFO, like the recursion
  std::unordered_set<std::string> seen{seed_key};
  std::unordered_map<std::string, double> accepted;

  while (!frontier.empty()) {
    const std::string term = std::move(frontier.back());
    frontier.pop_back();
    for (const Neighbor& nb : model.most_similar(term, config.ssl)) {
      if (nb.token == seed_key) continue;
      if (accepted.find(nb.token) == accepted.end()) {
        const double ratio = config.seed_ratio(seed_key, nb.token);
        if (ratio < config.lt) continue;
        accepted.emplace(nb.token, ratio);
      }
      if (seen.insert(nb.token).second) {
        frontier.push_back(nb.token);
      }
    }
  }

  VariantSet out;
  out.seed = seed_key;
  out.variants.reserve(accepted.size());
  for (const auto& [token, ratio] : accepted) {
    out.variants.push_back({token, ratio, model.cosine(seed_key, token)});
  }
  std::sort(out.variants.begin(), out.variants.end(),
            [](const Variant& a, const Variant& b) {
              if (a.ratio != b.ratio) return a.ratio > b.ratio;
              return a.token < b.token;
            });
  return out;
}

struct BatchResult {
  std::map<std::string, VariantSet> results;  // keyed by (folded) seed
  std::vector<std::string> skipped;           // out-of-vocabulary seeds
};

/// Runs generate_variants for each seed. Out-of-vocabulary seeds are
/// collected in `skipped` rather than failing the batch; a batch where every
/// seed is out of vocabulary throws.
inline BatchResult generate_batch(std::span<const std::string> seeds,
                                  const VectorModel& model,
                                  const GenerationConfig& config) {
  config.validate();
  if (seeds.empty()) throw ConfigError("seed list is empty");
  BatchResult batch;
  for (const std::string& seed : seeds) {
    try {
      VariantSet set = generate_variants(seed, model, config);
      std::string key = set.seed;
      batch.results.emplace(std::move(key), std::move(set));
    } catch (const OovError& e) {
      batch.skipped.push_back(e.token());
    }
  }
  if (batch.results.empty()) {
    std::string joined;
    for (const std::string& s : batch.skipped) {
      if (!joined.empty()) joined += ", ";
      joined += s;
    }
    throw OovError(batch.skipped.empty() ? "" : batch.skipped.front(),
                   "every seed is out of vocabulary: " + joined);
  }
  return batch;
}

// --- serialization -----------------------------------------------------------

/// Flat pipeline format: one "seed<TAB>variant<TAB>ratio<TAB>cosine" line per
/// variant, seeds in map order, variants in their ranked order.
inline std::string flat_variants(const BatchResult& batch) {
  std::string out;
  char buf[64];
  for (const auto& [seed, set] : batch.results) {
    for (const Variant& v : set.variants) {
      std::snprintf(buf, sizeof(buf), "\t%.6f\t%.6f", v.ratio,
                    v.cosine_to_seed);
      out += seed;
      out += '\t';
      out += v.token;
      out += buf;
      out += '\n';
    }
  }
  return out;
}

}  // namespace spellvar
