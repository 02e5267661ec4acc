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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "spellvar/edit_distance.hpp"
#include "spellvar/errors.hpp"
#include "spellvar/util.hpp"

namespace spellvar {

/// Number of equal-width buckets covering the relative-position range [0,1].
inline std::size_t bucket_count(double bucket_width) {
  if (!(bucket_width > 0.0) || bucket_width > 1.0) {
    throw ConfigError("bucket_width must be in (0,1]");
  }
  // The small epsilon keeps widths like 1/3 from producing a spurious
  // fourth bucket out of floating-point rounding.
  return static_cast<std::size_t>(std::ceil(1.0 / bucket_width - 1e-9));
}

/// Maps a sliding-window start index to its relative-position bucket.
/// `p` is the start index, `window_count` the total number of start
/// positions. Relative position p/(window_count-1) is floored into buckets
/// of `bucket_width`; position 1 clamps into the last bucket and a single
/// window maps to bucket 0.
inline std::size_t relative_position_bucket(std::size_t p,
                                            std::size_t window_count,
                                            double bucket_width) {
  const std::size_t buckets = bucket_count(bucket_width);
  if (window_count <= 1) return 0;
  const double rel =
      static_cast<double>(p) / static_cast<double>(window_count - 1);
  const auto idx = static_cast<std::size_t>(rel / bucket_width);
  return std::min(idx, buckets - 1);
}

/// Window length used when a profile does not pin one: half the keyword,
/// never shorter than 3 characters.
inline std::size_t default_window_length(std::size_t keyword_length) {
  return std::max<std::size_t>(3, keyword_length / 2);
}

/// Per-bucket weights for position-weighted similarity scoring.
///
/// `weights` holds one multiplier per relative-position bucket. `window` is
/// the sliding-window length in characters; 0 means "derive from the keyword
/// at scoring time" (see default_window_length). `scale` records the k used
/// when the profile was learned; learned weights lie in [1-k, 1+k].
struct WeightProfile {
  double bucket_width = 0.2;
  std::vector<double> weights;
  std::size_t window = 0;
  double scale = 0.0;

  static WeightProfile uniform(std::size_t window = 0,
                               double bucket_width = 0.2) {
    WeightProfile p;
    p.bucket_width = bucket_width;
    p.window = window;
    p.weights.assign(bucket_count(bucket_width), 1.0);
    return p;
  }

  void validate() const {
    const std::size_t expected = bucket_count(bucket_width);
    if (weights.size() != expected) {
      throw ConfigError("weight profile has " + std::to_string(weights.size()) +
                        " weights, expected " + std::to_string(expected) +
                        " for bucket_width " + std::to_string(bucket_width));
    }
    for (double w : weights) {
      if (!(w > 0.0)) throw ConfigError("weight profile weights must be > 0");
    }
    if (scale < 0.0 || scale > 1.0) {
      throw ConfigError("weight profile scale must be in [0,1]");
    }
  }
};

/// Position-weighted similarity ratio in [0,1].
///
/// A window of n characters slides jointly over both strings from the same
/// start index; each window pair contributes its lev_ratio, weighted by the
/// bucket of the window's relative position. The result is the weighted mean
/// of the window ratios. Window substrings are clamped at string end; a
/// window that falls entirely past the shorter string scores 0 against the
/// longer one's remainder.
inline double weighted_lev_ratio(std::string_view keyword,
                                 std::string_view candidate,
                                 const WeightProfile& profile,
                                 RatioFormula formula = RatioFormula::kLengthSum) {
  profile.validate();
  if (keyword.empty() && candidate.empty()) {
    throw DataError("weighted_lev_ratio is undefined for two empty strings");
  }
  const std::size_t n =
      profile.window > 0 ? profile.window : default_window_length(keyword.size());
  const std::size_t longest = std::max(keyword.size(), candidate.size());
  const std::size_t window_count = longest > n ? longest - n + 1 : 1;

  double weighted_sum = 0.0;
  double weight_total = 0.0;
  for (std::size_t p = 0; p < window_count; ++p) {
    const std::string_view wa =
        p < keyword.size() ? keyword.substr(p, n) : std::string_view{};
    const std::string_view wb =
        p < candidate.size() ? candidate.substr(p, n) : std::string_view{};
    // p < longest, so at most one of the two windows is empty; lev_ratio
    // scores an empty-vs-non-empty pair 0.
    const double ratio =
        (wa.empty() && wb.empty()) ? 0.0 : lev_ratio(wa, wb, formula);
    const double w =
        profile.weights[relative_position_bucket(p, window_count,
                                                 profile.bucket_width)];
    weighted_sum += w * ratio;
    weight_total += w;
  }
  return weighted_sum / weight_total;
}

// --- profile file format ---------------------------------------------------
//
// Flat key-value text, one field per line, weights in bucket order:
//
//   bucket_width 0.2
//   window 5
//   scale 0.05
//   weights 1.05 1.025 1 0.975 0.95
//
// Field names are stable; unknown keys are rejected.

inline std::string serialize_profile(const WeightProfile& profile) {
  profile.validate();
  char buf[64];
  std::string out;
  std::snprintf(buf, sizeof(buf), "%.17g", profile.bucket_width);
  out += "bucket_width ";
  out += buf;
  out += "\nwindow " + std::to_string(profile.window);
  std::snprintf(buf, sizeof(buf), "%.17g", profile.scale);
  out += "\nscale ";
  out += buf;
  out += "\nweights";
  for (double w : profile.weights) {
    std::snprintf(buf, sizeof(buf), "%.17g", w);
    out += ' ';
    out += buf;
  }
  out += '\n';
  return out;
}

namespace detail {

inline double parse_double_field(std::string_view text, const std::string& key) {
  const std::string_view t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw DataError("profile field '" + key + "': bad number '" +
                    std::string(t) + "'");
  }
  return value;
}

}  // namespace detail

inline WeightProfile parse_profile(std::string_view text) {
  WeightProfile profile;
  bool saw_bucket_width = false, saw_window = false, saw_scale = false,
       saw_weights = false;
  for (const std::string& raw : split(text, '\n')) {
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const std::size_t sp = line.find(' ');
    if (sp == std::string_view::npos) {
      throw DataError("profile line has no value: '" + std::string(line) + "'");
    }
    const std::string key(line.substr(0, sp));
    const std::string_view rest = line.substr(sp + 1);
    if (key == "bucket_width") {
      profile.bucket_width = detail::parse_double_field(rest, key);
      saw_bucket_width = true;
    } else if (key == "window") {
      const double v = detail::parse_double_field(rest, key);
      if (v < 0 || v != std::floor(v)) {
        throw DataError("profile field 'window': not a non-negative integer");
      }
      profile.window = static_cast<std::size_t>(v);
      saw_window = true;
    } else if (key == "scale") {
      profile.scale = detail::parse_double_field(rest, key);
      saw_scale = true;
    } else if (key == "weights") {
      profile.weights.clear();
      for (const std::string& field : split(std::string(trim(rest)), ' ')) {
        if (field.empty()) continue;
        profile.weights.push_back(detail::parse_double_field(field, key));
      }
      saw_weights = true;
    } else {
      throw DataError("unknown profile field '" + key + "'");
    }
  }
  if (!saw_bucket_width || !saw_window || !saw_scale || !saw_weights) {
    throw DataError(
        "profile is missing one of: bucket_width, window, scale, weights");
  }
  try {
    profile.validate();
  } catch (const ConfigError& e) {
    throw DataError(std::string("invalid profile: ") + e.what());
  }
  return profile;
}

inline WeightProfile load_profile(const std::filesystem::path& path) {
  return parse_profile(read_file(path));
}

inline void save_profile(const WeightProfile& profile,
                         const std::filesystem::path& path) {
  atomic_write_file(path, serialize_profile(profile));
}

}  // namespace spellvar
