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
//
// Test-only reference implementations. These deliberately avoid the library
// code paths they are used to check: the edit-distance oracle is a plain
// recursion with memoization, and the neighborhood/closure oracles rescore
// raw vectors with their own cosine and a full sort.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "spellvar/edit_distance.hpp"
#include "spellvar/generator.hpp"
#include "spellvar/vector_model.hpp"

namespace testdata {

// Recursive edit distance with memoization; the reference for the DP.
inline std::size_t oracle_edit_distance(std::string_view a, std::string_view b,
                                        const spellvar::EditCosts& costs) {
  std::vector<std::size_t> memo((a.size() + 1) * (b.size() + 1),
                                static_cast<std::size_t>(-1));
  const std::size_t stride = b.size() + 1;

  auto rec = [&](auto&& self, std::size_t i, std::size_t j) -> std::size_t {
    std::size_t& slot = memo[i * stride + j];
    if (slot != static_cast<std::size_t>(-1)) return slot;
    std::size_t best;
    if (i == a.size()) {
      best = (b.size() - j) * costs.insertion;
    } else if (j == b.size()) {
      best = (a.size() - i) * costs.deletion;
    } else {
      best = self(self, i + 1, j + 1) +
             (a[i] == b[j] ? 0 : costs.substitution);
      best = std::min(best, self(self, i + 1, j) + costs.deletion);
      best = std::min(best, self(self, i, j + 1) + costs.insertion);
    }
    slot = best;
    return best;
  };
  return rec(rec, 0, 0);
}

// A raw (pre-normalization) embedding fixture. Kept as plain rows so
// oracles can compute their own normalized cosines.
struct RawModel {
  std::vector<std::string> vocab;
  std::vector<std::vector<float>> rows;

  spellvar::VectorModel build() const {
    return spellvar::VectorModel::from_rows(vocab, rows);
  }

  std::size_t row_of(std::string_view token) const {
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      if (vocab[i] == token) return i;
    }
    throw std::runtime_error("fixture token missing: " + std::string(token));
  }

  // Cosine in double precision straight from the raw rows; the reference
  // for the model's normalize-then-dot pipeline.
  double cosine(std::size_t a, std::size_t b) const {
    double dot = 0, na = 0, nb = 0;
    for (std::size_t d = 0; d < rows[a].size(); ++d) {
      dot += static_cast<double>(rows[a][d]) * rows[b][d];
      na += static_cast<double>(rows[a][d]) * rows[a][d];
      nb += static_cast<double>(rows[b][d]) * rows[b][d];
    }
    return dot / std::sqrt(na * nb);
  }
};

// Dot product over the model's normalized rows, accumulated in double;
// shared scoring so the ranking oracles below differ from the library only
// in their selection logic (full sort vs partial selection).
inline double model_dot(const spellvar::VectorModel& m, std::size_t a,
                        std::size_t b) {
  const auto ra = m.row(a);
  const auto rb = m.row(b);
  double acc = 0.0;
  for (std::size_t d = 0; d < ra.size(); ++d) {
    acc += static_cast<double>(ra[d]) * static_cast<double>(rb[d]);
  }
  return acc;
}

// Naive nearest neighbors: score every other token, full sort, same tie
// rule as the contract (descending similarity, then ascending row id).
inline std::vector<std::size_t> naive_top_k(const spellvar::VectorModel& m,
                                            std::size_t target,
                                            std::size_t k) {
  std::vector<std::pair<double, std::size_t>> scored;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i == target) continue;
    scored.emplace_back(model_dot(m, target, i), i);
  }
  std::sort(scored.begin(), scored.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first > y.first;
    return x.second < y.second;
  });
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < std::min(k, scored.size()); ++i) {
    ids.push_back(scored[i].second);
  }
  return ids;
}

// Order-independent fixpoint closure: keep adding tokens that are in the
// top-ssl neighborhood of any current member and pass lt against the seed,
// until nothing changes. Uses naive_top_k, not the library's frontier walk.
inline std::set<std::string> oracle_closure(
    const spellvar::VectorModel& m, const std::string& seed,
    const spellvar::GenerationConfig& config) {
  const std::size_t seed_row = *m.row_of(seed);
  std::set<std::size_t> members{seed_row};
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t member :
         std::vector<std::size_t>(members.begin(), members.end())) {
      for (std::size_t nb : naive_top_k(m, member, config.ssl)) {
        if (nb == seed_row || members.count(nb)) continue;
        if (config.seed_ratio(seed, m.vocab()[nb]) >= config.lt) {
          members.insert(nb);
          changed = true;
        }
      }
    }
  }
  std::set<std::string> out;
  for (std::size_t member : members) {
    if (member != seed_row) out.insert(m.vocab()[member]);
  }
  return out;
}

// The six-token fixture used across the generator tests. Angles are chosen
// so that with ssl=2:
//   - "asprin" and "tylenol" are the two closest tokens to "aspirin";
//   - "aspirn" enters only through the expansion of "asprin";
//   - "tylenol" fails the lexical filter at lt=0.75.
inline RawModel toy_model() {
  auto at = [](double degrees) {
    const double rad = degrees * std::acos(-1.0) / 180.0;
    // Length 2 checks that load-time normalization is doing its job.
    return std::vector<float>{static_cast<float>(2.0 * std::cos(rad)),
                              static_cast<float>(2.0 * std::sin(rad))};
  };
  RawModel m;
  m.vocab = {"aspirin", "asprin", "aspirn", "tylenol", "ibuprofen", "advil"};
  m.rows = {at(0), at(10), at(18), at(-5), at(-30), at(-40)};
  return m;
}

// Two lexically close tokens that are each other's nearest neighbor;
// exercises cycle termination.
inline RawModel mutual_nn_model() {
  RawModel m;
  m.vocab = {"abcdef", "abcdex", "unrelated", "distant"};
  m.rows = {{1.0f, 0.0f, 0.0f},
            {0.999f, 0.04f, 0.0f},
            {0.0f, 1.0f, 0.0f},
            {0.0f, 0.0f, 1.0f}};
  return m;
}

inline std::string random_token(std::mt19937& rng, std::size_t min_len,
                                std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len_dist(min_len, max_len);
  std::uniform_int_distribution<int> ch('a', 'e');
  std::string t(len_dist(rng), 'a');
  for (char& c : t) c = static_cast<char>(ch(rng));
  return t;
}

inline std::string mutate_token(std::mt19937& rng, std::string token,
                                std::size_t edits) {
  std::uniform_int_distribution<int> ch('a', 'e');
  for (std::size_t e = 0; e < edits; ++e) {
    std::uniform_int_distribution<int> op(0, 2);
    std::uniform_int_distribution<std::size_t> pos_dist(0, token.size() - 1);
    const std::size_t pos = token.empty() ? 0 : pos_dist(rng);
    switch (token.size() <= 3 ? 1 : op(rng)) {  // keep tokens from collapsing
      case 0:
        token.erase(pos, 1);
        break;
      case 1:
        token.insert(token.begin() + static_cast<std::ptrdiff_t>(pos),
                     static_cast<char>(ch(rng)));
        break;
      default:
        token[pos] = static_cast<char>(ch(rng));
        break;
    }
  }
  return token;
}

// Clustered random fixture: a handful of cluster roots, each surrounded by
// lexically mutated members with nearby vectors. Duplicate tokens are
// filtered; vectors get small per-member noise so neighborhoods are rich in
// near-ties and cycles.
struct RandomFixture {
  RawModel model;
  std::vector<std::string> seeds;
};

inline RandomFixture random_fixture(std::uint32_t seed_value) {
  std::mt19937 rng(seed_value);
  std::uniform_int_distribution<std::size_t> cluster_count(4, 8);
  std::uniform_int_distribution<std::size_t> cluster_size(2, 8);
  std::uniform_real_distribution<float> coord(-1.0f, 1.0f);
  std::uniform_real_distribution<float> noise(-0.15f, 0.15f);
  constexpr std::size_t kDim = 8;

  RandomFixture fx;
  std::set<std::string> used;
  const std::size_t clusters = cluster_count(rng);
  for (std::size_t c = 0; c < clusters; ++c) {
    std::string root = random_token(rng, 5, 10);
    if (!used.insert(root).second) continue;
    std::vector<float> center(kDim);
    for (float& v : center) v = coord(rng);

    fx.model.vocab.push_back(root);
    fx.model.rows.push_back(center);
    fx.seeds.push_back(root);

    const std::size_t members = cluster_size(rng);
    std::uniform_int_distribution<std::size_t> edit_count(1, 3);
    for (std::size_t m = 0; m < members; ++m) {
      std::string token = mutate_token(rng, root, edit_count(rng));
      if (token.empty() || !used.insert(token).second) continue;
      std::vector<float> row = center;
      for (float& v : row) v += noise(rng);
      fx.model.vocab.push_back(std::move(token));
      fx.model.rows.push_back(std::move(row));
    }
  }
  return fx;
}

inline std::set<std::string> variant_tokens(const spellvar::VariantSet& set) {
  std::set<std::string> out;
  for (const auto& v : set.variants) out.insert(v.token);
  return out;
}

}  // namespace testdata
