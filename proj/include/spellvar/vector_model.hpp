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
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "spellvar/errors.hpp"
#include "spellvar/util.hpp"

namespace spellvar {

enum class ModelFormat {
  kWord2vecText,
  kWord2vecBinary,
};

struct Neighbor {
  std::string token;
  double similarity;  // cosine, in [-1, 1]
};

/// An immutable vocabulary plus a row-unit-normalized embedding matrix.
///
/// Rows are L2-normalized once at load, so cosine similarity between two
/// tokens reduces to a dot product. Token matching is exact and
/// case-sensitive; callers fold case before lookup if their model requires
/// it. The object is safe to share across concurrent readers.
class VectorModel {
 public:
  /// Builds a model from per-token rows, normalizing each row.
  /// Throws ModelLoadError on duplicate tokens, inconsistent dimensions or
  /// zero-norm rows.
  static VectorModel from_rows(std::vector<std::string> vocab,
                               const std::vector<std::vector<float>>& rows) {
    if (vocab.size() != rows.size()) {
      throw ModelLoadError("vocab/matrix size mismatch");
    }
    VectorModel m;
    m.dim_ = rows.empty() ? 0 : rows.front().size();
    m.data_.reserve(vocab.size() * m.dim_);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.dim_) {
        throw ModelLoadError("row " + std::to_string(i) +
                             " ('" + vocab[i] + "'): expected " +
                             std::to_string(m.dim_) + " values, got " +
                             std::to_string(rows[i].size()));
      }
      m.data_.insert(m.data_.end(), rows[i].begin(), rows[i].end());
    }
    m.vocab_ = std::move(vocab);
    m.finish_load();
    return m;
  }

  static VectorModel load(const std::filesystem::path& path,
                          ModelFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open model file: " + path.string());
    VectorModel m = format == ModelFormat::kWord2vecText ? load_text(in)
                                                         : load_binary(in);
    m.finish_load();
    return m;
  }

  std::size_t size() const noexcept { return vocab_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<std::string>& vocab() const noexcept { return vocab_; }

  bool contains(std::string_view token) const {
    return index_.find(token) != index_.end();
  }

  std::optional<std::size_t> row_of(std::string_view token) const {
    auto it = index_.find(token);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::span<const float> row(std::size_t id) const {
    return {data_.data() + id * dim_, dim_};
  }

  /// Cosine similarity between two vocabulary tokens.
  /// Throws OovError (carrying the token) when either is missing.
  double cosine(std::string_view a, std::string_view b) const {
    const std::size_t ra = require(a);
    const std::size_t rb = require(b);
    if (ra == rb) return 1.0;
    return dot(ra, rb);
  }

  /// The k tokens most similar to `token` (excluding it), ordered by
  /// descending cosine; ties break toward the lower vocabulary row id. A k
  /// past the vocabulary size returns all size()-1 neighbors.
  std::vector<Neighbor> most_similar(std::string_view token,
                                     std::size_t k) const {
    const std::size_t target = require(token);
    if (k == 0) throw ConfigError("most_similar requires k >= 1");
    const std::size_t n = vocab_.size();

    std::vector<double> sims(n);
    for (std::size_t i = 0; i < n; ++i) {
      sims[i] = dot(target, i);
    }

    std::vector<std::uint32_t> order;
    order.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != target) order.push_back(static_cast<std::uint32_t>(i));
    }
    const std::size_t take = std::min(k, order.size());
    const auto better = [&sims](std::uint32_t lhs, std::uint32_t rhs) {
      if (sims[lhs] != sims[rhs]) return sims[lhs] > sims[rhs];
      return lhs < rhs;
    };
    std::partial_sort(order.begin(), order.begin() + take, order.end(), better);
    order.resize(take);

    std::vector<Neighbor> out;
    out.reserve(take);
    for (std::uint32_t id : order) {
      out.push_back({vocab_[id], std::clamp(sims[id], -1.0, 1.0)});
    }
    return out;
  }

  void save(const std::filesystem::path& path, ModelFormat format) const {
    std::string content;
    if (format == ModelFormat::kWord2vecText) {
      content = serialize_text();
    } else {
      content = serialize_binary();
    }
    atomic_write_file(path, content);
  }

  /// Digest over the vocabulary and shape, for provenance echo in outputs.
  std::string digest() const {
    std::uint64_t h = fnv1a64(std::to_string(vocab_.size()) + ":" +
                              std::to_string(dim_));
    for (const std::string& t : vocab_) {
      h = fnv1a64(t, h);
      h = fnv1a64("\n", h);
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(h));
    return std::string(buf);
  }

 private:
  VectorModel() = default;

  std::size_t require(std::string_view token) const {
    auto it = index_.find(token);
    if (it == index_.end()) {
      throw OovError(std::string(token),
                     "token not in model vocabulary: '" + std::string(token) +
                         "'");
    }
    return it->second;
  }

  double dot(std::size_t a, std::size_t b) const {
    const float* pa = data_.data() + a * dim_;
    const float* pb = data_.data() + b * dim_;
    double acc = 0.0;
    for (std::size_t d = 0; d < dim_; ++d) {
      acc += static_cast<double>(pa[d]) * static_cast<double>(pb[d]);
    }
    return acc;
  }

  /// Normalizes every row and builds the token index. Rejects zero-norm
  /// rows and duplicate tokens.
  void finish_load() {
    index_.reserve(vocab_.size());
    for (std::size_t i = 0; i < vocab_.size(); ++i) {
      double norm_sq = 0.0;
      float* r = data_.data() + i * dim_;
      for (std::size_t d = 0; d < dim_; ++d) {
        norm_sq += static_cast<double>(r[d]) * static_cast<double>(r[d]);
      }
      if (norm_sq == 0.0) {
        throw ModelLoadError("zero-norm vector for token '" + vocab_[i] +
                             "' (row " + std::to_string(i) + ")");
      }
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (std::size_t d = 0; d < dim_; ++d) {
        r[d] = static_cast<float>(r[d] * inv);
      }
      if (!index_.emplace(vocab_[i], i).second) {
        throw ModelLoadError("duplicate token '" + vocab_[i] + "' (row " +
                             std::to_string(i) + ")");
      }
    }
  }

  static std::pair<std::size_t, std::size_t> parse_header(
      const std::string& line) {
    std::size_t vocab_size = 0, dim = 0;
    const std::string_view t = trim(line);
    const char* p = t.data();
    const char* end = t.data() + t.size();
    auto r1 = std::from_chars(p, end, vocab_size);
    if (r1.ec != std::errc{} || r1.ptr == end || *r1.ptr != ' ') {
      throw ModelLoadError("malformed header line: '" + std::string(t) + "'");
    }
    auto r2 = std::from_chars(r1.ptr + 1, end, dim);
    if (r2.ec != std::errc{} || r2.ptr != end) {
      throw ModelLoadError("malformed header line: '" + std::string(t) + "'");
    }
    if (dim == 0) throw ModelLoadError("header declares dimension 0");
    return {vocab_size, dim};
  }

  static VectorModel load_text(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ModelLoadError("empty model file");
    const auto [vocab_size, dim] = parse_header(line);

    VectorModel m;
    m.dim_ = dim;
    m.vocab_.reserve(vocab_size);
    m.data_.reserve(vocab_size * dim);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      std::string_view rest = trim(line);
      if (rest.empty()) continue;
      const std::size_t sp = rest.find(' ');
      if (sp == std::string_view::npos) {
        throw ModelLoadError("line " + std::to_string(line_no) +
                             ": token without vector values");
      }
      std::string token(rest.substr(0, sp));
      rest.remove_prefix(sp + 1);
      for (std::size_t d = 0; d < dim; ++d) {
        while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
        float v = 0.0f;
        const auto [ptr, ec] =
            std::from_chars(rest.data(), rest.data() + rest.size(), v);
        if (ec != std::errc{}) {
          throw ModelLoadError("line " + std::to_string(line_no) + " ('" +
                               token + "'): expected " + std::to_string(dim) +
                               " values, found " + std::to_string(d));
        }
        rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
        m.data_.push_back(v);
      }
      if (!trim(rest).empty()) {
        throw ModelLoadError("line " + std::to_string(line_no) + " ('" +
                             token + "'): more than " + std::to_string(dim) +
                             " values");
      }
      m.vocab_.push_back(std::move(token));
    }
    if (m.vocab_.size() != vocab_size) {
      throw ModelLoadError("header declares " + std::to_string(vocab_size) +
                           " tokens, file contains " +
                           std::to_string(m.vocab_.size()));
    }
    return m;
  }

  static VectorModel load_binary(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ModelLoadError("empty model file");
    const auto [vocab_size, dim] = parse_header(line);

    VectorModel m;
    m.dim_ = dim;
    m.vocab_.reserve(vocab_size);
    m.data_.resize(vocab_size * dim);
    for (std::size_t i = 0; i < vocab_size; ++i) {
      std::string token;
      int c;
      // Tolerate newlines between entries; some writers emit them.
      while ((c = in.get()) != EOF && (c == '\n' || c == '\r' || c == ' ')) {
      }
      while (c != EOF && c != ' ') {
        if (c == '\n') {
          throw ModelLoadError("entry " + std::to_string(i) +
                               ": unexpected newline inside token");
        }
        token.push_back(static_cast<char>(c));
        c = in.get();
      }
      if (token.empty()) {
        throw ModelLoadError("entry " + std::to_string(i) +
                             ": truncated file (expected " +
                             std::to_string(vocab_size) + " entries)");
      }
      unsigned char raw[4];
      for (std::size_t d = 0; d < dim; ++d) {
        in.read(reinterpret_cast<char*>(raw), 4);
        if (in.gcount() != 4) {
          throw ModelLoadError("entry " + std::to_string(i) + " ('" + token +
                               "'): truncated vector data");
        }
        const std::uint32_t bits = static_cast<std::uint32_t>(raw[0]) |
                                   (static_cast<std::uint32_t>(raw[1]) << 8) |
                                   (static_cast<std::uint32_t>(raw[2]) << 16) |
                                   (static_cast<std::uint32_t>(raw[3]) << 24);
        m.data_[i * dim + d] = std::bit_cast<float>(bits);
      }
      m.vocab_.push_back(std::move(token));
    }
    return m;
  }

  std::string serialize_text() const {
    std::string out = std::to_string(vocab_.size()) + " " +
                      std::to_string(dim_) + "\n";
    char buf[48];
    for (std::size_t i = 0; i < vocab_.size(); ++i) {
      out += vocab_[i];
      const float* r = data_.data() + i * dim_;
      for (std::size_t d = 0; d < dim_; ++d) {
        std::snprintf(buf, sizeof(buf), " %.9g", static_cast<double>(r[d]));
        out += buf;
      }
      out += '\n';
    }
    return out;
  }

  std::string serialize_binary() const {
    std::string out = std::to_string(vocab_.size()) + " " +
                      std::to_string(dim_) + "\n";
    for (std::size_t i = 0; i < vocab_.size(); ++i) {
      out += vocab_[i];
      out += ' ';
      const float* r = data_.data() + i * dim_;
      for (std::size_t d = 0; d < dim_; ++d) {
        const auto bits = std::bit_cast<std::uint32_t>(r[d]);
        out.push_back(static_cast<char>(bits & 0xff));
        out.push_back(static_cast<char>((bits >> 8) & 0xff));
        out.push_back(static_cast<char>((bits >> 16) & 0xff));
        out.push_back(static_cast<char>((bits >> 24) & 0xff));
      }
    }
    return out;
  }

  struct TransparentHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<std::string> vocab_;
  std::unordered_map<std::string, std::size_t, TransparentHash,
                     std::equal_to<>>
      index_;
  std::size_t dim_ = 0;
  std::vector<float> data_;  // row-major, vocab_.size() x dim_
};

}  // namespace spellvar
