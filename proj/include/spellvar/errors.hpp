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

#include <stdexcept>
#include <string>
#include <utility>

namespace spellvar {

/// Base class for all spellvar failures. Callers that do not care about the
/// specific kind can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A model file could not be parsed. The message names the offending line
/// or token.
class ModelLoadError : public Error {
 public:
  using Error::Error;
};

/// A token was looked up that is not in the model vocabulary.
class OovError : public Error {
 public:
  explicit OovError(std::string token, const std::string& message)
      : Error(message), token_(std::move(token)) {}

  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

/// Inconsistent or out-of-range parameters (e.g. weighted mode without a
/// weight profile).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The labeled data cannot support weight learning (missing class, empty
/// bucket, zero true-class distance in a bucket).
class LearningError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data (gold standard, labeled pairs, profile files, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Filesystem-level failure (unreadable corpus, unwritable output).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace spellvar
