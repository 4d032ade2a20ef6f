/*
 * Copyright 2026 The securedl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SECUREDL_ERRORS_H_
#define SECUREDL_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace securedl {

// Invalid parameters or configuration, detected before any protocol runs.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value falls outside the fixed-point legal range.
class RangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Protocol-level inconsistency: missing parties, length mismatch, stale
// preprocessing.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A dealer tape ran out of one kind of correlated randomness.
class PreprocessingExhausted : public ProtocolError {
 public:
  explicit PreprocessingExhausted(const std::string& kind)
      : ProtocolError("preprocessing exhausted: no " + kind + " left on tape"),
        kind_(kind) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

// Malformed input file. `offset` is the byte position where parsing failed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte offset " +
                           std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace securedl

#endif  // SECUREDL_ERRORS_H_
