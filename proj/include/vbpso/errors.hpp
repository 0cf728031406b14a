// Copyright 2026 The vbpso Authors
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

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace vbpso {

// Argument outside the mathematical domain of an operation (non-finite
// velocity, length mismatch, out-of-range index).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid run or experiment configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed text input. Carries the offending key (may be empty) and the
// 1-based line number (0 when not tied to a line).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string key, std::size_t line, const std::string& what)
      : std::runtime_error(format(key, line, what)),
        key_(std::move(key)),
        line_(line) {}

  const std::string& key() const noexcept { return key_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& key, std::size_t line,
                            const std::string& what) {
    std::string out;
    if (line != 0) out += "line " + std::to_string(line) + ": ";
    if (!key.empty()) out += "'" + key + "': ";
    return out + what;
  }

  std::string key_;
  std::size_t line_;
};

// A computation would exceed its memory budget.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::uint64_t required_bytes)
      : std::runtime_error(what + " (requires " +
                           std::to_string(required_bytes) + " bytes)"),
        required_bytes_(required_bytes) {}

  std::uint64_t required_bytes() const noexcept { return required_bytes_; }

 private:
  std::uint64_t required_bytes_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vbpso
