// Copyright 2026 The fracbloch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FRACBLOCH_ERRORS_HPP
#define FRACBLOCH_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracbloch {

// Parameter combination where a rate diverges (u0 == 0 in the pair model).
class SingularParameterError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Operator or trajectory would exceed the configured dimension cap.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string &what, std::size_t cap)
      : std::runtime_error(what + " (dimension cap " + std::to_string(cap) +
                           ")"),
        cap_(cap) {}

  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

// Non-finite input or failed eigendecomposition.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string &what, std::ptrdiff_t index)
      : std::runtime_error(what + " (index " + std::to_string(index) + ")"),
        index_(index) {}

  std::ptrdiff_t index() const noexcept { return index_; }

 private:
  std::ptrdiff_t index_;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string &what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                    : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fracbloch

#endif  // FRACBLOCH_ERRORS_HPP
