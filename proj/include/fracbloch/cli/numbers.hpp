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


#ifndef FRACBLOCH_CLI_NUMBERS_HPP
#define FRACBLOCH_CLI_NUMBERS_HPP

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

namespace fracbloch::cli {

/// Shortest round-trip decimal form; identical bytes on every run.
inline std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

/// Whole-string parse; accepts "inf"/"infinity" (any case).
inline std::optional<double> parse_double(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::string lower;
  for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "inf" || lower == "infinity" || lower == "+inf") return INFINITY;
  if (lower == "-inf" || lower == "-infinity") return -INFINITY;
  double value = 0.0;
  const char *begin = text.data();
  if (*begin == '+') ++begin;
  const auto result = std::from_chars(begin, text.data() + text.size(), value);
  if (result.ec != std::errc{} || result.ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

inline std::optional<long long> parse_integer(std::string_view text) {
  long long value = 0;
  const char *begin = text.data();
  if (!text.empty() && *begin == '+') ++begin;
  const auto result = std::from_chars(begin, text.data() + text.size(), value);
  if (text.empty() || result.ec != std::errc{} ||
      result.ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

}  // namespace fracbloch::cli

#endif  // FRACBLOCH_CLI_NUMBERS_HPP
