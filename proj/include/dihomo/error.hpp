/*
 * Copyright (c) 2026, The dihomo Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DIHOMO_ERROR_HPP_
#define DIHOMO_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace dihomo {

// Malformed user input: program text, .boxes text, monoid tables, bad
// arguments to an operation.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Located error from one of the text front-ends. kind() is a short stable
// tag ("syntax", "undeclared-lock", ...) that tests and reports key on.
class ParseError : public InputError {
 public:
  ParseError(std::string kind, std::size_t line, std::size_t column,
             const std::string& message)
      : InputError(std::to_string(line) + ":" + std::to_string(column) +
                   ": " + kind + ": " + message),
        kind_(std::move(kind)),
        line_(line),
        column_(column) {}

  const std::string& kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string kind_;
  std::size_t line_;
  std::size_t column_;
};

// A configured exploration limit was hit. The result is indeterminate, never
// silently truncated.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, std::size_t partial)
      : std::runtime_error(what), partial_(partial) {}
  std::size_t partial_count() const { return partial_; }

 private:
  std::size_t partial_;
};

}  // namespace dihomo

#endif  // DIHOMO_ERROR_HPP_
