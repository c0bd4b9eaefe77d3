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

#ifndef DIHOMO_CLI_HPP_
#define DIHOMO_CLI_HPP_

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dihomo::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kViolated = 1;
inline constexpr int kInputError = 2;
inline constexpr int kIndeterminate = 3;

struct Result {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

using EnvLookup = std::function<std::optional<std::string>(std::string_view)>;

// Process environment.
std::optional<std::string> process_env(std::string_view name);

// args excludes the program name. Never throws.
Result run(const std::vector<std::string>& args,
           const EnvLookup& env = process_env);

}  // namespace dihomo::cli

#endif  // DIHOMO_CLI_HPP_
