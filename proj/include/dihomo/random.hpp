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

#ifndef DIHOMO_RANDOM_HPP_
#define DIHOMO_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace dihomo {

// Uniform draw in [0, bound) from raw engine output. The std distributions
// are implementation-defined, which would make seeded output differ between
// standard libraries.
inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

inline std::int64_t draw_between(std::mt19937_64& rng, std::int64_t lo,
                                 std::int64_t hi) {
  return lo + static_cast<std::int64_t>(
                  draw_below(rng, static_cast<std::uint64_t>(hi - lo) + 1));
}

// Fisher-Yates on top of draw_below.
template <typename T>
void shuffle_in_place(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[draw_below(rng, i)]);
  }
}

}  // namespace dihomo

#endif  // DIHOMO_RANDOM_HPP_
