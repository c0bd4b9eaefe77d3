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

// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <algorithm>

#include "dihomo/simd/box_kernels.hpp"

namespace dihomo::simd::detail {

namespace {

inline __m256i block_hits(const BoxTable& t, std::size_t base,
                          const std::int32_t* qlo, const std::int32_t* qhi) {
  __m256i acc = _mm256_set1_epi32(-1);
  for (std::size_t j = 0; j < t.dims(); ++j) {
    const __m256i lo = _mm256_loadu_si256(
        reinterpret_cast<const __m256i*>(t.lo(j) + base));
    const __m256i hi = _mm256_loadu_si256(
        reinterpret_cast<const __m256i*>(t.hi(j) + base));
    const __m256i b = _mm256_set1_epi32(qhi[j]);
    const __m256i a = _mm256_set1_epi32(qlo[j]);
    // lo < b  &&  hi > a
    acc = _mm256_and_si256(acc, _mm256_cmpgt_epi32(b, lo));
    acc = _mm256_and_si256(acc, _mm256_cmpgt_epi32(hi, a));
    if (_mm256_testz_si256(acc, acc)) break;
  }
  return acc;
}

}  // namespace

bool any_overlap_avx2(const BoxTable& t, const std::int32_t* qlo,
                      const std::int32_t* qhi) {
  for (std::size_t base = 0; base < t.size(); base += BoxTable::kLanes) {
    const __m256i acc = block_hits(t, base, qlo, qhi);
    if (!_mm256_testz_si256(acc, acc)) return true;
  }
  return false;
}

void overlap_mask_avx2(const BoxTable& t, const std::int32_t* qlo,
                       const std::int32_t* qhi, std::uint8_t* out) {
  for (std::size_t base = 0; base < t.size(); base += BoxTable::kLanes) {
    const __m256i acc = block_hits(t, base, qlo, qhi);
    const int bits = _mm256_movemask_ps(_mm256_castsi256_ps(acc));
    const std::size_t lanes =
        std::min<std::size_t>(BoxTable::kLanes, t.size() - base);
    for (std::size_t k = 0; k < lanes; ++k) {
      out[base + k] = static_cast<std::uint8_t>((bits >> k) & 1);
    }
  }
}

}  // namespace dihomo::simd::detail
