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

// Built only on aarch64 targets (DIHOMO_HAVE_NEON).
#include <arm_neon.h>

#include <algorithm>

#include "dihomo/simd/box_kernels.hpp"

namespace dihomo::simd::detail {

namespace {

// Two 4-lane halves per BoxTable block.
inline uint32x4_t half_hits(const BoxTable& t, std::size_t base,
                            const std::int32_t* qlo,
                            const std::int32_t* qhi) {
  uint32x4_t acc = vdupq_n_u32(0xffffffffu);
  for (std::size_t j = 0; j < t.dims(); ++j) {
    const int32x4_t lo = vld1q_s32(t.lo(j) + base);
    const int32x4_t hi = vld1q_s32(t.hi(j) + base);
    acc = vandq_u32(acc, vcltq_s32(lo, vdupq_n_s32(qhi[j])));
    acc = vandq_u32(acc, vcgtq_s32(hi, vdupq_n_s32(qlo[j])));
    if (vmaxvq_u32(acc) == 0) break;
  }
  return acc;
}

}  // namespace

bool any_overlap_neon(const BoxTable& t, const std::int32_t* qlo,
                      const std::int32_t* qhi) {
  for (std::size_t base = 0; base < t.size(); base += 4) {
    if (vmaxvq_u32(half_hits(t, base, qlo, qhi)) != 0) return true;
  }
  return false;
}

void overlap_mask_neon(const BoxTable& t, const std::int32_t* qlo,
                       const std::int32_t* qhi, std::uint8_t* out) {
  for (std::size_t base = 0; base < t.size(); base += 4) {
    std::uint32_t lanes[4];
    vst1q_u32(lanes, half_hits(t, base, qlo, qhi));
    const std::size_t n = std::min<std::size_t>(4, t.size() - base);
    for (std::size_t k = 0; k < n; ++k) out[base + k] = lanes[k] ? 1 : 0;
  }
}

}  // namespace dihomo::simd::detail
