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

#ifndef DIHOMO_SIMD_BOX_KERNELS_HPP_
#define DIHOMO_SIMD_BOX_KERNELS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace dihomo::simd {

/**
 * Structure-of-arrays table of open integer boxes.
 *
 * Box k occupies lo(axis)[k] < x_axis < hi(axis)[k] on every axis. Storage is
 * padded to a multiple of kLanes with sentinel boxes (lo = INT32_MAX,
 * hi = INT32_MIN) that never overlap anything, so kernels can process full
 * vectors without a scalar tail.
 */
class BoxTable {
 public:
  static constexpr std::size_t kLanes = 8;

  BoxTable() = default;
  explicit BoxTable(std::size_t dims);

  void add(std::span<const std::int32_t> lo, std::span<const std::int32_t> hi);

  std::size_t dims() const { return dims_; }
  std::size_t size() const { return count_; }
  std::size_t padded() const { return padded_; }

  const std::int32_t* lo(std::size_t axis) const {
    return lo_.data() + axis * padded_;
  }
  const std::int32_t* hi(std::size_t axis) const {
    return hi_.data() + axis * padded_;
  }

 private:
  void grow();

  std::size_t dims_ = 0;
  std::size_t count_ = 0;
  std::size_t padded_ = 0;
  std::vector<std::int32_t> lo_;
  std::vector<std::int32_t> hi_;
};

// A query is a closed integer range [qlo[j], qhi[j]] per axis. Box k overlaps
// the query iff lo[j][k] < qhi[j] && hi[j][k] > qlo[j] on every axis. With
// integer bounds the same test decides overlap of the open box with a point
// (qlo == qhi), with an open unit interval, and with a closed unit interval.
using AnyOverlapFn = bool (*)(const BoxTable&, const std::int32_t* qlo,
                              const std::int32_t* qhi);
// Writes 1/0 per box (size() entries) into out.
using OverlapMaskFn = void (*)(const BoxTable&, const std::int32_t* qlo,
                               const std::int32_t* qhi, std::uint8_t* out);

struct KernelSet {
  std::string_view name;
  AnyOverlapFn any_overlap;
  OverlapMaskFn overlap_mask;
};

const KernelSet& scalar_kernels();
// nullptr when the variant was not compiled in or the CPU lacks support.
const KernelSet* avx2_kernels();
const KernelSet* neon_kernels();

// Every kernel set usable on this machine, scalar first.
std::vector<const KernelSet*> available_kernels();

// Best available set, chosen once. DIHOMO_SIMD=scalar|avx2|neon forces a
// choice (falls back to scalar if unavailable).
const KernelSet& active_kernels();

namespace detail {
bool any_overlap_avx2(const BoxTable&, const std::int32_t*,
                      const std::int32_t*);
void overlap_mask_avx2(const BoxTable&, const std::int32_t*,
                       const std::int32_t*, std::uint8_t*);
bool any_overlap_neon(const BoxTable&, const std::int32_t*,
                      const std::int32_t*);
void overlap_mask_neon(const BoxTable&, const std::int32_t*,
                       const std::int32_t*, std::uint8_t*);
}  // namespace detail

}  // namespace dihomo::simd

#endif  // DIHOMO_SIMD_BOX_KERNELS_HPP_
