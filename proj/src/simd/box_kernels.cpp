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

#include "dihomo/simd/box_kernels.hpp"

#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace dihomo::simd {

BoxTable::BoxTable(std::size_t dims) : dims_(dims) {}

void BoxTable::grow() {
  std::size_t next = padded_ == 0 ? kLanes : padded_ * 2;
  std::vector<std::int32_t> lo(dims_ * next,
                               std::numeric_limits<std::int32_t>::max());
  std::vector<std::int32_t> hi(dims_ * next,
                               std::numeric_limits<std::int32_t>::min());
  for (std::size_t j = 0; j < dims_; ++j) {
    for (std::size_t k = 0; k < count_; ++k) {
      lo[j * next + k] = lo_[j * padded_ + k];
      hi[j * next + k] = hi_[j * padded_ + k];
    }
  }
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  padded_ = next;
}

void BoxTable::add(std::span<const std::int32_t> lo,
                   std::span<const std::int32_t> hi) {
  if (lo.size() != dims_ || hi.size() != dims_) {
    throw std::invalid_argument("BoxTable::add: dimension mismatch");
  }
  if (count_ == padded_) grow();
  for (std::size_t j = 0; j < dims_; ++j) {
    lo_[j * padded_ + count_] = lo[j];
    hi_[j * padded_ + count_] = hi[j];
  }
  ++count_;
}

namespace {

bool any_overlap_scalar(const BoxTable& t, const std::int32_t* qlo,
                        const std::int32_t* qhi) {
  for (std::size_t k = 0; k < t.size(); ++k) {
    bool hit = true;
    for (std::size_t j = 0; j < t.dims() && hit; ++j) {
      hit = t.lo(j)[k] < qhi[j] && t.hi(j)[k] > qlo[j];
    }
    if (hit) return true;
  }
  return false;
}

void overlap_mask_scalar(const BoxTable& t, const std::int32_t* qlo,
                         const std::int32_t* qhi, std::uint8_t* out) {
  for (std::size_t k = 0; k < t.size(); ++k) {
    bool hit = true;
    for (std::size_t j = 0; j < t.dims() && hit; ++j) {
      hit = t.lo(j)[k] < qhi[j] && t.hi(j)[k] > qlo[j];
    }
    out[k] = hit ? 1 : 0;
  }
}

const KernelSet kScalar{"scalar", &any_overlap_scalar, &overlap_mask_scalar};

#if defined(DIHOMO_HAVE_AVX2)
const KernelSet kAvx2{"avx2", &detail::any_overlap_avx2,
                      &detail::overlap_mask_avx2};
#endif
#if defined(DIHOMO_HAVE_NEON)
const KernelSet kNeon{"neon", &detail::any_overlap_neon,
                      &detail::overlap_mask_neon};
#endif

const KernelSet& select_kernels() {
  const char* forced = std::getenv("DIHOMO_SIMD");
  if (forced != nullptr) {
    std::string want(forced);
    for (const KernelSet* k : available_kernels()) {
      if (k->name == want) return *k;
    }
    return kScalar;
  }
  if (const KernelSet* k = avx2_kernels()) return *k;
  if (const KernelSet* k = neon_kernels()) return *k;
  return kScalar;
}

}  // namespace

const KernelSet& scalar_kernels() { return kScalar; }

const KernelSet* avx2_kernels() {
#if defined(DIHOMO_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) return &kAvx2;
#endif
  return nullptr;
}

const KernelSet* neon_kernels() {
#if defined(DIHOMO_HAVE_NEON)
  return &kNeon;
#else
  return nullptr;
#endif
}

std::vector<const KernelSet*> available_kernels() {
  std::vector<const KernelSet*> out{&kScalar};
  if (const KernelSet* k = avx2_kernels()) out.push_back(k);
  if (const KernelSet* k = neon_kernels()) out.push_back(k);
  return out;
}

const KernelSet& active_kernels() {
  static const KernelSet& chosen = select_kernels();
  return chosen;
}

}  // namespace dihomo::simd
