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

#ifndef DIHOMO_GEOMETRY_HPP_
#define DIHOMO_GEOMETRY_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dihomo/pv.hpp"
#include "dihomo/simd/box_kernels.hpp"

namespace dihomo {

using Vertex = std::vector<int>;

// Open integer interval (lower, upper).
struct Interval {
  int lower;
  int upper;

  bool operator==(const Interval&) const = default;
  auto operator<=>(const Interval&) const = default;
};

/**
 * Open isothetic box. An axis the box does not constrain carries the
 * sentinel interval (-1, N+1), which contains every in-range coordinate.
 */
struct OpenBox {
  std::vector<Interval> axes;

  bool operator==(const OpenBox&) const = default;
  auto operator<=>(const OpenBox&) const = default;

  static OpenBox full(std::span<const int> extents);
  bool constrains(std::size_t axis, std::span<const int> extents) const;
};

/**
 * Directed grid prod [0, N_i] minus a finite union of open boxes.
 *
 * Immutable after construction. All membership queries reduce to one
 * overlap scan of a closed query cell against the box table (see
 * simd::BoxTable); the scan runs on the best kernel set for the CPU.
 */
class StateSpace {
 public:
  StateSpace(std::vector<int> extents, std::vector<OpenBox> boxes);

  std::size_t dims() const { return extents_.size(); }
  const std::vector<int>& extents() const { return extents_; }
  const std::vector<OpenBox>& boxes() const { return boxes_; }
  const simd::BoxTable& box_table() const { return table_; }

  Vertex bottom() const { return Vertex(dims(), 0); }
  Vertex top() const { return extents_; }

  // Number of grid vertices, prod (N_i + 1).
  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t index_of(std::span<const int> v) const;
  Vertex vertex_at(std::size_t index) const;
  // Index offset of a unit step along axis.
  std::size_t stride(std::size_t axis) const { return strides_[axis]; }

  bool in_range(std::span<const int> v) const;

  // Does the closed cell [qlo, qhi] meet the forbidden region?
  bool cell_blocked(std::span<const int> qlo, std::span<const int> qhi) const;
  // Pointwise open-box membership.
  bool point_forbidden(std::span<const int> v) const;

 private:
  std::vector<int> extents_;
  std::vector<OpenBox> boxes_;
  std::vector<std::size_t> strides_;
  std::size_t vertex_count_ = 1;
  simd::BoxTable table_;
  const simd::KernelSet* kernels_;
};

using HoldingIntervals = std::map<std::pair<std::size_t, std::string>,
                                  std::vector<Interval>>;

// For a matched acquire at 1-based position a and release at v, the open
// interval (a-1, v). Every (process, declared lock) pair has an entry.
HoldingIntervals holding_intervals(const Program& p);

std::vector<OpenBox> forbidden_rects(const Program& p);

StateSpace build_state_space(const Program& p);

// Throws InputError on an out-of-range vertex or axis.
bool edge_allowed(const StateSpace& s, std::span<const int> v,
                  std::size_t axis);
bool square_free(const StateSpace& s, std::span<const int> v, std::size_t i,
                 std::size_t j);
// At least n-k coordinates sit at 0 or N_i.
bool in_xk(const StateSpace& s, std::span<const int> v, std::size_t k);

// .boxes text format; throws ParseError.
StateSpace load_boxes(std::string_view source);
std::string render_boxes(const StateSpace& s);

}  // namespace dihomo

#endif  // DIHOMO_GEOMETRY_HPP_
