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

#ifndef DIHOMO_EXEC_HPP_
#define DIHOMO_EXEC_HPP_

#include <cstdint>
#include <vector>

#include "dihomo/geometry.hpp"

namespace dihomo {

// Dense membership over the vertex grid of one StateSpace.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(const StateSpace& s);

  bool contains(std::span<const int> v) const;
  bool contains_index(std::size_t idx) const { return bits_[idx] != 0; }
  void insert_index(std::size_t idx) { bits_[idx] = 1; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  // Members in increasing grid-index order.
  std::vector<Vertex> vertices() const;
  // Members sorted lexicographically by coordinate tuple.
  std::vector<Vertex> sorted_vertices() const;

  const std::vector<int>& extents() const { return extents_; }

 private:
  std::vector<int> extents_;
  std::vector<std::size_t> strides_;
  std::vector<std::uint8_t> bits_;
};

// Allowed-edge bitmap: bit `axis` of entry idx is set iff the unit step
// from vertex idx along axis is allowed. Shared by the grid analyses.
std::vector<std::uint32_t> allowed_edge_bits(const StateSpace& s);

VertexSet reachable_set(const StateSpace& s);
VertexSet safe_set(const StateSpace& s);
VertexSet deadlocks(const StateSpace& s);
VertexSet unsafe_region(const StateSpace& s);

}  // namespace dihomo

#endif  // DIHOMO_EXEC_HPP_
