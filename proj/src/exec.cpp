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

#include "dihomo/exec.hpp"

#include <algorithm>
#include <deque>

namespace dihomo {

VertexSet::VertexSet(const StateSpace& s)
    : extents_(s.extents()), bits_(s.vertex_count(), 0) {
  for (std::size_t j = 0; j < s.dims(); ++j) strides_.push_back(s.stride(j));
}

bool VertexSet::contains(std::span<const int> v) const {
  if (v.size() != extents_.size()) return false;
  std::size_t idx = 0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] < 0 || v[j] > extents_[j]) return false;
    idx += static_cast<std::size_t>(v[j]) * strides_[j];
  }
  return bits_[idx] != 0;
}

std::size_t VertexSet::size() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::vector<Vertex> VertexSet::vertices() const {
  std::vector<Vertex> out;
  for (std::size_t idx = 0; idx < bits_.size(); ++idx) {
    if (!bits_[idx]) continue;
    Vertex v(extents_.size());
    std::size_t rem = idx;
    for (std::size_t j = 0; j < extents_.size(); ++j) {
      const auto radix = static_cast<std::size_t>(extents_[j]) + 1;
      v[j] = static_cast<int>(rem % radix);
      rem /= radix;
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vertex> VertexSet::sorted_vertices() const {
  std::vector<Vertex> out = vertices();
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint32_t> allowed_edge_bits(const StateSpace& s) {
  std::vector<std::uint32_t> bits(s.vertex_count(), 0);
  for (std::size_t idx = 0; idx < s.vertex_count(); ++idx) {
    const Vertex v = s.vertex_at(idx);
    for (std::size_t j = 0; j < s.dims(); ++j) {
      if (v[j] < s.extents()[j] && edge_allowed(s, v, j)) {
        bits[idx] |= 1u << j;
      }
    }
  }
  return bits;
}

VertexSet reachable_set(const StateSpace& s) {
  const auto edges = allowed_edge_bits(s);
  VertexSet out(s);
  std::deque<std::size_t> queue{0};
  out.insert_index(0);
  while (!queue.empty()) {
    const std::size_t idx = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < s.dims(); ++j) {
      if (!(edges[idx] >> j & 1u)) continue;
      const std::size_t next = idx + s.stride(j);
      if (!out.contains_index(next)) {
        out.insert_index(next);
        queue.push_back(next);
      }
    }
  }
  return out;
}

VertexSet safe_set(const StateSpace& s) {
  const auto edges = allowed_edge_bits(s);
  VertexSet out(s);
  // Successors have larger grid index, so one descending sweep settles it.
  const std::size_t top = s.vertex_count() - 1;
  out.insert_index(top);
  for (std::size_t idx = top; idx-- > 0;) {
    for (std::size_t j = 0; j < s.dims(); ++j) {
      if ((edges[idx] >> j & 1u) && out.contains_index(idx + s.stride(j))) {
        out.insert_index(idx);
        break;
      }
    }
  }
  return out;
}

VertexSet deadlocks(const StateSpace& s) {
  const auto edges = allowed_edge_bits(s);
  const VertexSet reach = reachable_set(s);
  VertexSet out(s);
  const std::size_t top = s.vertex_count() - 1;
  for (std::size_t idx = 0; idx < top; ++idx) {
    if (reach.contains_index(idx) && edges[idx] == 0) out.insert_index(idx);
  }
  return out;
}

VertexSet unsafe_region(const StateSpace& s) {
  const VertexSet reach = reachable_set(s);
  const VertexSet safe = safe_set(s);
  VertexSet out(s);
  for (std::size_t idx = 0; idx < s.vertex_count(); ++idx) {
    if (reach.contains_index(idx) && !safe.contains_index(idx)) {
      out.insert_index(idx);
    }
  }
  return out;
}

}  // namespace dihomo
