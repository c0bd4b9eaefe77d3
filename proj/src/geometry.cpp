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

#include "dihomo/geometry.hpp"

#include <array>
#include <sstream>

#include "dihomo/error.hpp"

namespace dihomo {

namespace {

constexpr std::size_t kMaxDims = 32;

void check_vertex(const StateSpace& s, std::span<const int> v) {
  if (!s.in_range(v)) throw InputError("vertex out of range");
}

void check_step(const StateSpace& s, std::span<const int> v,
                std::size_t axis) {
  check_vertex(s, v);
  if (axis >= s.dims()) throw InputError("axis out of range");
  if (v[axis] >= s.extents()[axis]) {
    throw InputError("no unit step along axis " + std::to_string(axis + 1) +
                     " from this vertex");
  }
}

// Calls emit(indices) for every k-subset of [0, n) in lexicographic order.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn emit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    emit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

OpenBox OpenBox::full(std::span<const int> extents) {
  OpenBox b;
  for (int n : extents) b.axes.push_back({-1, n + 1});
  return b;
}

bool OpenBox::constrains(std::size_t axis, std::span<const int> extents) const {
  return !(axes[axis].lower == -1 && axes[axis].upper == extents[axis] + 1);
}

StateSpace::StateSpace(std::vector<int> extents, std::vector<OpenBox> boxes)
    : extents_(std::move(extents)),
      boxes_(std::move(boxes)),
      table_(extents_.size()),
      kernels_(&simd::active_kernels()) {
  if (extents_.size() > kMaxDims) {
    throw InputError("at most " + std::to_string(kMaxDims) +
                     " processes are supported");
  }
  for (int n : extents_) {
    if (n < 0) throw InputError("negative extent");
    strides_.push_back(vertex_count_);
    vertex_count_ *= static_cast<std::size_t>(n) + 1;
  }
  for (const OpenBox& b : boxes_) {
    if (b.axes.size() != dims()) throw InputError("box dimension mismatch");
    std::array<int, kMaxDims> lo{};
    std::array<int, kMaxDims> hi{};
    bool constrained = false;
    for (std::size_t j = 0; j < dims(); ++j) {
      const Interval iv = b.axes[j];
      if (b.constrains(j, extents_)) {
        constrained = true;
        if (iv.upper <= iv.lower) throw InputError("box with empty interior");
        if (iv.lower < 0 || iv.upper > extents_[j]) {
          throw InputError("box bound outside extents");
        }
      }
      lo[j] = iv.lower;
      hi[j] = iv.upper;
    }
    // A box free on every axis would swallow the extreme vertices.
    if (!constrained) throw InputError("box constrains no axis");
    table_.add(std::span<const int>(lo.data(), dims()),
               std::span<const int>(hi.data(), dims()));
  }
}

std::size_t StateSpace::index_of(std::span<const int> v) const {
  std::size_t idx = 0;
  for (std::size_t j = 0; j < dims(); ++j) {
    idx += static_cast<std::size_t>(v[j]) * strides_[j];
  }
  return idx;
}

Vertex StateSpace::vertex_at(std::size_t index) const {
  Vertex v(dims());
  for (std::size_t j = 0; j < dims(); ++j) {
    const std::size_t radix = static_cast<std::size_t>(extents_[j]) + 1;
    v[j] = static_cast<int>(index % radix);
    index /= radix;
  }
  return v;
}

bool StateSpace::in_range(std::span<const int> v) const {
  if (v.size() != dims()) return false;
  for (std::size_t j = 0; j < dims(); ++j) {
    if (v[j] < 0 || v[j] > extents_[j]) return false;
  }
  return true;
}

bool StateSpace::cell_blocked(std::span<const int> qlo,
                              std::span<const int> qhi) const {
  if (table_.size() == 0) return false;
  return kernels_->any_overlap(table_, qlo.data(), qhi.data());
}

bool StateSpace::point_forbidden(std::span<const int> v) const {
  return cell_blocked(v, v);
}

HoldingIntervals holding_intervals(const Program& p) {
  HoldingIntervals out;
  for (std::size_t i = 0; i < p.processes.size(); ++i) {
    for (const auto& [lock, cap] : p.semaphores) out[{i, lock}];
    std::map<std::string, int> open_at;
    const auto& body = p.processes[i].body;
    for (std::size_t k = 0; k < body.size(); ++k) {
      const int pos = static_cast<int>(k) + 1;
      if (body[k].kind == OpKind::kAcquire) {
        open_at[body[k].lock] = pos;
      } else {
        out[{i, body[k].lock}].push_back({open_at.at(body[k].lock) - 1, pos});
        open_at.erase(body[k].lock);
      }
    }
  }
  return out;
}

std::vector<OpenBox> forbidden_rects(const Program& p) {
  const std::vector<int> extents = p.extents();
  const HoldingIntervals held = holding_intervals(p);
  std::vector<OpenBox> out;
  for (const auto& [lock, cap] : p.semaphores) {
    std::vector<std::size_t> holders;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!held.at({i, lock}).empty()) holders.push_back(i);
    }
    const auto group = static_cast<std::size_t>(cap) + 1;
    for_each_subset(holders.size(), group,
                    [&](const std::vector<std::size_t>& pick) {
      // Odometer over one holding interval per chosen process.
      std::vector<std::size_t> choice(group, 0);
      while (true) {
        OpenBox b = OpenBox::full(extents);
        for (std::size_t m = 0; m < group; ++m) {
          const std::size_t proc = holders[pick[m]];
          b.axes[proc] = held.at({proc, lock})[choice[m]];
        }
        out.push_back(std::move(b));
        std::size_t m = group;
        while (m > 0) {
          --m;
          const std::size_t proc = holders[pick[m]];
          if (++choice[m] < held.at({proc, lock}).size()) break;
          choice[m] = 0;
          if (m == 0) return;
        }
        if (group == 0) return;
      }
    });
  }
  return out;
}

StateSpace build_state_space(const Program& p) {
  return StateSpace(p.extents(), forbidden_rects(p));
}

bool edge_allowed(const StateSpace& s, std::span<const int> v,
                  std::size_t axis) {
  check_step(s, v, axis);
  std::array<int, kMaxDims> hi{};
  std::copy(v.begin(), v.end(), hi.begin());
  hi[axis] += 1;
  return !s.cell_blocked(v, std::span<const int>(hi.data(), s.dims()));
}

bool square_free(const StateSpace& s, std::span<const int> v, std::size_t i,
                 std::size_t j) {
  if (i == j) throw InputError("square_free needs two distinct axes");
  check_step(s, v, i);
  check_step(s, v, j);
  if (!edge_allowed(s, v, i) || !edge_allowed(s, v, j)) return false;
  Vertex w(v.begin(), v.end());
  w[j] += 1;
  if (!edge_allowed(s, w, i)) return false;
  w[j] -= 1;
  w[i] += 1;
  if (!edge_allowed(s, w, j)) return false;
  std::array<int, kMaxDims> hi{};
  std::copy(v.begin(), v.end(), hi.begin());
  hi[i] += 1;
  hi[j] += 1;
  return !s.cell_blocked(v, std::span<const int>(hi.data(), s.dims()));
}

bool in_xk(const StateSpace& s, std::span<const int> v, std::size_t k) {
  check_vertex(s, v);
  if (k > s.dims()) throw InputError("in_xk: k exceeds process count");
  std::size_t extreme = 0;
  for (std::size_t j = 0; j < s.dims(); ++j) {
    if (v[j] == 0 || v[j] == s.extents()[j]) ++extreme;
  }
  return extreme + k >= s.dims();
}

StateSpace load_boxes(std::string_view source) {
  std::vector<int> extents;
  std::vector<OpenBox> boxes;
  bool have_extents = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(source)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    std::istringstream tok(line);
    std::string head;
    if (!(tok >> head)) continue;
    std::vector<std::string> rest;
    for (std::string t; tok >> t;) rest.push_back(t);

    auto number = [&](const std::string& t) {
      std::size_t used = 0;
      int value = 0;
      try {
        value = std::stoi(t, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != t.size() || t.empty()) {
        throw ParseError("syntax", line_no, 1, "expected an integer, got '" +
                                                   t + "'");
      }
      return value;
    };

    if (head == "extents") {
      if (have_extents) {
        throw ParseError("syntax", line_no, 1, "duplicate extents line");
      }
      for (const auto& t : rest) {
        const int n = number(t);
        if (n < 0) throw ParseError("bound", line_no, 1, "negative extent");
        extents.push_back(n);
      }
      have_extents = true;
    } else if (head == "box") {
      if (!have_extents) {
        throw ParseError("syntax", line_no, 1,
                         "'extents' must come before any box");
      }
      if (rest.size() != 2 * extents.size()) {
        throw ParseError("syntax", line_no, 1,
                         "box needs two bounds per axis");
      }
      OpenBox b = OpenBox::full(extents);
      for (std::size_t j = 0; j < extents.size(); ++j) {
        const std::string& lt = rest[2 * j];
        const std::string& ut = rest[2 * j + 1];
        if (lt == "*" || ut == "*") {
          if (lt != ut) {
            throw ParseError("syntax", line_no, 1,
                             "'*' must be used for both bounds of an axis");
          }
          continue;
        }
        const int l = number(lt);
        const int u = number(ut);
        if (u <= l) {
          throw ParseError("empty-interior", line_no, 1,
                           "box axis " + std::to_string(j + 1) +
                               " has empty interior");
        }
        if (l < 0 || u > extents[j]) {
          throw ParseError("bound", line_no, 1,
                           "box axis " + std::to_string(j + 1) +
                               " leaves the extents");
        }
        b.axes[j] = {l, u};
      }
      boxes.push_back(std::move(b));
    } else {
      throw ParseError("syntax", line_no, 1, "unknown directive '" + head + "'");
    }
  }
  if (!have_extents) throw ParseError("syntax", line_no, 1, "missing extents");
  return StateSpace(std::move(extents), std::move(boxes));
}

std::string render_boxes(const StateSpace& s) {
  std::ostringstream out;
  out << "extents";
  for (int n : s.extents()) out << ' ' << n;
  out << '\n';
  for (const OpenBox& b : s.boxes()) {
    out << "box";
    for (std::size_t j = 0; j < s.dims(); ++j) {
      if (b.constrains(j, s.extents())) {
        out << ' ' << b.axes[j].lower << ' ' << b.axes[j].upper;
      } else {
        out << " * *";
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace dihomo
