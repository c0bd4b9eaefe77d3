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

#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include <boost/multiprecision/cpp_int.hpp>

#include "dihomo/random.hpp"

namespace oracle {

namespace {

using Rat = boost::multiprecision::cpp_rational;

Vertex step(Vertex v, std::size_t axis) {
  ++v[axis];
  return v;
}

// Odometer over the grid prod [0, N_i].
void for_each_vertex(const std::vector<int>& extents,
                     const std::function<void(const Vertex&)>& fn) {
  Vertex v(extents.size(), 0);
  while (true) {
    fn(v);
    std::size_t j = 0;
    while (j < v.size() && v[j] == extents[j]) v[j++] = 0;
    if (j == v.size()) return;
    ++v[j];
  }
}

std::size_t popcount(std::uint32_t x) {
  std::size_t c = 0;
  for (; x != 0; x &= x - 1) ++c;
  return c;
}

}  // namespace

Boxes from_space(const dihomo::StateSpace& s) {
  Boxes b;
  b.extents = s.extents();
  for (const dihomo::OpenBox& box : s.boxes()) {
    std::vector<std::pair<int, int>> axes;
    for (const dihomo::Interval& iv : box.axes) axes.emplace_back(iv.lower, iv.upper);
    b.boxes.push_back(std::move(axes));
  }
  return b;
}

bool simulated_conflict(const dihomo::Program& p, const std::vector<int>& twice) {
  std::map<std::string, int> holders;
  for (std::size_t i = 0; i < p.processes.size(); ++i) {
    const auto& body = p.processes[i].body;
    const std::size_t done = static_cast<std::size_t>(twice[i] / 2);
    std::set<std::string> held;
    for (std::size_t k = 0; k < done; ++k) {
      if (body[k].kind == dihomo::OpKind::kAcquire) {
        held.insert(body[k].lock);
      } else {
        held.erase(body[k].lock);
      }
    }
    // Mid-instruction: the lock it touches is held throughout.
    if (twice[i] % 2 == 1) held.insert(body[done].lock);
    for (const std::string& l : held) ++holders[l];
  }
  for (const auto& [lock, count] : holders) {
    if (count > p.semaphores.at(lock)) return true;
  }
  return false;
}

bool point_forbidden(const Boxes& b, const std::vector<int>& num, int den) {
  for (const auto& box : b.boxes) {
    bool inside = true;
    for (std::size_t j = 0; j < box.size() && inside; ++j) {
      inside = box[j].first * den < num[j] && num[j] < box[j].second * den;
    }
    if (inside) return true;
  }
  return false;
}

bool edge_allowed(const Boxes& b, const Vertex& v, std::size_t axis, int den) {
  std::vector<int> num(v.size());
  for (int t = 0; t <= den; ++t) {
    for (std::size_t j = 0; j < v.size(); ++j) num[j] = v[j] * den;
    num[axis] += t;
    if (point_forbidden(b, num, den)) return false;
  }
  return true;
}

bool square_free(const Boxes& b, const Vertex& v, std::size_t i, std::size_t j,
                 int den) {
  if (!edge_allowed(b, v, i, den) || !edge_allowed(b, v, j, den) ||
      !edge_allowed(b, step(v, i), j, den) || !edge_allowed(b, step(v, j), i, den)) {
    return false;
  }
  std::vector<int> num(v.size());
  for (int s = 1; s < den; ++s) {
    for (int t = 1; t < den; ++t) {
      for (std::size_t k = 0; k < v.size(); ++k) num[k] = v[k] * den;
      num[i] += s;
      num[j] += t;
      if (point_forbidden(b, num, den)) return false;
    }
  }
  return true;
}

bool cell_blocked(const Boxes& b, const Vertex& base, std::uint32_t axes,
                  int den) {
  std::vector<std::size_t> ext;
  for (std::size_t j = 0; j < base.size(); ++j) {
    if ((axes >> j) & 1U) ext.push_back(j);
  }
  std::vector<int> offset(ext.size(), 0);
  std::vector<int> num(base.size());
  while (true) {
    for (std::size_t j = 0; j < base.size(); ++j) num[j] = base[j] * den;
    for (std::size_t k = 0; k < ext.size(); ++k) num[ext[k]] += offset[k];
    if (point_forbidden(b, num, den)) return true;
    std::size_t k = 0;
    while (k < ext.size() && offset[k] == den) offset[k++] = 0;
    if (k == ext.size()) return false;
    ++offset[k];
  }
}

std::set<Vertex> reachable(const Boxes& b) {
  std::set<Vertex> seen{Vertex(b.extents.size(), 0)};
  std::deque<Vertex> queue(seen.begin(), seen.end());
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] < b.extents[i] && edge_allowed(b, v, i)) {
        const Vertex w = step(v, i);
        if (seen.insert(w).second) queue.push_back(w);
      }
    }
  }
  return seen;
}

std::set<Vertex> safe(const Boxes& b) {
  std::set<Vertex> good{b.extents};
  for (bool changed = true; changed;) {
    changed = false;
    for_each_vertex(b.extents, [&](const Vertex& v) {
      if (good.contains(v)) return;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < b.extents[i] && edge_allowed(b, v, i) &&
            good.contains(step(v, i))) {
          good.insert(v);
          changed = true;
          return;
        }
      }
    });
  }
  return good;
}

std::set<Vertex> deadlocks(const Boxes& b) {
  std::set<Vertex> out;
  for (const Vertex& v : reachable(b)) {
    if (v == b.extents) continue;
    bool stuck = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] < b.extents[i] && edge_allowed(b, v, i)) stuck = false;
    }
    if (stuck) out.insert(v);
  }
  return out;
}

bool schedule_valid(const Boxes& b, const Word& w) {
  Vertex v(b.extents.size(), 0);
  for (std::uint8_t letter : w) {
    if (letter >= v.size() || v[letter] >= b.extents[letter]) return false;
    if (!edge_allowed(b, v, letter)) return false;
    ++v[letter];
  }
  return v == b.extents;
}

std::vector<Word> schedules(const Boxes& b) {
  Word w;
  for (std::size_t i = 0; i < b.extents.size(); ++i) {
    w.insert(w.end(), static_cast<std::size_t>(b.extents[i]),
             static_cast<std::uint8_t>(i));
  }
  std::vector<Word> out;
  do {
    if (schedule_valid(b, w)) out.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

bool serial_by_x1(const Boxes& b, const Word& w) {
  // Walk in doubled coordinates so edge midpoints are checked too.
  const std::size_t n = b.extents.size();
  std::vector<int> twice(n, 0);
  auto in_x1 = [&] {
    std::size_t extreme = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (twice[j] == 0 || twice[j] == 2 * b.extents[j]) ++extreme;
    }
    return extreme + 1 >= n;
  };
  if (!in_x1()) return false;
  for (std::uint8_t letter : w) {
    for (int half = 0; half < 2; ++half) {
      ++twice[letter];
      if (!in_x1()) return false;
    }
  }
  return true;
}

std::vector<ClassInfo> swap_classes(const Boxes& b) {
  const std::vector<Word> all = schedules(b);
  std::set<Word> unvisited(all.begin(), all.end());
  std::vector<ClassInfo> out;
  while (!unvisited.empty()) {
    ClassInfo info;
    std::set<Word> members{*unvisited.begin()};
    std::deque<Word> queue(members.begin(), members.end());
    while (!queue.empty()) {
      const Word w = queue.front();
      queue.pop_front();
      Vertex v(b.extents.size(), 0);
      for (std::size_t pos = 0; pos + 1 < w.size(); ++pos) {
        if (w[pos] != w[pos + 1] && square_free(b, v, w[pos], w[pos + 1])) {
          Word x = w;
          std::swap(x[pos], x[pos + 1]);
          if (members.insert(x).second) queue.push_back(x);
        }
        ++v[w[pos]];
      }
    }
    info.representative = *members.begin();
    info.members = members.size();
    for (const Word& w : members) {
      info.has_serial = info.has_serial || serial_by_x1(b, w);
      unvisited.erase(w);
    }
    out.push_back(std::move(info));
  }
  std::sort(out.begin(), out.end(), [](const ClassInfo& x, const ClassInfo& y) {
    return x.representative < y.representative;
  });
  return out;
}

std::size_t rational_rank(const std::vector<std::vector<std::int64_t>>& m) {
  if (m.empty()) return 0;
  std::vector<std::vector<Rat>> a;
  for (const auto& row : m) a.emplace_back(row.begin(), row.end());
  const std::size_t cols = a.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < a.size() && a[pivot][c] == 0) ++pivot;
    if (pivot == a.size()) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const Rat f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::size_t betti(const Boxes& b, std::size_t d, bool relative_to_x1) {
  const std::size_t n = b.extents.size();
  using C = std::pair<Vertex, std::uint32_t>;
  auto in_x1 = [&](const C& c) {
    std::size_t pinned = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const bool extruded = (c.second >> j) & 1U;
      if (!extruded && (c.first[j] == 0 || c.first[j] == b.extents[j])) ++pinned;
    }
    return pinned + 1 >= n;
  };
  auto cells_of = [&](std::size_t dim) {
    std::vector<C> out;
    if (dim > n) return out;
    for_each_vertex(b.extents, [&](const Vertex& v) {
      for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        if (popcount(mask) != dim) continue;
        bool fits = true;
        for (std::size_t j = 0; j < n; ++j) {
          if (((mask >> j) & 1U) && v[j] >= b.extents[j]) fits = false;
        }
        if (!fits || cell_blocked(b, v, mask)) continue;
        const C c{v, mask};
        if (relative_to_x1 && in_x1(c)) continue;
        out.push_back(c);
      }
    });
    return out;
  };
  // Rank of the map C_dim -> C_{dim-1}.
  auto boundary_rank = [&](std::size_t dim) -> std::size_t {
    if (dim == 0 || dim > n) return 0;
    const std::vector<C> hi = cells_of(dim);
    const std::vector<C> lo = cells_of(dim - 1);
    if (hi.empty() || lo.empty()) return 0;
    std::map<C, std::size_t> row;
    for (std::size_t r = 0; r < lo.size(); ++r) row[lo[r]] = r;
    std::vector<std::vector<std::int64_t>> m(lo.size(),
                                             std::vector<std::int64_t>(hi.size()));
    for (std::size_t col = 0; col < hi.size(); ++col) {
      const auto& [v, mask] = hi[col];
      int sign = 1;
      for (std::size_t j = 0; j < n; ++j) {
        if (!((mask >> j) & 1U)) continue;
        const std::uint32_t face = mask & ~(1U << j);
        auto back = row.find({v, face});
        if (back != row.end()) m[back->second][col] -= sign;
        auto front = row.find({step(v, j), face});
        if (front != row.end()) m[front->second][col] += sign;
        sign = -sign;
      }
    }
    return rational_rank(m);
  };
  return cells_of(d).size() - boundary_rank(d) - boundary_rank(d + 1);
}

std::size_t raster_components(const Boxes& b) {
  const std::size_t n = b.extents.size();
  // Doubled coordinates in [-2, 2N + 2] cover the sentinel boxes too.
  std::vector<int> lo(n, -2);
  std::vector<int> hi(n);
  std::vector<std::size_t> stride(n);
  std::size_t total = 1;
  for (std::size_t j = 0; j < n; ++j) {
    hi[j] = 2 * b.extents[j] + 2;
    stride[j] = total;
    total *= static_cast<std::size_t>(hi[j] - lo[j] + 1);
  }
  std::vector<int> label(total, 0);
  std::vector<int> point(n);
  auto decode = [&](std::size_t idx) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto span = static_cast<std::size_t>(hi[j] - lo[j] + 1);
      point[j] = lo[j] + static_cast<int>(idx % span);
      idx /= span;
    }
  };
  std::vector<bool> inside(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    decode(idx);
    inside[idx] = point_forbidden(b, point, 2);
  }
  std::size_t components = 0;
  for (std::size_t start = 0; start < total; ++start) {
    if (!inside[start] || label[start] != 0) continue;
    ++components;
    std::vector<std::size_t> stack{start};
    label[start] = 1;
    while (!stack.empty()) {
      const std::size_t idx = stack.back();
      stack.pop_back();
      decode(idx);
      for (std::size_t j = 0; j < n; ++j) {
        if (point[j] > lo[j] && inside[idx - stride[j]] && !label[idx - stride[j]]) {
          label[idx - stride[j]] = 1;
          stack.push_back(idx - stride[j]);
        }
        if (point[j] < hi[j] && inside[idx + stride[j]] && !label[idx + stride[j]]) {
          label[idx + stride[j]] = 1;
          stack.push_back(idx + stride[j]);
        }
      }
    }
  }
  return components;
}

dihomo::GenWord reduce_randomly(const dihomo::RewritingSystem& r,
                                dihomo::GenWord w, std::mt19937_64& rng) {
  while (true) {
    std::vector<std::pair<std::size_t, std::size_t>> redexes;
    for (std::size_t k = 0; k < r.rules.size(); ++k) {
      const auto& lhs = r.rules[k].lhs;
      if (lhs.size() > w.size()) continue;
      for (std::size_t pos = 0; pos + lhs.size() <= w.size(); ++pos) {
        if (std::equal(lhs.begin(), lhs.end(), w.begin() + static_cast<long>(pos))) {
          redexes.emplace_back(k, pos);
        }
      }
    }
    if (redexes.empty()) return w;
    const auto [k, pos] = redexes[dihomo::draw_below(rng, redexes.size())];
    const auto& rule = r.rules[k];
    dihomo::GenWord next(w.begin(), w.begin() + static_cast<long>(pos));
    next.insert(next.end(), rule.rhs.begin(), rule.rhs.end());
    next.insert(next.end(), w.begin() + static_cast<long>(pos + rule.lhs.size()),
                w.end());
    w = std::move(next);
  }
}

dihomo::Program random_program(std::mt19937_64& rng, int nprocs, int nlocks,
                               int max_capacity, int max_ops) {
  dihomo::Program p;
  for (int l = 0; l < nlocks; ++l) {
    p.semaphores["m" + std::to_string(l)] =
        static_cast<int>(dihomo::draw_between(rng, 1, max_capacity));
  }
  for (int i = 0; i < nprocs; ++i) {
    dihomo::Process proc{"R" + std::to_string(i + 1), {}};
    std::vector<std::string> held;
    const auto ops = dihomo::draw_between(rng, 0, max_ops);
    for (std::int64_t k = 0; k < ops; ++k) {
      std::vector<std::string> free;
      for (const auto& [name, cap] : p.semaphores) {
        if (std::find(held.begin(), held.end(), name) == held.end()) free.push_back(name);
      }
      const bool acquire =
          held.empty() || (!free.empty() && dihomo::draw_below(rng, 2) == 0);
      if (acquire) {
        const std::string l = free[dihomo::draw_below(rng, free.size())];
        held.push_back(l);
        proc.body.push_back({dihomo::OpKind::kAcquire, l});
      } else {
        const std::size_t at = dihomo::draw_below(rng, held.size());
        proc.body.push_back({dihomo::OpKind::kRelease, held[at]});
        held.erase(held.begin() + static_cast<long>(at));
      }
    }
    while (!held.empty()) {
      const std::size_t at = dihomo::draw_below(rng, held.size());
      proc.body.push_back({dihomo::OpKind::kRelease, held[at]});
      held.erase(held.begin() + static_cast<long>(at));
    }
    p.processes.push_back(std::move(proc));
  }
  return dihomo::Program::validated(std::move(p));
}

dihomo::StateSpace random_space(std::mt19937_64& rng, std::size_t dims,
                                int max_extent, std::size_t count,
                                bool free_axes) {
  std::vector<int> extents(dims);
  for (int& e : extents) e = static_cast<int>(dihomo::draw_between(rng, 1, max_extent));
  std::vector<dihomo::OpenBox> boxes;
  for (std::size_t k = 0; k < count; ++k) {
    dihomo::OpenBox box = dihomo::OpenBox::full(extents);
    const auto forced = static_cast<std::size_t>(dihomo::draw_below(rng, dims));
    for (std::size_t j = 0; j < dims; ++j) {
      if (free_axes && j != forced && dihomo::draw_below(rng, 4) == 0) continue;
      const int l = static_cast<int>(dihomo::draw_between(rng, 0, extents[j] - 1));
      const int u = static_cast<int>(dihomo::draw_between(rng, l + 1, extents[j]));
      box.axes[j] = {l, u};
    }
    boxes.push_back(std::move(box));
  }
  return dihomo::StateSpace(std::move(extents), std::move(boxes));
}

}  // namespace oracle
