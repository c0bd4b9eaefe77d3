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

#include "dihomo/homology.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "dihomo/error.hpp"

namespace dihomo {

namespace {

std::int64_t add_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw std::overflow_error("integer overflow in Smith normal form");
  }
  return r;
}

std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error("integer overflow in Smith normal form");
  }
  return r;
}

// row_dst += k * row_src (in place on a matrix)
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    m.at(dst, c) = add_checked(m.at(dst, c), mul_checked(k, m.at(src, c)));
  }
}

void add_col(IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    m.at(r, dst) = add_checked(m.at(r, dst), mul_checked(k, m.at(r, src)));
  }
}

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(a, c), m.at(b, c));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m.at(r, a), m.at(r, b));
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Boundary of the cells in `cols` restricted to the rows in `rows`.
IntMatrix restricted_boundary(const std::vector<Cell>& rows,
                              const std::vector<Cell>& cols) {
  IntMatrix m(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (const auto& [face, coeff] : boundary_faces(cols[j])) {
      auto it = std::lower_bound(rows.begin(), rows.end(), face);
      if (it != rows.end() && *it == face) {
        m.at(static_cast<std::size_t>(it - rows.begin()), j) += coeff;
      }
    }
  }
  return m;
}

std::vector<Cell> relative_cells(const CubicalComplex& c,
                                 const CubicalComplex& sub, std::size_t d) {
  std::vector<Cell> out;
  if (d > c.dims()) return out;
  for (const Cell& cell : c.cells(d)) {
    if (!sub.contains(cell)) out.push_back(cell);
  }
  return out;
}

}  // namespace

std::size_t Cell::dim() const {
  return static_cast<std::size_t>(std::popcount(axes));
}

CubicalComplex::CubicalComplex(std::vector<int> extents,
                               std::vector<std::vector<Cell>> cells_by_dim)
    : extents_(std::move(extents)), cells_(std::move(cells_by_dim)) {
  cells_.resize(extents_.size() + 1);
  index_.resize(cells_.size());
  for (std::size_t d = 0; d < cells_.size(); ++d) {
    std::sort(cells_[d].begin(), cells_[d].end());
    cells_[d].erase(std::unique(cells_[d].begin(), cells_[d].end()),
                    cells_[d].end());
    for (std::size_t i = 0; i < cells_[d].size(); ++i) {
      if (cells_[d][i].dim() != d) {
        throw InputError("cell filed under the wrong dimension");
      }
      index_[d].emplace(cells_[d][i], static_cast<long>(i));
    }
  }
}

long CubicalComplex::index_of(const Cell& c) const {
  const std::size_t d = c.dim();
  if (d >= index_.size()) return -1;
  auto it = index_[d].find(c);
  return it == index_[d].end() ? -1 : it->second;
}

bool CubicalComplex::closed_under_faces() const {
  for (std::size_t d = 1; d < cells_.size(); ++d) {
    for (const Cell& c : cells_[d]) {
      for (const auto& [face, coeff] : boundary_faces(c)) {
        if (!contains(face)) return false;
      }
    }
  }
  return true;
}

CubicalComplex build_complex(const StateSpace& s) {
  const std::size_t n = s.dims();
  std::vector<std::vector<Cell>> cells(n + 1);
  Vertex hi(n);
  for (std::size_t idx = 0; idx < s.vertex_count(); ++idx) {
    const Vertex base = s.vertex_at(idx);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      bool fits = true;
      for (std::size_t j = 0; j < n; ++j) {
        hi[j] = base[j] + static_cast<int>(mask >> j & 1u);
        fits = fits && hi[j] <= s.extents()[j];
      }
      if (!fits || s.cell_blocked(base, hi)) continue;
      Cell c{base, mask};
      cells[c.dim()].push_back(std::move(c));
    }
  }
  return CubicalComplex(s.extents(), std::move(cells));
}

CubicalComplex sub_complex_x1(const CubicalComplex& c) {
  const std::size_t n = c.dims();
  std::vector<std::vector<Cell>> cells(n + 1);
  for (std::size_t d = 0; d <= n; ++d) {
    for (const Cell& cell : c.cells(d)) {
      std::size_t extreme = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (cell.axes >> j & 1u) continue;
        if (cell.base[j] == 0 || cell.base[j] == c.extents()[j]) ++extreme;
      }
      if (extreme + 1 >= n) cells[d].push_back(cell);
    }
  }
  return CubicalComplex(c.extents(), std::move(cells));
}

std::vector<std::pair<Cell, int>> boundary_faces(const Cell& c) {
  std::vector<std::pair<Cell, int>> out;
  int k = 0;
  for (std::size_t j = 0; j < c.base.size(); ++j) {
    if (!(c.axes >> j & 1u)) continue;
    const int sign = (k % 2 == 0) ? 1 : -1;
    Cell back{c.base, c.axes & ~(1u << j)};
    Cell front = back;
    front.base[j] += 1;
    out.emplace_back(std::move(front), sign);
    out.emplace_back(std::move(back), -sign);
    ++k;
  }
  return out;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](std::int64_t x) { return x == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("matrix shape mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const std::int64_t x = a.at(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out.at(i, j) = add_checked(out.at(i, j), mul_checked(x, b.at(k, j)));
      }
    }
  }
  return out;
}

IntMatrix boundary_matrix(const CubicalComplex& c, std::size_t d) {
  if (d == 0 || d > c.dims()) {
    return IntMatrix(d == 0 ? 0 : c.count(d - 1), c.count(d));
  }
  return restricted_boundary(c.cells(d - 1), c.cells(d));
}

SmithForm smith_normal_form(const IntMatrix& a) {
  SmithForm out{a, IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols()),
                {}};
  IntMatrix& m = out.d;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Smallest nonzero magnitude in the trailing block becomes the pivot.
    auto bring_min_to_pivot = [&]() {
      std::size_t br = rows, bc = cols;
      std::int64_t best = 0;
      for (std::size_t r = t; r < rows; ++r) {
        for (std::size_t c = t; c < cols; ++c) {
          const std::int64_t x = m.at(r, c) < 0 ? -m.at(r, c) : m.at(r, c);
          if (x != 0 && (best == 0 || x < best)) {
            best = x;
            br = r;
            bc = c;
          }
        }
      }
      if (best == 0) return false;
      swap_rows(m, t, br);
      swap_rows(out.u, t, br);
      swap_cols(m, t, bc);
      swap_cols(out.v, t, bc);
      return true;
    };
    if (!bring_min_to_pivot()) break;

    while (true) {
      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        const std::int64_t q = m.at(r, t) / m.at(t, t);
        add_row(m, r, t, -q);
        add_row(out.u, r, t, -q);
        if (m.at(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        const std::int64_t q = m.at(t, c) / m.at(t, t);
        add_col(m, c, t, -q);
        add_col(out.v, c, t, -q);
        if (m.at(t, c) != 0) clean = false;
      }
      if (!clean) {
        // A remainder is now smaller than the pivot; restart from it. The
        // pivot row/column block only shrinks in magnitude.
        std::size_t br = t, bc = t;
        std::int64_t best = m.at(t, t) < 0 ? -m.at(t, t) : m.at(t, t);
        for (std::size_t r = t + 1; r < rows; ++r) {
          const std::int64_t x = m.at(r, t) < 0 ? -m.at(r, t) : m.at(r, t);
          if (x != 0 && x < best) best = x, br = r, bc = t;
        }
        for (std::size_t c = t + 1; c < cols; ++c) {
          const std::int64_t x = m.at(t, c) < 0 ? -m.at(t, c) : m.at(t, c);
          if (x != 0 && x < best) best = x, br = t, bc = c;
        }
        swap_rows(m, t, br);
        swap_rows(out.u, t, br);
        swap_cols(m, t, bc);
        swap_cols(out.v, t, bc);
        continue;
      }
      // Pivot must divide the rest of the block.
      bool divides = true;
      for (std::size_t r = t + 1; r < rows && divides; ++r) {
        for (std::size_t c = t + 1; c < cols; ++c) {
          if (m.at(r, c) % m.at(t, t) != 0) {
            add_row(m, t, r, 1);
            add_row(out.u, t, r, 1);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (m.at(t, t) < 0) {
      for (std::size_t c = 0; c < cols; ++c) m.at(t, c) = -m.at(t, c);
      for (std::size_t c = 0; c < rows; ++c) out.u.at(t, c) = -out.u.at(t, c);
    }
    out.diagonal.push_back(m.at(t, t));
  }
  return out;
}

HomologyGroup relative_homology(const CubicalComplex& c,
                                const CubicalComplex& sub, std::size_t d) {
  if (sub.dims() != c.dims() || sub.extents() != c.extents()) {
    throw InputError("subcomplex lives in a different grid");
  }
  for (std::size_t k = 0; k <= sub.dims(); ++k) {
    for (const Cell& cell : sub.cells(k)) {
      if (!c.contains(cell)) {
        throw InputError("sub is not contained in the complex");
      }
    }
  }
  if (!sub.closed_under_faces()) {
    throw InputError("sub is not closed under faces");
  }

  HomologyGroup h;
  if (d > c.dims()) return h;
  const std::vector<Cell> here = relative_cells(c, sub, d);
  std::size_t rank_out = 0;  // rank of d_d on relative chains
  if (d > 0) {
    const std::vector<Cell> below = relative_cells(c, sub, d - 1);
    rank_out = smith_normal_form(restricted_boundary(below, here)).diagonal.size();
  }
  std::size_t rank_in = 0;
  if (d + 1 <= c.dims()) {
    const std::vector<Cell> above = relative_cells(c, sub, d + 1);
    const SmithForm snf = smith_normal_form(restricted_boundary(here, above));
    rank_in = snf.diagonal.size();
    for (std::int64_t x : snf.diagonal) {
      if (x > 1) h.torsion.push_back(x);
    }
  }
  h.betti = here.size() - rank_out - rank_in;
  return h;
}

HomologyGroup homology(const CubicalComplex& c, std::size_t d) {
  return relative_homology(
      c, CubicalComplex(c.extents(), std::vector<std::vector<Cell>>{}), d);
}

std::size_t forbidden_components(const StateSpace& s) {
  const auto& boxes = s.boxes();
  const auto& table = s.box_table();
  const simd::KernelSet& kernels = simd::active_kernels();
  UnionFind uf(boxes.size());
  std::size_t components = boxes.size();
  std::vector<std::uint8_t> mask(boxes.size());
  std::vector<int> lo(s.dims()), hi(s.dims());
  for (std::size_t k = 0; k < boxes.size(); ++k) {
    for (std::size_t j = 0; j < s.dims(); ++j) {
      lo[j] = boxes[k].axes[j].lower;
      hi[j] = boxes[k].axes[j].upper;
    }
    // Open/open overlap of integer intervals is lo' < hi && hi' > lo, which
    // is the kernel's closed-query test with the box's own bounds.
    kernels.overlap_mask(table, lo.data(), hi.data(), mask.data());
    for (std::size_t other = k + 1; other < boxes.size(); ++other) {
      if (mask[other] && uf.unite(k, other)) --components;
    }
  }
  return components;
}

AlexanderCheck alexander_check(const StateSpace& s) {
  if (s.dims() != 2) {
    throw InputError("alexander_check is defined for two processes only");
  }
  const CubicalComplex x = build_complex(s);
  const HomologyGroup h1 = relative_homology(x, sub_complex_x1(x), 1);
  AlexanderCheck out;
  out.h1_rank = h1.betti;
  out.h1_torsion = h1.torsion;
  out.components = forbidden_components(s);
  out.expected_rank = out.components > 0 ? out.components - 1 : 0;
  out.holds = out.h1_rank == out.expected_rank && out.h1_torsion.empty();
  return out;
}

}  // namespace dihomo
