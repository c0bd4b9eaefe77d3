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

#ifndef DIHOMO_HOMOLOGY_HPP_
#define DIHOMO_HOMOLOGY_HPP_

#include <cstdint>
#include <map>
#include <vector>

#include "dihomo/geometry.hpp"

namespace dihomo {

// Closed unit cube [base, base + sum_{a in axes} e_a]; axes is a bitmask.
struct Cell {
  Vertex base;
  std::uint32_t axes = 0;

  std::size_t dim() const;
  bool operator==(const Cell&) const = default;
  auto operator<=>(const Cell&) const = default;
};

/**
 * Grid cells of a StateSpace whose closed realization misses every
 * forbidden box. With integer box bounds their union is the state space
 * itself. Cells of each dimension are kept sorted.
 */
class CubicalComplex {
 public:
  CubicalComplex(std::vector<int> extents,
                 std::vector<std::vector<Cell>> cells_by_dim);

  std::size_t dims() const { return extents_.size(); }
  const std::vector<int>& extents() const { return extents_; }
  const std::vector<Cell>& cells(std::size_t d) const { return cells_[d]; }
  std::size_t count(std::size_t d) const {
    return d < cells_.size() ? cells_[d].size() : 0;
  }
  // Index among cells(d), or -1.
  long index_of(const Cell& c) const;
  bool contains(const Cell& c) const { return index_of(c) >= 0; }

  // Every face of every cell is present.
  bool closed_under_faces() const;

 private:
  std::vector<int> extents_;
  std::vector<std::vector<Cell>> cells_;
  std::vector<std::map<Cell, long>> index_;
};

CubicalComplex build_complex(const StateSpace& s);

// Cells lying entirely in X_1: at least n-1 axes are degenerate at 0 or N_i.
CubicalComplex sub_complex_x1(const CubicalComplex& c);

// Faces of c of one dimension lower, each with its boundary coefficient:
// (-1)^k (front face - back face) for the k-th extruded axis.
std::vector<std::pair<Cell, int>> boundary_faces(const Cell& c);

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t at(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  bool is_zero() const;

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

// Overflow-checked product; throws std::overflow_error.
IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

// d_d : C_d -> C_{d-1}; rows index (d-1)-cells, columns d-cells.
IntMatrix boundary_matrix(const CubicalComplex& c, std::size_t d);

struct SmithForm {
  IntMatrix d;  // diagonal, d_i | d_{i+1}, nonnegative
  IntMatrix u;  // unimodular, rows x rows
  IntMatrix v;  // unimodular, cols x cols
  std::vector<std::int64_t> diagonal;  // nonzero invariant factors
};

// U * A * V = D over exact 64-bit integers (throws std::overflow_error if an
// intermediate does not fit).
SmithForm smith_normal_form(const IntMatrix& a);

struct HomologyGroup {
  std::size_t betti = 0;
  std::vector<std::int64_t> torsion;  // invariant factors > 1

  bool operator==(const HomologyGroup&) const = default;
};

// H_d of C(c) / C(sub). Throws InputError if sub is not a subcomplex.
HomologyGroup relative_homology(const CubicalComplex& c,
                                const CubicalComplex& sub, std::size_t d);
HomologyGroup homology(const CubicalComplex& c, std::size_t d);

// Components of the union of open boxes (adjacency = open overlap).
std::size_t forbidden_components(const StateSpace& s);

struct AlexanderCheck {
  bool holds = false;
  std::size_t h1_rank = 0;
  std::vector<std::int64_t> h1_torsion;
  std::size_t expected_rank = 0;  // max(0, components - 1)
  std::size_t components = 0;
};

// rank H_1(X, X_1) == max(0, components - 1) with no torsion. Only defined
// for two processes; throws InputError otherwise.
AlexanderCheck alexander_check(const StateSpace& s);

}  // namespace dihomo

#endif  // DIHOMO_HOMOLOGY_HPP_
