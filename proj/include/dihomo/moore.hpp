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

#ifndef DIHOMO_MOORE_HPP_
#define DIHOMO_MOORE_HPP_

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "dihomo/dihomotopy.hpp"
#include "dihomo/geometry.hpp"

namespace dihomo {

using Rational = boost::multiprecision::cpp_rational;
using Point = std::vector<Rational>;

struct Breakpoint {
  Rational time;
  Point point;

  bool operator==(const Breakpoint&) const = default;
};

/**
 * Piecewise-linear Moore path (path, duration), constant after its duration.
 *
 * Stored in canonical form: strictly increasing times starting at 0 and
 * ending at the duration, with no interior breakpoint at which the velocity
 * is unchanged. Two paths are equal as functions iff their representations
 * are equal.
 */
class MoorePath {
 public:
  // Normalizes; throws InputError on an empty list, a first time other than
  // 0, decreasing times, a jump at a repeated time, or mixed dimensions.
  MoorePath(std::vector<Breakpoint> breakpoints,
            std::vector<bool> directed_axes);

  const Rational& duration() const { return breakpoints_.back().time; }
  const std::vector<Breakpoint>& breakpoints() const { return breakpoints_; }
  const std::vector<bool>& directed_axes() const { return directed_; }
  std::size_t dims() const { return breakpoints_.front().point.size(); }

  bool operator==(const MoorePath&) const = default;

 private:
  std::vector<Breakpoint> breakpoints_;
  std::vector<bool> directed_;
};

// Duration-0 path at x; every axis directed unless given.
MoorePath identity_path(const Point& x);
MoorePath identity_path(const Point& x, std::vector<bool> directed_axes);

// Runs `first` then `second`; duration is the sum.
MoorePath compose(const MoorePath& second, const MoorePath& first);

Point evaluate(const MoorePath& p, const Rational& t);
const Point& dom(const MoorePath& p);
const Point& cod(const MoorePath& p);

// Every directed axis is nondecreasing.
bool is_dipath(const MoorePath& p);

// Unit-speed realization through the grid vertices; duration |w|.
MoorePath schedule_to_moore(const StateSpace& s, const Word& w);

std::string to_string(const Point& x);

struct MooreLawReport {
  std::size_t trials = 0;
  std::size_t associativity_failures = 0;
  std::size_t left_unit_failures = 0;
  std::size_t right_unit_failures = 0;
  std::size_t additivity_failures = 0;
  std::size_t dipath_closure_failures = 0;

  bool ok() const {
    return associativity_failures + left_unit_failures + right_unit_failures +
               additivity_failures + dipath_closure_failures ==
           0;
  }
};

// Random composable rational PL triples (p, q, r); checks the category laws
// by exact representation equality.
MooreLawReport check_moore_laws(std::uint64_t seed, std::size_t trials);

}  // namespace dihomo

#endif  // DIHOMO_MOORE_HPP_
