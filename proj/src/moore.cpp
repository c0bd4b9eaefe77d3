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

#include "dihomo/moore.hpp"

#include <sstream>

#include "dihomo/error.hpp"
#include "dihomo/random.hpp"

namespace dihomo {

namespace {

// (b - a) / (tb - ta) per axis.
Point velocity(const Breakpoint& a, const Breakpoint& b) {
  Point v(a.point.size());
  const Rational dt = b.time - a.time;
  for (std::size_t j = 0; j < v.size(); ++j) {
    v[j] = (b.point[j] - a.point[j]) / dt;
  }
  return v;
}

std::vector<Breakpoint> normalize(std::vector<Breakpoint> in) {
  if (in.empty()) throw InputError("a Moore path needs at least one breakpoint");
  if (in.front().time != 0) throw InputError("first breakpoint must be at t=0");
  const std::size_t dims = in.front().point.size();
  std::vector<Breakpoint> merged;
  for (Breakpoint& b : in) {
    if (b.point.size() != dims) throw InputError("breakpoint dimension mismatch");
    if (!merged.empty()) {
      if (b.time < merged.back().time) {
        throw InputError("breakpoint times must increase");
      }
      if (b.time == merged.back().time) {
        if (b.point != merged.back().point) {
          throw InputError("path jumps at t=" + merged.back().time.str());
        }
        continue;
      }
    }
    merged.push_back(std::move(b));
  }
  std::vector<Breakpoint> out;
  for (Breakpoint& b : merged) {
    if (out.size() >= 2 &&
        velocity(out[out.size() - 2], out.back()) == velocity(out.back(), b)) {
      out.back() = std::move(b);
    } else {
      out.push_back(std::move(b));
    }
  }
  return out;
}

}  // namespace

MoorePath::MoorePath(std::vector<Breakpoint> breakpoints,
                     std::vector<bool> directed_axes)
    : breakpoints_(normalize(std::move(breakpoints))),
      directed_(std::move(directed_axes)) {
  if (directed_.size() != dims()) {
    throw InputError("directed_axes must have one flag per dimension");
  }
}

MoorePath identity_path(const Point& x) {
  return identity_path(x, std::vector<bool>(x.size(), true));
}

MoorePath identity_path(const Point& x, std::vector<bool> directed_axes) {
  return MoorePath({{Rational(0), x}}, std::move(directed_axes));
}

MoorePath compose(const MoorePath& second, const MoorePath& first) {
  if (first.dims() != second.dims()) {
    throw InputError("compose: dimension mismatch");
  }
  if (first.directed_axes() != second.directed_axes()) {
    throw InputError("compose: directed axes differ");
  }
  if (cod(first) != dom(second)) {
    throw InputError("compose: cod(first) = " + to_string(cod(first)) +
                     " but dom(second) = " + to_string(dom(second)));
  }
  std::vector<Breakpoint> joined = first.breakpoints();
  const Rational shift = first.duration();
  for (const Breakpoint& b : second.breakpoints()) {
    joined.push_back({b.time + shift, b.point});
  }
  return MoorePath(std::move(joined), first.directed_axes());
}

Point evaluate(const MoorePath& p, const Rational& t) {
  if (t < 0) throw InputError("evaluate: negative time");
  const auto& bp = p.breakpoints();
  if (t >= p.duration()) return bp.back().point;
  std::size_t k = 1;
  while (bp[k].time < t) ++k;
  const Breakpoint& a = bp[k - 1];
  const Breakpoint& b = bp[k];
  const Rational s = (t - a.time) / (b.time - a.time);
  Point out(a.point.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = a.point[j] + s * (b.point[j] - a.point[j]);
  }
  return out;
}

const Point& dom(const MoorePath& p) { return p.breakpoints().front().point; }
const Point& cod(const MoorePath& p) { return p.breakpoints().back().point; }

bool is_dipath(const MoorePath& p) {
  const auto& bp = p.breakpoints();
  for (std::size_t k = 1; k < bp.size(); ++k) {
    for (std::size_t j = 0; j < p.dims(); ++j) {
      if (p.directed_axes()[j] && bp[k].point[j] < bp[k - 1].point[j]) {
        return false;
      }
    }
  }
  return true;
}

MoorePath schedule_to_moore(const StateSpace& s, const Word& w) {
  if (!schedule_valid(s, w)) {
    throw InputError("schedule_to_moore: invalid schedule " + format_word(w));
  }
  Point at(s.dims(), Rational(0));
  std::vector<Breakpoint> bp{{Rational(0), at}};
  for (std::size_t k = 0; k < w.size(); ++k) {
    at[w[k]] += 1;
    bp.push_back({Rational(static_cast<long long>(k) + 1), at});
  }
  return MoorePath(std::move(bp), std::vector<bool>(s.dims(), true));
}

std::string to_string(const Point& x) {
  std::ostringstream out;
  out << '(';
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j > 0) out << ',';
    out << x[j].str();
  }
  out << ')';
  return out.str();
}

namespace {

Rational random_rational(std::mt19937_64& rng, std::int64_t lo,
                         std::int64_t hi) {
  const std::int64_t den = draw_between(rng, 1, 6);
  return Rational(draw_between(rng, lo * den, hi * den), den);
}

// Starts at `from`; with probability 1/5 an identity path. Half of the
// paths only move forward so dipath closure gets exercised.
MoorePath random_path(std::mt19937_64& rng, const Point& from,
                      const std::vector<bool>& directed) {
  if (draw_below(rng, 5) == 0) return identity_path(from, directed);
  const bool forward = draw_below(rng, 2) == 0;
  std::vector<Breakpoint> bp{{Rational(0), from}};
  const std::int64_t segments = draw_between(rng, 1, 4);
  for (std::int64_t k = 0; k < segments; ++k) {
    Breakpoint next = bp.back();
    next.time += random_rational(rng, 0, 3) + Rational(1, 7);
    for (Rational& x : next.point) {
      x += forward ? random_rational(rng, 0, 2) : random_rational(rng, -2, 2);
    }
    bp.push_back(std::move(next));
  }
  return MoorePath(std::move(bp), directed);
}

}  // namespace

MooreLawReport check_moore_laws(std::uint64_t seed, std::size_t trials) {
  std::mt19937_64 rng(seed);
  MooreLawReport report;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t dims = 1 + draw_below(rng, 3);
    std::vector<bool> directed(dims);
    for (std::size_t j = 0; j < dims; ++j) directed[j] = draw_below(rng, 2) == 0;
    Point start(dims);
    for (Rational& x : start) x = random_rational(rng, -3, 3);

    const MoorePath p = random_path(rng, start, directed);
    const MoorePath q = random_path(rng, cod(p), directed);
    const MoorePath r = random_path(rng, cod(q), directed);

    ++report.trials;
    if (compose(compose(r, q), p) != compose(r, compose(q, p))) {
      ++report.associativity_failures;
    }
    if (compose(identity_path(cod(p), directed), p) != p) {
      ++report.left_unit_failures;
    }
    if (compose(p, identity_path(dom(p), directed)) != p) {
      ++report.right_unit_failures;
    }
    if (compose(q, p).duration() != p.duration() + q.duration()) {
      ++report.additivity_failures;
    }
    if (is_dipath(p) && is_dipath(q) && !is_dipath(compose(q, p))) {
      ++report.dipath_closure_failures;
    }
  }
  return report;
}

}  // namespace dihomo
