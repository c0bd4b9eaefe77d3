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

#include <random>
#include <set>

#include "doctest.h"
#include "dihomo/exec.hpp"
#include "dihomo/pv.hpp"
#include "oracles.hpp"

using namespace dihomo;

namespace {

StateSpace swiss() {
  return build_state_space(parse_program(
      "sem a 1\nsem b 1\nproc P1: P(a) P(b) V(b) V(a)\nproc P2: P(b) P(a) V(a) V(b)\n"));
}

std::set<Vertex> as_set(const VertexSet& v) {
  const auto list = v.vertices();
  return {list.begin(), list.end()};
}

}  // namespace

TEST_CASE("reachable_set examples") {
  CHECK(reachable_set(StateSpace({1, 1}, {})).size() == 4);
  CHECK_FALSE(reachable_set(swiss()).contains(std::vector<int>{3, 3}));
  const StateSpace mutex =
      build_state_space(parse_program("sem a 1\nproc P: P(a) V(a)\nproc Q: P(a) V(a)\n"));
  const VertexSet r = reachable_set(mutex);
  CHECK_FALSE(r.contains(std::vector<int>{1, 1}));
  CHECK(r.size() == 8);
}

TEST_CASE("safe_set examples") {
  const StateSpace free_space({2, 3}, {});
  CHECK(safe_set(free_space).size() == free_space.vertex_count());
  CHECK_FALSE(safe_set(swiss()).contains(std::vector<int>{1, 1}));
  const StateSpace point({0, 0}, {});
  CHECK(safe_set(point).size() == 1);
  CHECK(reachable_set(point).size() == 1);
}

TEST_CASE("deadlocks and unsafe region examples") {
  CHECK(deadlocks(swiss()).sorted_vertices() == std::vector<Vertex>{{1, 1}});
  CHECK(deadlocks(StateSpace({3, 3}, {})).empty());
  const StateSpace crossed = build_state_space(parse_program(
      "sem a 1\nsem b 1\nproc P1: P(a) P(b) V(a) V(b)\nproc P2: P(b) P(a) V(b) V(a)\n"));
  CHECK(deadlocks(crossed).sorted_vertices() == std::vector<Vertex>{{1, 1}});

  CHECK(unsafe_region(StateSpace({3, 3}, {})).empty());
  CHECK(unsafe_region(swiss()).contains(std::vector<int>{1, 1}));
  const StateSpace line = build_state_space(parse_program("sem a 1\nproc P: P(a) V(a)\n"));
  CHECK(unsafe_region(line).empty());
}

TEST_CASE("analyses agree with set-based oracles") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t dims = 1 + static_cast<std::size_t>(trial % 3);
    const StateSpace s = oracle::random_space(rng, dims, 4, trial % 5);
    const oracle::Boxes b = oracle::from_space(s);
    const std::set<Vertex> reach = oracle::reachable(b);
    const std::set<Vertex> safe = oracle::safe(b);
    CHECK(as_set(reachable_set(s)) == reach);
    CHECK(as_set(safe_set(s)) == safe);
    CHECK(as_set(deadlocks(s)) == oracle::deadlocks(b));
    std::set<Vertex> unsafe;
    for (const Vertex& v : reach) {
      if (!safe.contains(v)) unsafe.insert(v);
    }
    CHECK(as_set(unsafe_region(s)) == unsafe);
  }
}

TEST_CASE("structural properties of the analyses") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 80; ++trial) {
    const StateSpace s = oracle::random_space(rng, 2 + trial % 2, 4, trial % 6);
    const VertexSet reach = reachable_set(s);
    const VertexSet safe = safe_set(s);
    CHECK(reach.contains(s.bottom()));
    CHECK(safe.contains(s.top()));
    const VertexSet unsafe = unsafe_region(s);
    for (const Vertex& v : deadlocks(s).vertices()) CHECK(unsafe.contains(v));
    // A complete schedule exists iff the bottom is safe.
    CHECK(safe.contains(s.bottom()) == !oracle::schedules(oracle::from_space(s)).empty());
  }
}

TEST_CASE("vertex set ordering") {
  const StateSpace s({2, 1}, {});
  const VertexSet all = reachable_set(s);
  CHECK(all.sorted_vertices() ==
        std::vector<Vertex>{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}, {2, 1}});
  CHECK(all.vertices().front() == Vertex{0, 0});
  CHECK(all.vertices()[1] == Vertex{1, 0});
}
