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

#include <map>
#include <random>

#include "doctest.h"
#include "dihomo/error.hpp"
#include "dihomo/monoid.hpp"
#include "dihomo/random.hpp"
#include "oracles.hpp"

using namespace dihomo;

namespace {

MonoidTable table(std::vector<std::vector<int>> rows) { return MonoidTable(std::move(rows)); }

MonoidTable cyclic(int m) {
  std::vector<std::vector<int>> rows(m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) rows[a].push_back((a + b) % m);
  }
  return table(rows);
}

GenWord random_word(std::mt19937_64& rng, std::size_t alphabet, std::size_t max_len) {
  GenWord w(draw_below(rng, max_len + 1));
  for (int& x : w) x = static_cast<int>(draw_below(rng, alphabet));
  return w;
}

void check_confluent(const RewritingSystem& r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 1000; ++trial) {
    const GenWord w = random_word(rng, r.alphabet, 12);
    CHECK(oracle::reduce_randomly(r, w, rng) == r.reduce(w));
  }
}

}  // namespace

TEST_CASE("monoid tables validate") {
  CHECK_NOTHROW(cyclic(4));
  CHECK_THROWS_AS(table({{0, 1}, {1, 1}, {0, 0}}), InputError);
  CHECK_THROWS_AS(table({{1, 0}, {0, 1}}), InputError);
  // Unit law holds but associativity fails: (1*1)*2 = 0*2 = 2, 1*(1*2) = 1*0 = 1.
  CHECK_THROWS_AS(table({{0, 1, 2}, {1, 0, 0}, {2, 1, 0}}), InputError);
  CHECK_THROWS_AS(table({{0, 3}, {1, 0}}), InputError);
}

TEST_CASE("parse_monoid_table") {
  const MonoidTable t = parse_monoid_table("# z3\norder 3\n0 1 2\n1 2 0\n2 0 1\n");
  CHECK(t.order() == 3);
  CHECK(t.mul(2, 2) == 1);
  CHECK_THROWS_AS(parse_monoid_table("order 2\n0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_monoid_table("0 1\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_monoid_table("order 2\n0 1\n1 x\n"), ParseError);
}

TEST_CASE("isomorphism search") {
  const auto catalog = monoid_catalog();
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    for (std::size_t j = 0; j < catalog.size(); ++j) {
      CHECK(isomorphic(catalog[i].second, catalog[j].second) == (i == j));
    }
  }
  // z4 with generators 1 and 3 swapped: same monoid, different labels.
  const int swap13[4] = {0, 3, 2, 1};
  std::vector<std::vector<int>> relabelled(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) relabelled[a][b] = swap13[(swap13[a] + swap13[b]) % 4];
  }
  CHECK(isomorphic(cyclic(4), table(relabelled)));
  CHECK(isomorphic(cyclic(4), table({{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 1, 0}, {3, 2, 0, 1}})));
}

TEST_CASE("nerve_presentation examples") {
  const MonoidPresentation z2 = nerve_presentation(cyclic(2));
  CHECK(z2.generators == std::vector<std::string>{"g1"});
  REQUIRE(z2.relations.size() == 1);
  CHECK(z2.relations[0] == std::pair<GenWord, GenWord>{{0, 0}, {}});

  const MonoidPresentation idem = nerve_presentation(table({{0, 1}, {1, 1}}));
  REQUIRE(idem.relations.size() == 1);
  CHECK(idem.relations[0] == std::pair<GenWord, GenWord>{{0, 0}, {0}});

  const MonoidPresentation trivial = nerve_presentation(table({{0}}));
  CHECK(trivial.generators.empty());
  CHECK(trivial.relations.empty());

  // One relation per ordered pair of non-identity elements, read off the table.
  const MonoidTable k4 = monoid_catalog()[4].second;
  const MonoidPresentation p = nerve_presentation(k4);
  CHECK(p.relations.size() == 9);
  for (const auto& [lhs, rhs] : p.relations) {
    const int prod = k4.mul(lhs[0] + 1, lhs[1] + 1);
    CHECK(rhs == (prod == 0 ? GenWord{} : GenWord{prod - 1}));
  }
}

TEST_CASE("parse_presentation") {
  const MonoidPresentation p = parse_presentation("generators x y\nrel x y = y x\nrel x x = 1\n");
  CHECK(p.generators == std::vector<std::string>{"x", "y"});
  REQUIRE(p.relations.size() == 2);
  CHECK(p.relations[1].second.empty());
  CHECK(render_word(p, {0, 1}) == "x y");
  CHECK(render_word(p, {}) == "1");
  CHECK_THROWS_AS(parse_presentation("generators x\nrel x z = x\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("rel x = x\n"), ParseError);
}

TEST_CASE("knuth_bendix examples") {
  const RewritingSystem z2 = knuth_bendix(nerve_presentation(cyclic(2)));
  CHECK(z2.complete);
  CHECK(z2.rules.size() == 1);

  const RewritingSystem idem = knuth_bendix(parse_presentation("generators x\nrel x x = x\n"));
  CHECK(idem.complete);
  REQUIRE(idem.rules.size() == 1);
  CHECK(idem.rules[0] == Rule{{0, 0}, {0}});

  const RewritingSystem free_x = knuth_bendix(parse_presentation("generators x\n"));
  CHECK(free_x.complete);
  CHECK(free_x.rules.empty());
}

TEST_CASE("completion limits give an incomplete status") {
  // Commutation with a cube law needs more than two rules.
  const MonoidPresentation p =
      parse_presentation("generators a b\nrel a a a = 1\nrel b b = 1\nrel a b = b a a\n");
  const RewritingSystem r = knuth_bendix(p, CompletionLimits{2, 64});
  CHECK_FALSE(r.complete);
  CHECK_THROWS_AS(normal_forms(r, 3), InputError);
}

TEST_CASE("rules are shortlex decreasing and systems confluent") {
  std::uint64_t seed = 0;
  for (const auto& [name, t] : monoid_catalog()) {
    INFO(name);
    const RewritingSystem r = knuth_bendix(nerve_presentation(t));
    REQUIRE(r.complete);
    for (const Rule& rule : r.rules) CHECK(shortlex_less(rule.rhs, rule.lhs));
    if (r.alphabet > 0) check_confluent(r, seed++);
  }
  const char* presentations[] = {
      "generators a b\nrel a b = b a\nrel a a = 1\n",
      "generators a b\nrel a b a = b a b\n",
      "generators a b\nrel a a a = 1\nrel b b = 1\nrel a b = b a a\n",
  };
  for (const char* src : presentations) {
    const RewritingSystem r = knuth_bendix(parse_presentation(src));
    if (r.complete) check_confluent(r, seed++);
  }
}

TEST_CASE("normal_forms examples") {
  const NormalForms z2 = normal_forms(knuth_bendix(nerve_presentation(cyclic(2))), 4);
  CHECK(z2.words == std::vector<GenWord>{{}, {0}});
  CHECK(z2.finite_and_closed);

  const NormalForms free_x = normal_forms(knuth_bendix(parse_presentation("generators x\n")), 3);
  CHECK(free_x.words == std::vector<GenWord>{{}, {0}, {0, 0}, {0, 0, 0}});
  CHECK_FALSE(free_x.finite_and_closed);

  const NormalForms trivial = normal_forms(knuth_bendix(nerve_presentation(table({{0}}))), 3);
  CHECK(trivial.words == std::vector<GenWord>{{}});
  CHECK(trivial.finite_and_closed);
}

TEST_CASE("normal-form multiplication is an associative monoid") {
  for (const auto& [name, t] : monoid_catalog()) {
    const RewritingSystem r = knuth_bendix(nerve_presentation(t));
    const NormalForms nf = normal_forms(r, static_cast<std::size_t>(t.order()));
    REQUIRE(nf.finite_and_closed);
    auto mul = [&](const GenWord& a, const GenWord& b) {
      GenWord ab = a;
      ab.insert(ab.end(), b.begin(), b.end());
      return r.reduce(ab);
    };
    for (const GenWord& a : nf.words) {
      CHECK(mul(a, {}) == a);
      CHECK(mul({}, a) == a);
      for (const GenWord& b : nf.words) {
        for (const GenWord& c : nf.words) CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
      }
    }
  }
}

TEST_CASE("fundamental monoid check over the catalog") {
  const auto catalog = monoid_catalog();
  CHECK(catalog.size() == 7);
  for (const auto& [name, t] : catalog) {
    INFO(name);
    const MonoidCheck c = fundamental_monoid_check(t);
    REQUIRE(c.isomorphic.has_value());
    CHECK(*c.isomorphic);
    CHECK(c.normal_form_count == static_cast<std::size_t>(t.order()));
  }
}

TEST_CASE("group_completion examples") {
  const GroupCompletion free_x = group_completion(parse_presentation("generators x\n"));
  CHECK(free_x.system.complete);
  CHECK(free_x.kind == GroupKind::kInfiniteCyclic);
  CHECK(free_x.presentation.generators.size() == 2);
  // x^k and its inverse powers: two words of each positive length.
  CHECK(free_x.growth == std::vector<std::size_t>{1, 2, 2, 2, 2, 2, 2});

  const GroupCompletion idem = group_completion(parse_presentation("generators x\nrel x x = x\n"));
  CHECK(idem.system.complete);
  CHECK(idem.kind == GroupKind::kTrivial);
  CHECK(idem.order == 1u);

  const GroupCompletion z3 = group_completion(nerve_presentation(cyclic(3)));
  CHECK(z3.system.complete);
  CHECK(z3.kind == GroupKind::kFinite);
  CHECK(z3.order == 3u);
  CHECK(z3.cyclic);

  const GroupCompletion klein = group_completion(nerve_presentation(monoid_catalog()[4].second));
  CHECK(klein.order == 4u);
  CHECK_FALSE(klein.cyclic);

  const GroupCompletion free2 = group_completion(parse_presentation("generators x y\n"));
  CHECK(free2.kind == GroupKind::kInfinite);

  const GroupCompletion z2z = group_completion(parse_presentation("generators x y\nrel x y = y x\n"));
  CHECK(z2z.kind == GroupKind::kInfinite);
}

TEST_CASE("completion map is a homomorphism") {
  for (const auto& [name, t] : monoid_catalog()) {
    const MonoidPresentation p = nerve_presentation(t);
    CHECK(completion_map_is_homomorphism(p, group_completion(p)));
  }
  const MonoidPresentation idem = parse_presentation("generators x\nrel x x = x\n");
  CHECK(completion_map_is_homomorphism(idem, group_completion(idem)));
}

TEST_CASE("group completion of a finite monoid is its group of units quotient") {
  // left-zero3 has x*y = x for x, y != 1; inverting x collapses everything.
  const GroupCompletion lz = group_completion(nerve_presentation(monoid_catalog()[6].second));
  CHECK(lz.system.complete);
  CHECK(lz.kind == GroupKind::kTrivial);
}
