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

#ifndef DIHOMO_MONOID_HPP_
#define DIHOMO_MONOID_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dihomo {

// Word over generator indices 0..k-1; the empty word is the identity.
using GenWord = std::vector<int>;

// Shortlex: shorter first, then lexicographic by generator index.
bool shortlex_less(const GenWord& a, const GenWord& b);

/**
 * Finite monoid by multiplication table. Element 0 is the identity.
 * Associativity and the unit law are verified on construction.
 */
class MonoidTable {
 public:
  explicit MonoidTable(std::vector<std::vector<int>> rows);

  int order() const { return order_; }
  int mul(int a, int b) const { return table_[a * order_ + b]; }
  std::vector<std::vector<int>> rows() const;

 private:
  int order_;
  std::vector<int> table_;
};

// "order m" followed by m rows of m integers; row i lists i*j.
MonoidTable parse_monoid_table(std::string_view text);

// Named tables: trivial, z2, z3, z4, klein4, idempotent, left-zero3.
std::vector<std::pair<std::string, MonoidTable>> monoid_catalog();

// Exhaustive search for an isomorphism fixing the identity.
bool isomorphic(const MonoidTable& a, const MonoidTable& b);

struct MonoidPresentation {
  std::vector<std::string> generators;
  std::vector<std::pair<GenWord, GenWord>> relations;

  // Throws InputError if a relation uses an undeclared generator.
  void validate() const;
};

// "generators x y" then "rel <word> = <word>" lines; words are
// space-separated generator names, "1" is the empty word.
MonoidPresentation parse_presentation(std::string_view text);
std::string render_word(const MonoidPresentation& p, const GenWord& w);

// One generator per non-identity element; g_a g_b = g_{ab} for every pair
// of non-identity elements (empty right side when ab is the identity).
MonoidPresentation nerve_presentation(const MonoidTable& t);

struct Rule {
  GenWord lhs;
  GenWord rhs;

  bool operator==(const Rule&) const = default;
};

struct RewritingSystem {
  std::size_t alphabet = 0;
  std::vector<Rule> rules;  // every rule is shortlex-decreasing
  bool complete = false;

  // Leftmost-first rewriting to an irreducible word.
  GenWord reduce(GenWord w) const;
  bool irreducible(const GenWord& w) const;
};

struct CompletionLimits {
  std::size_t max_rules = 2000;
  std::size_t max_len = 64;
};

// Shortlex Knuth-Bendix completion with generator order = index order. On
// limit exhaustion the partial system is returned with complete = false.
RewritingSystem knuth_bendix(const MonoidPresentation& p,
                             const CompletionLimits& limits = {});

struct NormalForms {
  std::vector<GenWord> words;  // lexicographic
  // Closed under reduce-after-concatenate; implies these are all of them.
  bool finite_and_closed = false;
};

// Throws InputError on an incomplete system.
NormalForms normal_forms(const RewritingSystem& r, std::size_t length_bound);

struct MonoidCheck {
  std::optional<bool> isomorphic;  // nullopt: completion incomplete
  std::size_t normal_form_count = 0;
  std::size_t rules = 0;
};

// The monoid presented by the nerve of t, computed by completion, is
// isomorphic to t.
MonoidCheck fundamental_monoid_check(const MonoidTable& t,
                                     const CompletionLimits& limits = {});

enum class GroupKind { kIndeterminate, kTrivial, kFinite, kInfiniteCyclic,
                       kInfinite };

std::string_view to_string(GroupKind k);

struct GroupCompletion {
  // Generator i becomes letter 2i, its inverse letter 2i + 1.
  MonoidPresentation presentation;
  RewritingSystem system;
  GroupKind kind = GroupKind::kIndeterminate;
  std::optional<std::size_t> order;  // finite groups
  bool cyclic = false;
  // Number of normal forms of each length 0..growth_bound.
  std::vector<std::size_t> growth;
};

// Adjoins an inverse g^-1 per generator with g g^-1 = g^-1 g = 1, completes,
// and classifies the normal-form language exactly (finite order, infinite
// cyclic, or infinite).
GroupCompletion group_completion(const MonoidPresentation& p,
                                 const CompletionLimits& limits = {},
                                 std::size_t growth_bound = 6);

// Every relation of p holds in the completion (generators map to
// themselves).
bool completion_map_is_homomorphism(const MonoidPresentation& p,
                                    const GroupCompletion& g);

}  // namespace dihomo

#endif  // DIHOMO_MONOID_HPP_
