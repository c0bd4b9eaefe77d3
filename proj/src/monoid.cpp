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

#include "dihomo/monoid.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "dihomo/error.hpp"

namespace dihomo {

namespace {

GenWord concat(const GenWord& a, const GenWord& b) {
  GenWord out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

bool matches_at(const GenWord& w, std::size_t pos, const GenWord& pattern) {
  if (pos + pattern.size() > w.size()) return false;
  return std::equal(pattern.begin(), pattern.end(), w.begin() + pos);
}

bool contains_factor(const GenWord& w, const GenWord& pattern) {
  if (pattern.size() > w.size()) return false;
  for (std::size_t i = 0; i + pattern.size() <= w.size(); ++i) {
    if (matches_at(w, i, pattern)) return true;
  }
  return false;
}

bool has_suffix(const GenWord& w, const GenWord& suffix) {
  return suffix.size() <= w.size() &&
         std::equal(suffix.begin(), suffix.end(), w.end() - suffix.size());
}

// Irreducible words of length exactly len+1 obtained by extending `level`.
std::vector<GenWord> extend_level(const RewritingSystem& r,
                                  const std::vector<GenWord>& level) {
  std::vector<GenWord> next;
  for (const GenWord& w : level) {
    for (std::size_t a = 0; a < r.alphabet; ++a) {
      GenWord x = w;
      x.push_back(static_cast<int>(a));
      bool ok = true;
      for (const Rule& rule : r.rules) {
        if (has_suffix(x, rule.lhs)) {
          ok = false;
          break;
        }
      }
      if (ok) next.push_back(std::move(x));
    }
  }
  return next;
}

// The irreducible words form a finite set iff the suffix automaton of
// irreducible words has no cycle reachable from the empty word.
bool normal_forms_finite(const RewritingSystem& r) {
  if (r.alphabet == 0) return true;
  std::size_t window = 0;
  for (const Rule& rule : r.rules) window = std::max(window, rule.lhs.size());
  if (window == 0) return false;
  const std::size_t keep = window - 1;

  std::map<GenWord, int> color;  // 1 = on stack, 2 = done
  std::function<bool(const GenWord&)> has_cycle = [&](const GenWord& s) {
    color[s] = 1;
    for (const GenWord& x : extend_level(r, {s})) {
      GenWord next(x.end() - static_cast<std::ptrdiff_t>(std::min(keep, x.size())),
                   x.end());
      auto it = color.find(next);
      if (it != color.end()) {
        if (it->second == 1) return true;
        continue;
      }
      if (has_cycle(next)) return true;
    }
    color[s] = 2;
    return false;
  };
  return !has_cycle(GenWord{});
}

GenWord tokens_to_word(const std::vector<std::string>& toks,
                                    const std::map<std::string, int>& names,
                                    std::size_t line) {
  GenWord w;
  for (const std::string& t : toks) {
    if (t == "1") continue;
    auto it = names.find(t);
    if (it == names.end()) {
      throw ParseError("undeclared-generator", line, 1,
                       "generator '" + t + "' is not declared");
    }
    w.push_back(it->second);
  }
  return w;
}

}  // namespace

bool shortlex_less(const GenWord& a, const GenWord& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

MonoidTable::MonoidTable(std::vector<std::vector<int>> rows)
    : order_(static_cast<int>(rows.size())) {
  if (order_ < 1) throw InputError("a monoid has at least one element");
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != order_) {
      throw InputError("monoid table must be square");
    }
    for (int x : row) {
      if (x < 0 || x >= order_) throw InputError("table entry out of range");
      table_.push_back(x);
    }
  }
  for (int a = 0; a < order_; ++a) {
    if (mul(0, a) != a || mul(a, 0) != a) {
      throw InputError("element 0 is not a two-sided identity");
    }
  }
  for (int a = 0; a < order_; ++a) {
    for (int b = 0; b < order_; ++b) {
      for (int c = 0; c < order_; ++c) {
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
          throw InputError("table is not associative at (" +
                           std::to_string(a) + "," + std::to_string(b) + "," +
                           std::to_string(c) + ")");
        }
      }
    }
  }
}

std::vector<std::vector<int>> MonoidTable::rows() const {
  std::vector<std::vector<int>> out(order_);
  for (int a = 0; a < order_; ++a) {
    for (int b = 0; b < order_; ++b) out[a].push_back(mul(a, b));
  }
  return out;
}

MonoidTable parse_monoid_table(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  int order = -1;
  std::vector<std::vector<int>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream tok(line);
    std::vector<std::string> words;
    for (std::string t; tok >> t;) words.push_back(t);
    if (words.empty()) continue;
    auto as_int = [&](const std::string& t) {
      if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos ||
          t.size() > 6) {
        throw ParseError("syntax", line_no, 1, "expected an integer, got '" +
                                                   t + "'");
      }
      return std::stoi(t);
    };
    if (order < 0) {
      if (words.size() != 2 || words[0] != "order") {
        throw ParseError("syntax", line_no, 1, "expected 'order m'");
      }
      order = as_int(words[1]);
      continue;
    }
    if (static_cast<int>(words.size()) != order) {
      throw ParseError("syntax", line_no, 1,
                       "row must have " + std::to_string(order) + " entries");
    }
    std::vector<int> row;
    for (const auto& w : words) row.push_back(as_int(w));
    rows.push_back(std::move(row));
  }
  if (order < 0) throw ParseError("syntax", line_no, 1, "missing 'order' line");
  if (static_cast<int>(rows.size()) != order) {
    throw ParseError("syntax", line_no, 1,
                     "expected " + std::to_string(order) + " rows");
  }
  return MonoidTable(std::move(rows));
}

std::vector<std::pair<std::string, MonoidTable>> monoid_catalog() {
  std::vector<std::pair<std::string, MonoidTable>> out;
  out.emplace_back("trivial", MonoidTable(std::vector<std::vector<int>>{{0}}));
  for (int m = 2; m <= 4; ++m) {
    std::vector<std::vector<int>> rows(m);
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) rows[a].push_back((a + b) % m);
    }
    out.emplace_back("z" + std::to_string(m), MonoidTable(std::move(rows)));
  }
  out.emplace_back("klein4", MonoidTable({{0, 1, 2, 3},
                                          {1, 0, 3, 2},
                                          {2, 3, 0, 1},
                                          {3, 2, 1, 0}}));
  out.emplace_back("idempotent", MonoidTable({{0, 1}, {1, 1}}));
  // Identity adjoined to the left-zero semigroup {a, b}: xy = x.
  out.emplace_back("left-zero3",
                   MonoidTable({{0, 1, 2}, {1, 1, 1}, {2, 2, 2}}));
  return out;
}

bool isomorphic(const MonoidTable& a, const MonoidTable& b) {
  const int m = a.order();
  if (m != b.order()) return false;
  std::vector<int> f(m, -1);
  std::vector<bool> used(m, false);
  f[0] = 0;
  used[0] = true;

  auto consistent = [&](int upto) {
    for (int x = 0; x <= upto; ++x) {
      for (int y = 0; y <= upto; ++y) {
        const int xy = a.mul(x, y);
        if (f[xy] >= 0 && f[xy] != b.mul(f[x], f[y])) return false;
      }
    }
    return true;
  };
  std::function<bool(int)> assign = [&](int x) {
    if (x == m) return consistent(m - 1);
    for (int y = 1; y < m; ++y) {
      if (used[y]) continue;
      f[x] = y;
      used[y] = true;
      if (consistent(x) && assign(x + 1)) return true;
      used[y] = false;
      f[x] = -1;
    }
    return false;
  };
  return assign(1);
}

void MonoidPresentation::validate() const {
  const auto k = static_cast<int>(generators.size());
  for (const auto& [l, r] : relations) {
    for (const GenWord* w : {&l, &r}) {
      for (int g : *w) {
        if (g < 0 || g >= k) {
          throw InputError("relation uses an undeclared generator");
        }
      }
    }
  }
}

MonoidPresentation parse_presentation(std::string_view text) {
  MonoidPresentation p;
  std::map<std::string, int> names;
  bool have_gens = false;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream tok(line);
    std::vector<std::string> words;
    for (std::string t; tok >> t;) words.push_back(t);
    if (words.empty()) continue;
    if (words[0] == "generators") {
      if (have_gens) {
        throw ParseError("syntax", line_no, 1, "duplicate generators line");
      }
      have_gens = true;
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (words[i] == "1" || words[i] == "=" ||
            !names.emplace(words[i], static_cast<int>(p.generators.size()))
                 .second) {
          throw ParseError("syntax", line_no, 1,
                           "bad or repeated generator '" + words[i] + "'");
        }
        p.generators.push_back(words[i]);
      }
    } else if (words[0] == "rel") {
      if (!have_gens) {
        throw ParseError("syntax", line_no, 1,
                         "'generators' must come before relations");
      }
      auto eq = std::find(words.begin(), words.end(), "=");
      if (eq == words.end() || std::count(words.begin(), words.end(), "=") != 1) {
        throw ParseError("syntax", line_no, 1, "relation needs exactly one '='");
      }
      std::vector<std::string> lhs(words.begin() + 1, eq);
      std::vector<std::string> rhs(eq + 1, words.end());
      if (lhs.empty() || rhs.empty()) {
        throw ParseError("syntax", line_no, 1,
                         "write the empty word as '1'");
      }
      p.relations.emplace_back(tokens_to_word(lhs, names, line_no),
                               tokens_to_word(rhs, names, line_no));
    } else {
      throw ParseError("syntax", line_no, 1,
                       "expected 'generators' or 'rel'");
    }
  }
  if (!have_gens) throw ParseError("syntax", line_no, 1, "missing generators");
  return p;
}

std::string render_word(const MonoidPresentation& p, const GenWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += p.generators.at(static_cast<std::size_t>(w[i]));
  }
  return out;
}

MonoidPresentation nerve_presentation(const MonoidTable& t) {
  MonoidPresentation p;
  for (int e = 1; e < t.order(); ++e) p.generators.push_back("g" + std::to_string(e));
  // Element e != 0 is generator e-1.
  for (int a = 1; a < t.order(); ++a) {
    for (int b = 1; b < t.order(); ++b) {
      const int ab = t.mul(a, b);
      GenWord rhs;
      if (ab != 0) rhs.push_back(ab - 1);
      p.relations.emplace_back(GenWord{a - 1, b - 1}, std::move(rhs));
    }
  }
  return p;
}

GenWord RewritingSystem::reduce(GenWord w) const {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < w.size() && !changed; ++i) {
      for (const Rule& r : rules) {
        if (!matches_at(w, i, r.lhs)) continue;
        GenWord next(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
        next.insert(next.end(), r.rhs.begin(), r.rhs.end());
        next.insert(next.end(),
                    w.begin() + static_cast<std::ptrdiff_t>(i + r.lhs.size()),
                    w.end());
        w = std::move(next);
        changed = true;
        break;
      }
    }
  }
  return w;
}

bool RewritingSystem::irreducible(const GenWord& w) const {
  for (const Rule& r : rules) {
    if (contains_factor(w, r.lhs)) return false;
  }
  return true;
}

RewritingSystem knuth_bendix(const MonoidPresentation& p,
                             const CompletionLimits& limits) {
  if (limits.max_rules == 0 || limits.max_len == 0) {
    throw InputError("completion limits must be positive");
  }
  p.validate();
  RewritingSystem rs;
  rs.alphabet = p.generators.size();
  std::deque<std::pair<GenWord, GenWord>> pending(p.relations.begin(),
                                                  p.relations.end());
  // Bounds the total work when completion oscillates without growing.
  std::size_t budget = limits.max_rules * 64 + 1024;

  while (true) {
    while (!pending.empty()) {
      if (budget-- == 0) return rs;
      auto [a, b] = std::move(pending.front());
      pending.pop_front();
      a = rs.reduce(std::move(a));
      b = rs.reduce(std::move(b));
      if (a == b) continue;
      if (shortlex_less(a, b)) std::swap(a, b);
      if (a.size() > limits.max_len) return rs;

      std::vector<Rule> kept;
      for (Rule& r : rs.rules) {
        if (contains_factor(r.lhs, a)) {
          pending.emplace_back(std::move(r.lhs), std::move(r.rhs));
        } else {
          kept.push_back(std::move(r));
        }
      }
      kept.push_back({std::move(a), std::move(b)});
      rs.rules = std::move(kept);
      for (Rule& r : rs.rules) r.rhs = rs.reduce(r.rhs);
      if (rs.rules.size() > limits.max_rules) return rs;
    }

    // Critical pairs: overlaps (suffix of l1 = prefix of l2) and inclusions.
    for (std::size_t i = 0; i < rs.rules.size(); ++i) {
      for (std::size_t j = 0; j < rs.rules.size(); ++j) {
        const Rule& r1 = rs.rules[i];
        const Rule& r2 = rs.rules[j];
        const std::size_t l1 = r1.lhs.size();
        const std::size_t l2 = r2.lhs.size();
        for (std::size_t k = 1; k < std::min(l1, l2); ++k) {
          if (!std::equal(r1.lhs.end() - static_cast<std::ptrdiff_t>(k),
                          r1.lhs.end(), r2.lhs.begin())) {
            continue;
          }
          const GenWord tail(r2.lhs.begin() + static_cast<std::ptrdiff_t>(k),
                             r2.lhs.end());
          const GenWord head(r1.lhs.begin(),
                             r1.lhs.end() - static_cast<std::ptrdiff_t>(k));
          GenWord s1 = rs.reduce(concat(r1.rhs, tail));
          GenWord s2 = rs.reduce(concat(head, r2.rhs));
          if (s1 != s2) pending.emplace_back(std::move(s1), std::move(s2));
        }
        if (i != j && l2 <= l1) {
          for (std::size_t pos = 0; pos + l2 <= l1; ++pos) {
            if (!matches_at(r1.lhs, pos, r2.lhs)) continue;
            GenWord alt(r1.lhs.begin(),
                        r1.lhs.begin() + static_cast<std::ptrdiff_t>(pos));
            alt.insert(alt.end(), r2.rhs.begin(), r2.rhs.end());
            alt.insert(alt.end(),
                       r1.lhs.begin() + static_cast<std::ptrdiff_t>(pos + l2),
                       r1.lhs.end());
            GenWord s1 = rs.reduce(r1.rhs);
            GenWord s2 = rs.reduce(std::move(alt));
            if (s1 != s2) pending.emplace_back(std::move(s1), std::move(s2));
          }
        }
      }
    }
    if (pending.empty()) {
      rs.complete = true;
      std::sort(rs.rules.begin(), rs.rules.end(),
                [](const Rule& x, const Rule& y) {
                  return shortlex_less(x.lhs, y.lhs);
                });
      return rs;
    }
  }
}

NormalForms normal_forms(const RewritingSystem& r, std::size_t length_bound) {
  if (!r.complete) {
    throw InputError("normal_forms needs a complete rewriting system");
  }
  NormalForms out;
  std::vector<GenWord> level{GenWord{}};
  for (std::size_t len = 0; len <= length_bound && !level.empty(); ++len) {
    out.words.insert(out.words.end(), level.begin(), level.end());
    level = extend_level(r, level);
  }
  std::sort(out.words.begin(), out.words.end());
  // Closed means the census is the whole monoid: nothing irreducible lies
  // past the bound, and products stay inside.
  out.finite_and_closed = level.empty();
  if (!out.finite_and_closed) return out;
  const std::set<GenWord> members(out.words.begin(), out.words.end());
  for (const GenWord& a : out.words) {
    for (const GenWord& b : out.words) {
      if (!members.contains(r.reduce(concat(a, b)))) {
        out.finite_and_closed = false;
        return out;
      }
    }
  }
  return out;
}

MonoidCheck fundamental_monoid_check(const MonoidTable& t,
                                     const CompletionLimits& limits) {
  MonoidCheck check;
  const RewritingSystem rs = knuth_bendix(nerve_presentation(t), limits);
  check.rules = rs.rules.size();
  if (!rs.complete) return check;

  // Each failed closure adds an irreducible word one letter longer, so the
  // census either closes or exceeds |M| within |M| + 1 rounds.
  const auto m = static_cast<std::size_t>(t.order());
  for (std::size_t bound = 0;; ++bound) {
    NormalForms nf = normal_forms(rs, bound);
    check.normal_form_count = nf.words.size();
    if (nf.words.size() > m) {
      check.isomorphic = false;
      return check;
    }
    if (!nf.finite_and_closed) continue;
    std::map<GenWord, int> index;
    for (std::size_t i = 0; i < nf.words.size(); ++i) {
      index[nf.words[i]] = static_cast<int>(i);
    }
    std::vector<std::vector<int>> rows(nf.words.size());
    for (std::size_t i = 0; i < nf.words.size(); ++i) {
      for (std::size_t j = 0; j < nf.words.size(); ++j) {
        rows[i].push_back(index.at(rs.reduce(concat(nf.words[i], nf.words[j]))));
      }
    }
    check.isomorphic = isomorphic(MonoidTable(std::move(rows)), t);
    return check;
  }
}

std::string_view to_string(GroupKind k) {
  switch (k) {
    case GroupKind::kIndeterminate: return "indeterminate";
    case GroupKind::kTrivial: return "trivial";
    case GroupKind::kFinite: return "finite";
    case GroupKind::kInfiniteCyclic: return "infinite-cyclic";
    case GroupKind::kInfinite: return "infinite";
  }
  return "indeterminate";
}

namespace {

// Generator i of a presentation is letter 2i of its group completion.
GenWord to_completion_letters(const GenWord& w) {
  GenWord out;
  for (int x : w) out.push_back(2 * x);
  return out;
}

}  // namespace

GroupCompletion group_completion(const MonoidPresentation& p,
                                 const CompletionLimits& limits,
                                 std::size_t growth_bound) {
  p.validate();
  GroupCompletion g;
  // Each inverse sits right after its generator in the shortlex order;
  // placing all inverses last makes even Z^2 complete to an infinite system.
  const auto k = static_cast<int>(p.generators.size());
  for (int i = 0; i < k; ++i) {
    g.presentation.generators.push_back(p.generators[i]);
    g.presentation.generators.push_back(p.generators[i] + "^-1");
  }
  for (const auto& [l, r] : p.relations) {
    g.presentation.relations.emplace_back(to_completion_letters(l),
                                          to_completion_letters(r));
  }
  for (int i = 0; i < k; ++i) {
    g.presentation.relations.emplace_back(GenWord{2 * i, 2 * i + 1}, GenWord{});
    g.presentation.relations.emplace_back(GenWord{2 * i + 1, 2 * i}, GenWord{});
  }
  g.system = knuth_bendix(g.presentation, limits);
  if (!g.system.complete) return g;

  std::vector<GenWord> level{GenWord{}};
  for (std::size_t len = 0; len <= growth_bound; ++len) {
    g.growth.push_back(level.size());
    level = extend_level(g.system, level);
  }

  if (normal_forms_finite(g.system)) {
    std::vector<GenWord> all;
    for (std::vector<GenWord> lv{GenWord{}}; !lv.empty();
         lv = extend_level(g.system, lv)) {
      all.insert(all.end(), lv.begin(), lv.end());
    }
    g.order = all.size();
    g.kind = all.size() == 1 ? GroupKind::kTrivial : GroupKind::kFinite;
    for (const GenWord& x : all) {
      std::set<GenWord> orbit{GenWord{}};
      GenWord power = x;
      while (orbit.insert(power).second) {
        power = g.system.reduce(concat(power, x));
      }
      if (orbit.size() == all.size()) {
        g.cyclic = true;
        break;
      }
    }
    return g;
  }

  // Normal forms are exactly a^n, b^n iff the irreducible letters are
  // {a, b}, the irreducible 2-letter words are {aa, bb}, and no rule reduces
  // a pure power of a or b.
  g.kind = GroupKind::kInfinite;
  const std::vector<GenWord> ones = extend_level(g.system, {GenWord{}});
  if (ones.size() == 2) {
    const int a = ones[0][0];
    const int b = ones[1][0];
    std::vector<GenWord> twos = extend_level(g.system, ones);
    std::sort(twos.begin(), twos.end());
    const bool squares_only = twos == std::vector<GenWord>{{a, a}, {b, b}};
    bool powers_irreducible = true;
    for (const Rule& r : g.system.rules) {
      if (std::all_of(r.lhs.begin(), r.lhs.end(), [&](int x) { return x == a; }) ||
          std::all_of(r.lhs.begin(), r.lhs.end(), [&](int x) { return x == b; })) {
        powers_irreducible = false;
      }
    }
    if (squares_only && powers_irreducible) {
      g.kind = GroupKind::kInfiniteCyclic;
      g.cyclic = true;
    }
  }
  return g;
}

bool completion_map_is_homomorphism(const MonoidPresentation& p,
                                    const GroupCompletion& g) {
  if (!g.system.complete) return false;
  for (const auto& [l, r] : p.relations) {
    if (g.system.reduce(to_completion_letters(l)) !=
        g.system.reduce(to_completion_letters(r))) {
      return false;
    }
  }
  return true;
}

}  // namespace dihomo
