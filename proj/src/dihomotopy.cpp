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

#include "dihomo/dihomotopy.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>

#include "dihomo/error.hpp"
#include "dihomo/exec.hpp"

namespace dihomo {

namespace {

std::string word_key(const Word& w) { return std::string(w.begin(), w.end()); }

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw CapExceeded("schedule count overflows 64 bits", 0);
  }
  return r;
}

// Union-find with path halving; unions keep the smaller index as root.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::string format_word(const Word& w) {
  const bool digits =
      std::all_of(w.begin(), w.end(), [](std::uint8_t c) { return c < 9; });
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (digits) {
      out.push_back(static_cast<char>('1' + w[k]));
    } else {
      if (k > 0) out.push_back('.');
      out += std::to_string(w[k] + 1);
    }
  }
  return out;
}

Word parse_word(std::string_view text) {
  Word w;
  const bool dotted = text.find('.') != std::string_view::npos;
  if (!dotted) {
    for (char c : text) {
      if (c < '1' || c > '9') {
        throw InputError("schedule letters must be process numbers 1..9");
      }
      w.push_back(static_cast<std::uint8_t>(c - '1'));
    }
    return w;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('.', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string part(text.substr(start, end - start));
    if (part.empty() ||
        part.find_first_not_of("0123456789") != std::string::npos) {
      throw InputError("bad schedule letter '" + part + "'");
    }
    const int p = std::stoi(part);
    if (p < 1 || p > 255) throw InputError("process number out of range");
    w.push_back(static_cast<std::uint8_t>(p - 1));
    start = end + 1;
  }
  return w;
}

ScheduleStatus check_schedule(const StateSpace& s, const Word& w) {
  std::vector<int> counts(s.dims(), 0);
  for (std::uint8_t c : w) {
    if (c >= s.dims()) return ScheduleStatus::kMultiplicityMismatch;
    ++counts[c];
  }
  if (counts != s.extents()) return ScheduleStatus::kMultiplicityMismatch;
  Vertex v = s.bottom();
  for (std::uint8_t c : w) {
    if (!edge_allowed(s, v, c)) return ScheduleStatus::kBlocked;
    ++v[c];
  }
  return ScheduleStatus::kValid;
}

std::vector<Word> enumerate_schedules(const StateSpace& s,
                                      std::size_t max_paths) {
  if (max_paths == 0) throw InputError("max_paths must be positive");
  const auto edges = allowed_edge_bits(s);
  const VertexSet safe = safe_set(s);
  std::vector<Word> out;
  if (!safe.contains_index(0)) return out;

  const std::size_t top = s.vertex_count() - 1;
  Word prefix;
  // Iterative DFS: stack of (vertex index, next axis to try).
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto& [idx, axis] = stack.back();
    if (idx == top) {
      if (out.size() == max_paths) {
        throw CapExceeded("more than " + std::to_string(max_paths) +
                              " complete schedules",
                          out.size());
      }
      out.push_back(prefix);
      stack.pop_back();
      if (!prefix.empty()) prefix.pop_back();
      continue;
    }
    bool pushed = false;
    while (axis < s.dims()) {
      const std::size_t j = axis++;
      if (!(edges[idx] >> j & 1u)) continue;
      const std::size_t next = idx + s.stride(j);
      if (!safe.contains_index(next)) continue;
      prefix.push_back(static_cast<std::uint8_t>(j));
      stack.emplace_back(next, 0);
      pushed = true;
      break;
    }
    if (!pushed) {
      stack.pop_back();
      if (!prefix.empty()) prefix.pop_back();
    }
  }
  return out;
}

std::optional<Word> elementary_swap(const StateSpace& s, const Word& w,
                                    std::size_t pos) {
  if (pos < 1 || pos >= w.size()) {
    throw InputError("swap position must satisfy 1 <= pos < length");
  }
  const std::uint8_t a = w[pos - 1];
  const std::uint8_t b = w[pos];
  if (a == b) return std::nullopt;
  if (a >= s.dims() || b >= s.dims()) {
    throw InputError("schedule letter out of range");
  }
  Vertex v = s.bottom();
  for (std::size_t k = 0; k + 1 < pos; ++k) ++v[w[k]];
  if (!s.in_range(v) || v[a] >= s.extents()[a] || v[b] >= s.extents()[b]) {
    return std::nullopt;
  }
  if (!square_free(s, v, a, b)) return std::nullopt;
  Word out = w;
  std::swap(out[pos - 1], out[pos]);
  return out;
}

bool is_serial(const Word& w) {
  std::vector<bool> finished;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] >= finished.size()) finished.resize(w[k] + 1u, false);
    if (finished[w[k]]) return false;
    if (k + 1 < w.size() && w[k + 1] != w[k]) finished[w[k]] = true;
  }
  return true;
}

ClassCensus dihomotopy_classes(const StateSpace& s, const Caps& caps) {
  const std::vector<Word> all = enumerate_schedules(s, caps.max_paths);
  ClassCensus census;
  census.schedules = all.size();

  std::unordered_map<std::string, std::size_t> index;
  index.reserve(all.size() * 2);
  for (std::size_t k = 0; k < all.size(); ++k) index.emplace(word_key(all[k]), k);

  std::vector<bool> seen(all.size(), false);
  for (std::size_t start = 0; start < all.size(); ++start) {
    if (seen[start]) continue;
    DihomotopyClass cls;
    cls.representative = all[start];
    std::deque<std::size_t> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
      const std::size_t cur = queue.front();
      queue.pop_front();
      ++cls.members;
      cls.has_serial = cls.has_serial || is_serial(all[cur]);
      for (std::size_t pos = 1; pos < all[cur].size(); ++pos) {
        auto next = elementary_swap(s, all[cur], pos);
        if (!next) continue;
        const std::size_t nk = index.at(word_key(*next));
        if (!seen[nk]) {
          seen[nk] = true;
          queue.push_back(nk);
        }
      }
      if (cls.members >= caps.max_class_size && !queue.empty()) {
        cls.truncated = true;
        census.complete = false;
        break;
      }
    }
    census.classes.push_back(std::move(cls));
  }
  return census;
}

ClassCensus dihomotopy_classes_by_sweep(const StateSpace& s,
                                        const Caps& caps) {
  struct Prefix {
    Word least;
    std::uint64_t count = 0;
    bool serial = false;
  };
  struct Node {
    bool reached = false;
    std::vector<Prefix> classes;
    // via[axis][c]: class here of "class c at (v - e_axis), then axis".
    std::vector<std::vector<std::size_t>> via;
  };

  const std::size_t n = s.dims();
  const auto edges = allowed_edge_bits(s);
  std::vector<Node> grid(s.vertex_count());
  grid[0].reached = true;
  grid[0].classes.push_back({Word{}, 1, true});

  // Step from u along axis stays inside X_1 iff every other coordinate of u
  // is extreme.
  auto step_in_x1 = [&](const Vertex& u, std::size_t axis) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j != axis && u[j] != 0 && u[j] != s.extents()[j]) return false;
    }
    return true;
  };

  for (std::size_t idx = 1; idx < s.vertex_count(); ++idx) {
    const Vertex v = s.vertex_at(idx);
    Node& node = grid[idx];
    node.via.assign(n, {});

    // Candidate (axis, predecessor class) pairs, numbered consecutively.
    std::vector<std::size_t> base(n, 0);
    std::size_t total = 0;
    for (std::size_t j = 0; j < n; ++j) {
      base[j] = total;
      if (v[j] == 0) continue;
      const std::size_t u = idx - s.stride(j);
      if (!grid[u].reached || !(edges[u] >> j & 1u)) continue;
      total += grid[u].classes.size();
    }
    if (total == 0) continue;
    node.reached = true;

    DisjointSets sets(total);
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] == 0) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (v[j] == 0) continue;
        const std::size_t w = idx - s.stride(i) - s.stride(j);
        if (!grid[w].reached) continue;
        Vertex wv = v;
        --wv[i];
        --wv[j];
        if (!square_free(s, wv, i, j)) continue;
        const Node& via_i = grid[w + s.stride(i)];
        const Node& via_j = grid[w + s.stride(j)];
        for (std::size_t c = 0; c < grid[w].classes.size(); ++c) {
          // (c then i) then j  ~  (c then j) then i
          sets.unite(base[j] + via_i.via[i][c], base[i] + via_j.via[j][c]);
        }
      }
    }

    // Collapse roots into classes, then order classes by least member.
    std::vector<std::size_t> root_class(total, SIZE_MAX);
    std::vector<Prefix> merged;
    std::vector<std::size_t> cand_class(total);
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j] == 0) continue;
      const std::size_t u = idx - s.stride(j);
      if (!grid[u].reached || !(edges[u] >> j & 1u)) continue;
      const Vertex uv = s.vertex_at(u);
      const bool x1 = step_in_x1(uv, j);
      const auto& preds = grid[u].classes;
      for (std::size_t c = 0; c < preds.size(); ++c) {
        const std::size_t cand = base[j] + c;
        const std::size_t root = sets.find(cand);
        if (root_class[root] == SIZE_MAX) {
          root_class[root] = merged.size();
          merged.push_back({});
        }
        Prefix& into = merged[root_class[root]];
        Word word = preds[c].least;
        word.push_back(static_cast<std::uint8_t>(j));
        if (into.count == 0 || word < into.least) into.least = std::move(word);
        into.count = checked_add(into.count, preds[c].count);
        into.serial = into.serial || (preds[c].serial && x1);
        cand_class[cand] = root_class[root];
      }
    }
    if (merged.size() > caps.max_class_size) {
      throw CapExceeded("more than " + std::to_string(caps.max_class_size) +
                            " prefix classes at one vertex",
                        merged.size());
    }
    std::vector<std::size_t> order(merged.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return merged[a].least < merged[b].least;
    });
    std::vector<std::size_t> rank(merged.size());
    for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
    for (std::size_t r = 0; r < order.size(); ++r) {
      node.classes.push_back(std::move(merged[order[r]]));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j] == 0) continue;
      const std::size_t u = idx - s.stride(j);
      if (!grid[u].reached || !(edges[u] >> j & 1u)) continue;
      auto& map = node.via[j];
      map.resize(grid[u].classes.size());
      for (std::size_t c = 0; c < map.size(); ++c) {
        map[c] = rank[cand_class[base[j] + c]];
      }
    }
  }

  ClassCensus census;
  const Node& top = grid[s.vertex_count() - 1];
  if (!top.reached) return census;
  for (const Prefix& p : top.classes) {
    census.classes.push_back({p.least, p.count, p.serial, false});
    census.schedules = checked_add(census.schedules, p.count);
  }
  return census;
}

Verdict verdict_from_census(const ClassCensus& census) {
  Verdict v;
  if (!census.complete) {
    v.status = Verdict::Status::kIndeterminate;
    v.reason = "class exploration truncated by max_class_size";
    return v;
  }
  v.status = Verdict::Status::kSerializable;
  for (const DihomotopyClass& c : census.classes) {
    if (!c.has_serial) {
      v.status = Verdict::Status::kNotSerializable;
      v.witness = c.representative;
      break;
    }
  }
  return v;
}

Verdict is_serializable(const StateSpace& s, const Caps& caps, Engine engine) {
  try {
    return verdict_from_census(engine == Engine::kSweep
                                   ? dihomotopy_classes_by_sweep(s, caps)
                                   : dihomotopy_classes(s, caps));
  } catch (const CapExceeded& e) {
    Verdict v;
    v.status = Verdict::Status::kIndeterminate;
    v.reason = e.what();
    return v;
  }
}

std::optional<bool> pi10_quotient_trivial(const StateSpace& s,
                                          const Caps& caps) {
  const Verdict v = is_serializable(s, caps);
  if (v.indeterminate()) return std::nullopt;
  return v.serializable();
}

}  // namespace dihomo
