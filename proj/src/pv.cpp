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

#include "dihomo/pv.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "dihomo/error.hpp"
#include "dihomo/random.hpp"

namespace dihomo {

namespace {

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Cursor over a single line; columns are 1-based.
class LineScanner {
 public:
  LineScanner(std::string_view text, std::size_t line)
      : text_(text), line_(line) {}

  void skip_blanks(bool semicolons = false) {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r' ||
            (semicolons && text_[pos_] == ';'))) {
      ++pos_;
    }
    if (pos_ < text_.size() && text_[pos_] == '#') pos_ = text_.size();
  }

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  std::size_t column() const { return pos_ + 1; }
  std::size_t line() const { return line_; }

  [[noreturn]] void fail(const std::string& kind, const std::string& msg,
                         std::size_t col = 0) const {
    throw ParseError(kind, line_, col == 0 ? column() : col, msg);
  }

  std::string name() {
    if (!is_name_start(peek())) fail("syntax", "expected a name");
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  long long integer() {
    std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    std::string digits(text_.substr(start, pos_ - start));
    if (digits.empty() || digits == "-" || digits == "+") {
      pos_ = start;
      fail("syntax", "expected an integer");
    }
    if (digits.size() > 12) fail("syntax", "integer out of range", start + 1);
    return std::stoll(digits);
  }

  void expect(char c) {
    if (peek() != c) fail("syntax", std::string("expected '") + c + "'");
    ++pos_;
  }

  // Keyword must be followed by whitespace or end of line.
  bool keyword(std::string_view kw) {
    if (text_.substr(pos_, kw.size()) != kw) return false;
    std::size_t after = pos_ + kw.size();
    if (after < text_.size() && is_name_char(text_[after])) return false;
    pos_ = after;
    return true;
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

struct Located {
  std::size_t line = 0;
  std::size_t column = 0;
};

// Checks the per-process lock discipline. loc(i, k) gives the source
// location of instruction k of process i (0,0 when not parsed from text).
template <typename LocFn>
void check_program(const Program& p, LocFn loc) {
  for (const auto& [name, cap] : p.semaphores) {
    if (cap < 1) {
      throw ParseError("bad-capacity", 0, 0,
                       "semaphore '" + name + "' has capacity < 1");
    }
  }
  for (std::size_t i = 0; i < p.processes.size(); ++i) {
    const Process& proc = p.processes[i];
    std::set<std::string> held;
    for (std::size_t k = 0; k < proc.body.size(); ++k) {
      const Instruction& ins = proc.body[k];
      Located at = loc(i, k);
      if (!p.semaphores.contains(ins.lock)) {
        throw ParseError("undeclared-lock", at.line, at.column,
                         "lock '" + ins.lock + "' is not declared");
      }
      if (ins.kind == OpKind::kAcquire) {
        if (!held.insert(ins.lock).second) {
          throw ParseError("reentrant-acquire", at.line, at.column,
                           "process '" + proc.name + "' already holds '" +
                               ins.lock + "'");
        }
      } else if (held.erase(ins.lock) == 0) {
        throw ParseError("unmatched-release", at.line, at.column,
                         "process '" + proc.name + "' releases '" + ins.lock +
                             "' without holding it");
      }
    }
    if (!held.empty()) {
      Located at = proc.body.empty() ? Located{} : loc(i, proc.body.size() - 1);
      throw ParseError("unreleased-lock", at.line, at.column,
                       "process '" + proc.name + "' ends holding '" +
                           *held.begin() + "'");
    }
  }
}

}  // namespace

std::vector<int> Program::extents() const {
  std::vector<int> out;
  out.reserve(processes.size());
  for (const Process& proc : processes) {
    out.push_back(static_cast<int>(proc.body.size()));
  }
  return out;
}

Program Program::validated(Program p) {
  check_program(p, [](std::size_t, std::size_t) { return Located{}; });
  return p;
}

Program parse_program(std::string_view source) {
  Program prog;
  std::vector<std::vector<Located>> where;
  std::set<std::string> proc_names;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= source.size()) {
    std::size_t end = source.find('\n', start);
    if (end == std::string_view::npos) end = source.size();
    std::string_view line = source.substr(start, end - start);
    ++line_no;
    start = end + 1;

    LineScanner sc(line, line_no);
    sc.skip_blanks();
    if (sc.done()) {
      if (end == source.size()) break;
      continue;
    }

    if (sc.keyword("sem")) {
      sc.skip_blanks();
      std::size_t name_col = sc.column();
      std::string name = sc.name();
      sc.skip_blanks();
      std::size_t cap_col = sc.column();
      long long cap = sc.integer();
      sc.skip_blanks();
      if (!sc.done()) sc.fail("syntax", "trailing input after semaphore");
      if (prog.semaphores.contains(name)) {
        sc.fail("duplicate-lock", "semaphore '" + name + "' declared twice",
                name_col);
      }
      if (cap < 1) {
        sc.fail("bad-capacity", "capacity must be at least 1", cap_col);
      }
      prog.semaphores.emplace(name, static_cast<int>(cap));
    } else if (sc.keyword("proc")) {
      sc.skip_blanks();
      std::size_t name_col = sc.column();
      Process proc;
      proc.name = sc.name();
      if (!proc_names.insert(proc.name).second) {
        sc.fail("duplicate-process",
                "process '" + proc.name + "' declared twice", name_col);
      }
      sc.skip_blanks();
      sc.expect(':');
      std::vector<Located> locs;
      for (sc.skip_blanks(true); !sc.done(); sc.skip_blanks(true)) {
        Located at{line_no, sc.column()};
        OpKind kind;
        if (sc.peek() == 'P') {
          kind = OpKind::kAcquire;
        } else if (sc.peek() == 'V') {
          kind = OpKind::kRelease;
        } else {
          sc.fail("syntax", "expected P(...) or V(...)");
        }
        sc.expect(sc.peek());
        sc.expect('(');
        sc.skip_blanks();
        std::string lock = sc.name();
        sc.skip_blanks();
        sc.expect(')');
        proc.body.push_back({kind, std::move(lock)});
        locs.push_back(at);
      }
      prog.processes.push_back(std::move(proc));
      where.push_back(std::move(locs));
    } else {
      sc.fail("syntax", "expected 'sem' or 'proc'");
    }
    if (end == source.size()) break;
  }

  check_program(prog, [&](std::size_t i, std::size_t k) { return where[i][k]; });
  return prog;
}

std::string render_program(const Program& p) {
  std::ostringstream out;
  for (const auto& [name, cap] : p.semaphores) {
    out << "sem " << name << ' ' << cap << '\n';
  }
  for (const Process& proc : p.processes) {
    out << "proc " << proc.name << ':';
    for (const Instruction& ins : proc.body) {
      out << ' ' << (ins.kind == OpKind::kAcquire ? 'P' : 'V') << '('
          << ins.lock << ')';
    }
    out << '\n';
  }
  return out.str();
}

TwoPhaseReport is_two_phase(const Program& p) {
  TwoPhaseReport r;
  for (const Process& proc : p.processes) {
    bool released = false;
    bool ok = true;
    for (const Instruction& ins : proc.body) {
      if (ins.kind == OpKind::kRelease) {
        released = true;
      } else if (released) {
        ok = false;
        break;
      }
    }
    r.per_process.push_back(ok);
    r.overall = r.overall && ok;
  }
  return r;
}

Program generate_random_2pl(std::uint64_t seed, int nprocs, int nlocks,
                            int max_locks_per_proc) {
  if (nprocs < 1 || nlocks < 1 || max_locks_per_proc < 0) {
    throw InputError(
        "generate_random_2pl: need nprocs >= 1, nlocks >= 1, max >= 0");
  }
  std::mt19937_64 rng(seed);
  Program prog;
  std::vector<std::string> locks;
  for (int l = 0; l < nlocks; ++l) {
    locks.push_back("l" + std::to_string(l));
    prog.semaphores.emplace(locks.back(), 1);
  }
  const int cap = std::min(max_locks_per_proc, nlocks);
  for (int i = 0; i < nprocs; ++i) {
    Process proc;
    proc.name = "T" + std::to_string(i + 1);
    const auto count = static_cast<std::size_t>(
        draw_below(rng, static_cast<std::uint64_t>(cap) + 1));
    std::vector<std::string> pool = locks;
    shuffle_in_place(pool, rng);
    pool.resize(count);
    std::vector<std::string> release_order = pool;
    shuffle_in_place(release_order, rng);
    for (const std::string& l : pool) {
      proc.body.push_back({OpKind::kAcquire, l});
    }
    for (const std::string& l : release_order) {
      proc.body.push_back({OpKind::kRelease, l});
    }
    prog.processes.push_back(std::move(proc));
  }
  return prog;
}

}  // namespace dihomo
