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

#ifndef DIHOMO_DIHOMOTOPY_HPP_
#define DIHOMO_DIHOMOTOPY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dihomo/geometry.hpp"

namespace dihomo {

// A schedule: one 0-based process index per executed instruction. The text
// form uses 1-based process numbers ("1122").
using Word = std::vector<std::uint8_t>;

std::string format_word(const Word& w);
Word parse_word(std::string_view text);

struct Caps {
  std::size_t max_paths = 200000;
  std::size_t max_class_size = 1000000;
};

enum class ScheduleStatus { kValid, kMultiplicityMismatch, kBlocked };

ScheduleStatus check_schedule(const StateSpace& s, const Word& w);
inline bool schedule_valid(const StateSpace& s, const Word& w) {
  return check_schedule(s, w) == ScheduleStatus::kValid;
}

// All valid complete schedules in lexicographic order. Throws CapExceeded
// (carrying the count reached) when there are more than max_paths.
std::vector<Word> enumerate_schedules(const StateSpace& s,
                                      std::size_t max_paths);

// Exchanges letters pos, pos+1 (1-based) when they differ and the unit
// square they span is free.
std::optional<Word> elementary_swap(const StateSpace& s, const Word& w,
                                    std::size_t pos);

// Process blocks are contiguous (the dipath stays in X_1).
bool is_serial(const Word& w);

struct DihomotopyClass {
  Word representative;  // lexicographically least member
  std::uint64_t members = 0;
  bool has_serial = false;
  bool truncated = false;  // member exploration hit max_class_size
};

struct ClassCensus {
  std::vector<DihomotopyClass> classes;  // sorted by representative
  std::uint64_t schedules = 0;
  bool complete = true;
};

/**
 * Swap-graph partition of the enumerated schedules.
 *
 * Breadth-first closure under elementary_swap, started from each unvisited
 * schedule in lexicographic order, so the first node of a class is its
 * representative. Classes whose closure exceeds max_class_size are flagged
 * truncated and the census is marked incomplete.
 */
ClassCensus dihomotopy_classes(const StateSpace& s, const Caps& caps = {});

/**
 * Same partition computed without enumerating schedules.
 *
 * Sweeps the grid in index order keeping, per vertex, the swap classes of
 * prefixes ending there: the classes at v are the classes at v - e_i
 * extended by step i, glued along every free square whose top corner is v.
 * Each prefix class tracks its least member, its size and whether it holds
 * a serial member. max_class_size bounds the number of prefix classes at a
 * single vertex.
 */
ClassCensus dihomotopy_classes_by_sweep(const StateSpace& s,
                                        const Caps& caps = {});

enum class Engine { kSweep, kEnumerate };

struct Verdict {
  enum class Status { kSerializable, kNotSerializable, kIndeterminate };
  Status status = Status::kIndeterminate;
  // Least representative of a class without a serial member.
  std::optional<Word> witness;
  std::string reason;  // set when indeterminate

  bool serializable() const { return status == Status::kSerializable; }
  bool indeterminate() const { return status == Status::kIndeterminate; }
};

Verdict verdict_from_census(const ClassCensus& census);

// Never throws CapExceeded; a hit cap yields an indeterminate verdict.
Verdict is_serializable(const StateSpace& s, const Caps& caps = {},
                        Engine engine = Engine::kSweep);

// pi_{1,0}(X/X_1) = 0, read through the serializability criterion.
// nullopt when indeterminate.
std::optional<bool> pi10_quotient_trivial(const StateSpace& s,
                                          const Caps& caps = {});

}  // namespace dihomo

#endif  // DIHOMO_DIHOMOTOPY_HPP_
