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

#ifndef DIHOMO_PV_HPP_
#define DIHOMO_PV_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dihomo {

enum class OpKind : std::uint8_t { kAcquire, kRelease };

struct Instruction {
  OpKind kind;
  std::string lock;

  bool operator==(const Instruction&) const = default;
};

struct Process {
  std::string name;
  std::vector<Instruction> body;

  bool operator==(const Process&) const = default;
};

/**
 * A lock program: counting semaphores plus straight-line processes.
 *
 * Process order is declaration order and fixes the coordinate order of the
 * geometric state space. Construct through parse_program() or
 * Program::validated(); both enforce the well-formedness rules (declared
 * locks, capacity >= 1, matched non-reentrant acquire/release pairs, nothing
 * held at process end).
 */
struct Program {
  std::map<std::string, int> semaphores;
  std::vector<Process> processes;

  std::size_t size() const { return processes.size(); }
  // Instruction count of each process: the extents of the state space.
  std::vector<int> extents() const;

  bool operator==(const Program&) const = default;

  // Throws ParseError (line 0) if the program breaks an invariant.
  static Program validated(Program p);
};

Program parse_program(std::string_view source);

// Canonical text form; parse_program(render_program(p)) == p.
std::string render_program(const Program& p);

struct TwoPhaseReport {
  std::vector<bool> per_process;
  bool overall = true;
};

// A process is two-phase iff every acquire precedes every release.
TwoPhaseReport is_two_phase(const Program& p);

// Random two-phase program over mutexes l0..l{nlocks-1}. A pure function of
// its arguments on every platform.
Program generate_random_2pl(std::uint64_t seed, int nprocs, int nlocks,
                            int max_locks_per_proc);

}  // namespace dihomo

#endif  // DIHOMO_PV_HPP_
