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

#ifndef DIHOMO_REPORT_HPP_
#define DIHOMO_REPORT_HPP_

#include <string>

#include "json.hpp"

#include "dihomo/dihomotopy.hpp"
#include "dihomo/exec.hpp"
#include "dihomo/homology.hpp"
#include "dihomo/monoid.hpp"
#include "dihomo/moore.hpp"
#include "dihomo/pv.hpp"

namespace dihomo {

inline constexpr const char* kReportSchema = "dihomo-report/1";

// JSON fragments. Objects are key-sorted (nlohmann's default std::map), and
// every array has a fixed order: vertices lexicographic, classes by
// representative, homology by degree. No floating point anywhere.
namespace report {

nlohmann::json vertex_list(const VertexSet& set);
nlohmann::json state_space(const StateSpace& s);
nlohmann::json program(const Program& p);
nlohmann::json caps(const Caps& c);

nlohmann::json exec_analysis(const StateSpace& s);
nlohmann::json class_census(const ClassCensus& census);
nlohmann::json verdict(const Verdict& v);
nlohmann::json two_phase(const TwoPhaseReport& r);
nlohmann::json homology(const StateSpace& s);
nlohmann::json monoid_check(const MonoidCheck& c);
nlohmann::json group_completion(const GroupCompletion& g);
nlohmann::json moore_laws(const MooreLawReport& r);

}  // namespace report

// Canonical serialization: sorted keys, two-space indent, trailing newline.
std::string emit_json(const nlohmann::json& report);

}  // namespace dihomo

#endif  // DIHOMO_REPORT_HPP_
