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

#include "dihomo/report.hpp"

namespace dihomo {

using nlohmann::json;

namespace report {

json vertex_list(const VertexSet& set) {
  json out = json::array();
  for (const Vertex& v : set.sorted_vertices()) out.push_back(v);
  return out;
}

json state_space(const StateSpace& s) {
  json boxes = json::array();
  for (const OpenBox& b : s.boxes()) {
    json axes = json::array();
    for (std::size_t j = 0; j < s.dims(); ++j) {
      if (b.constrains(j, s.extents())) {
        axes.push_back({b.axes[j].lower, b.axes[j].upper});
      } else {
        axes.push_back("*");
      }
    }
    boxes.push_back(std::move(axes));
  }
  return {{"extents", s.extents()}, {"boxes", std::move(boxes)}};
}

json program(const Program& p) {
  json procs = json::array();
  for (const Process& proc : p.processes) {
    json body = json::array();
    for (const Instruction& ins : proc.body) {
      body.push_back((ins.kind == OpKind::kAcquire ? "P(" : "V(") + ins.lock +
                     ")");
    }
    procs.push_back({{"name", proc.name}, {"body", std::move(body)}});
  }
  json sems = json::object();
  for (const auto& [name, cap] : p.semaphores) sems[name] = cap;
  return {{"semaphores", std::move(sems)},
          {"processes", std::move(procs)},
          {"text", render_program(p)}};
}

json caps(const Caps& c) {
  return {{"max_paths", c.max_paths}, {"max_class_size", c.max_class_size}};
}

json exec_analysis(const StateSpace& s) {
  const VertexSet reach = reachable_set(s);
  const VertexSet safe = safe_set(s);
  VertexSet unreachable(s);
  for (std::size_t idx = 0; idx < s.vertex_count(); ++idx) {
    if (!reach.contains_index(idx)) unreachable.insert_index(idx);
  }
  return {{"deadlocks", vertex_list(deadlocks(s))},
          {"unreachable", vertex_list(unreachable)},
          {"unsafe", vertex_list(unsafe_region(s))},
          {"reachable_count", reach.size()},
          {"safe_count", safe.size()},
          {"vertex_count", s.vertex_count()},
          {"complete_schedule_exists", safe.contains_index(0)}};
}

json class_census(const ClassCensus& census) {
  json classes = json::array();
  for (const DihomotopyClass& c : census.classes) {
    classes.push_back({{"representative", format_word(c.representative)},
                       {"members", c.members},
                       {"has_serial", c.has_serial},
                       {"truncated", c.truncated}});
  }
  return {{"class_count", census.classes.size()},
          {"classes", std::move(classes)},
          {"schedules", census.schedules},
          {"complete", census.complete}};
}

json verdict(const Verdict& v) {
  json out = json::object();
  switch (v.status) {
    case Verdict::Status::kSerializable:
      out["status"] = "serializable";
      break;
    case Verdict::Status::kNotSerializable:
      out["status"] = "not-serializable";
      break;
    case Verdict::Status::kIndeterminate:
      out["status"] = "indeterminate";
      out["reason"] = v.reason;
      break;
  }
  if (!v.indeterminate()) {
    out["serializable"] = v.serializable();
    out["pi10_quotient_trivial"] = v.serializable();
  }
  if (v.witness) out["witness"] = format_word(*v.witness);
  return out;
}

json two_phase(const TwoPhaseReport& r) {
  json per = json::array();
  for (bool b : r.per_process) per.push_back(b);
  return {{"per_process", std::move(per)}, {"overall", r.overall}};
}

namespace {

json homology_group(std::size_t d, const HomologyGroup& h) {
  return {{"degree", d}, {"betti", h.betti}, {"torsion", h.torsion}};
}

}  // namespace

json homology(const StateSpace& s) {
  const CubicalComplex x = build_complex(s);
  const CubicalComplex x1 = sub_complex_x1(x);
  json cells = json::array();
  json absolute = json::array();
  json relative = json::array();
  for (std::size_t d = 0; d <= s.dims(); ++d) {
    cells.push_back(x.count(d));
    absolute.push_back(homology_group(d, dihomo::homology(x, d)));
    relative.push_back(homology_group(d, relative_homology(x, x1, d)));
  }
  json out = {{"cells", std::move(cells)},
              {"absolute", std::move(absolute)},
              {"relative_x1", std::move(relative)},
              {"forbidden_components", forbidden_components(s)}};
  if (s.dims() == 2) {
    const AlexanderCheck a = alexander_check(s);
    out["alexander"] = {{"holds", a.holds},
                        {"h1_rank", a.h1_rank},
                        {"h1_torsion", a.h1_torsion},
                        {"expected_rank", a.expected_rank},
                        {"components", a.components}};
  }
  return out;
}

json monoid_check(const MonoidCheck& c) {
  json out = {{"rules", c.rules}, {"normal_forms", c.normal_form_count}};
  if (c.isomorphic) {
    out["status"] = "complete";
    out["isomorphic"] = *c.isomorphic;
  } else {
    out["status"] = "indeterminate";
  }
  return out;
}

json group_completion(const GroupCompletion& g) {
  json out = {{"kind", std::string(to_string(g.kind))},
              {"complete", g.system.complete},
              {"rules", g.system.rules.size()},
              {"cyclic", g.cyclic},
              {"growth", g.growth}};
  if (g.order) out["order"] = *g.order;
  json rules = json::array();
  for (const Rule& r : g.system.rules) {
    rules.push_back({render_word(g.presentation, r.lhs),
                     render_word(g.presentation, r.rhs)});
  }
  out["system"] = std::move(rules);
  return out;
}

json moore_laws(const MooreLawReport& r) {
  return {{"trials", r.trials},
          {"associativity_failures", r.associativity_failures},
          {"left_unit_failures", r.left_unit_failures},
          {"right_unit_failures", r.right_unit_failures},
          {"additivity_failures", r.additivity_failures},
          {"dipath_closure_failures", r.dipath_closure_failures},
          {"ok", r.ok()}};
}

}  // namespace report

std::string emit_json(const json& report) { return report.dump(2) + "\n"; }

}  // namespace dihomo
