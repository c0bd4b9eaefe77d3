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

#include "dihomo/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "dihomo/error.hpp"
#include "dihomo/report.hpp"

namespace dihomo::cli {

using nlohmann::json;

namespace {

constexpr std::size_t kDefaultMaxPaths = 200000;
constexpr std::size_t kDefaultMaxClassSize = 1000000;

struct Options {
  std::string format;  // "", "pv", "boxes"
  bool json = false;
  std::uint64_t seed = 0;
  std::optional<std::size_t> max_paths;
  std::size_t max_class_size = kDefaultMaxClassSize;
  std::string engine = "sweep";
  std::string file;
  std::size_t trials = 1000;
  int procs = 2;
  int locks = 2;
  int max_locks = 2;
};

struct Input {
  std::optional<Program> program;
  std::optional<StateSpace> space;
  json echo;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

Input load_input(const Options& opt) {
  const std::string text = read_file(opt.file);
  std::string format = opt.format;
  if (format.empty()) format = ends_with(opt.file, ".boxes") ? "boxes" : "pv";
  Input in;
  if (format == "pv") {
    in.program = parse_program(text);
    in.space.emplace(build_state_space(*in.program));
    in.echo = {{"format", "pv"}, {"program", report::program(*in.program)}};
  } else {
    in.space.emplace(load_boxes(text));
    in.echo = {{"format", "boxes"}, {"boxes", render_boxes(*in.space)}};
  }
  in.echo["state_space"] = report::state_space(*in.space);
  return in;
}

Caps resolve_caps(const Options& opt, const EnvLookup& env) {
  Caps caps;
  caps.max_paths = kDefaultMaxPaths;
  if (auto v = env("DIHOMO_MAX_PATHS")) {
    try {
      std::size_t used = 0;
      const unsigned long long n = std::stoull(*v, &used);
      if (used != v->size() || n == 0) throw std::invalid_argument("bad");
      caps.max_paths = static_cast<std::size_t>(n);
    } catch (const std::exception&) {
      throw InputError("DIHOMO_MAX_PATHS must be a positive integer");
    }
  }
  if (opt.max_paths) caps.max_paths = *opt.max_paths;
  caps.max_class_size = opt.max_class_size;
  if (caps.max_paths == 0 || caps.max_class_size == 0) {
    throw InputError("caps must be positive");
  }
  return caps;
}

std::string vertices_text(const json& list) {
  if (list.empty()) return "none";
  std::string out;
  for (const json& v : list) {
    if (!out.empty()) out += ' ';
    out += '(';
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (j > 0) out += ',';
      out += std::to_string(v[j].get<int>());
    }
    out += ')';
  }
  return out;
}

std::string verdict_text(const Verdict& v) {
  if (v.indeterminate()) return "indeterminate (" + v.reason + ")";
  std::string out = v.serializable() ? "serializable" : "not serializable";
  if (v.witness) out += ", witness class " + format_word(*v.witness);
  return out;
}

int verdict_code(const Verdict& v) {
  if (v.indeterminate()) return kIndeterminate;
  return v.serializable() ? kOk : kViolated;
}

Engine parse_engine(const std::string& name) {
  return name == "enumerate" ? Engine::kEnumerate : Engine::kSweep;
}

json envelope(const std::string& command) {
  return {{"schema", kReportSchema}, {"command", command}};
}

void finish(Result& r, const Options& opt, json doc, const std::string& text) {
  if (opt.json) {
    r.out = emit_json(doc);
  } else {
    r.out = text;
  }
}

Result cmd_analyze(const Options& opt, const Caps& caps) {
  const Input in = load_input(opt);
  json doc = envelope("analyze");
  doc["input"] = in.echo;
  doc["caps"] = report::caps(caps);
  doc["result"] = report::exec_analysis(*in.space);
  doc["indeterminate"] = false;
  const json& res = doc["result"];
  std::ostringstream text;
  text << "deadlocks: " << vertices_text(res["deadlocks"]) << '\n'
       << "unreachable: " << vertices_text(res["unreachable"]) << '\n'
       << "unsafe: " << vertices_text(res["unsafe"]) << '\n'
       << "complete schedule exists: "
       << (res["complete_schedule_exists"].get<bool>() ? "yes" : "no") << '\n';
  Result r;
  finish(r, opt, std::move(doc), text.str());
  return r;
}

Result cmd_classes(const Options& opt, const Caps& caps) {
  const Input in = load_input(opt);
  json doc = envelope("classes");
  doc["input"] = in.echo;
  doc["caps"] = report::caps(caps);
  doc["engine"] = opt.engine;
  Result r;
  std::ostringstream text;
  try {
    const ClassCensus census = parse_engine(opt.engine) == Engine::kSweep
                                   ? dihomotopy_classes_by_sweep(*in.space, caps)
                                   : dihomotopy_classes(*in.space, caps);
    doc["result"] = report::class_census(census);
    doc["indeterminate"] = !census.complete;
    text << census.classes.size() << " dihomotopy class(es), "
         << census.schedules << " schedule(s)\n";
    for (const DihomotopyClass& c : census.classes) {
      text << "  " << format_word(c.representative) << "  members=" << c.members
           << (c.has_serial ? "  serial" : "  non-serial")
           << (c.truncated ? "  truncated" : "") << '\n';
    }
    if (!census.complete) r.exit_code = kIndeterminate;
  } catch (const CapExceeded& e) {
    doc["result"] = {{"partial_count", e.partial_count()}, {"reason", e.what()}};
    doc["indeterminate"] = true;
    text << "indeterminate: " << e.what() << '\n';
    r.exit_code = kIndeterminate;
  }
  finish(r, opt, std::move(doc), text.str());
  return r;
}

Result cmd_serializable(const Options& opt, const Caps& caps) {
  const Input in = load_input(opt);
  const Verdict v = is_serializable(*in.space, caps, parse_engine(opt.engine));
  json doc = envelope("serializable");
  doc["input"] = in.echo;
  doc["caps"] = report::caps(caps);
  doc["engine"] = opt.engine;
  doc["result"] = report::verdict(v);
  doc["indeterminate"] = v.indeterminate();
  Result r;
  r.exit_code = verdict_code(v);
  finish(r, opt, std::move(doc), verdict_text(v) + "\n");
  return r;
}

Result cmd_check_2pl(const Options& opt, const Caps& caps) {
  const Input in = load_input(opt);
  if (!in.program) throw InputError("check-2pl needs a PV program");
  const TwoPhaseReport tp = is_two_phase(*in.program);
  const Verdict v = is_serializable(*in.space, caps, parse_engine(opt.engine));
  json doc = envelope("check-2pl");
  doc["input"] = in.echo;
  doc["caps"] = report::caps(caps);
  doc["result"] = {{"two_phase", report::two_phase(tp)},
                   {"verdict", report::verdict(v)}};
  doc["indeterminate"] = v.indeterminate();
  std::ostringstream text;
  for (std::size_t i = 0; i < tp.per_process.size(); ++i) {
    text << in.program->processes[i].name << ": "
         << (tp.per_process[i] ? "two-phase" : "not two-phase") << '\n';
  }
  text << "two-phase locking: " << (tp.overall ? "yes" : "no") << '\n'
       << "verdict: " << verdict_text(v) << '\n';
  Result r;
  if (!tp.overall) {
    r.exit_code = kViolated;
  } else if (v.indeterminate()) {
    r.exit_code = kIndeterminate;
  } else if (!v.serializable()) {
    r.exit_code = kViolated;
  }
  finish(r, opt, std::move(doc), text.str());
  return r;
}

Result cmd_homology(const Options& opt, const Caps& caps) {
  const Input in = load_input(opt);
  json doc = envelope("homology");
  doc["input"] = in.echo;
  doc["caps"] = report::caps(caps);
  doc["result"] = report::homology(*in.space);
  doc["indeterminate"] = false;
  const json& res = doc["result"];
  std::ostringstream text;
  auto group_text = [](const json& g) {
    std::string s = "Z^" + std::to_string(g["betti"].get<std::size_t>());
    for (const json& t : g["torsion"]) s += " + Z/" + std::to_string(t.get<long>());
    return s;
  };
  for (const json& g : res["absolute"]) {
    text << "H" << g["degree"].get<std::size_t>() << "(X) = " << group_text(g)
         << '\n';
  }
  for (const json& g : res["relative_x1"]) {
    text << "H" << g["degree"].get<std::size_t>() << "(X,X1) = "
         << group_text(g) << '\n';
  }
  text << "forbidden components: " << res["forbidden_components"].get<std::size_t>()
       << '\n';
  Result r;
  if (res.contains("alexander")) {
    const bool holds = res["alexander"]["holds"].get<bool>();
    text << "alexander duality check: " << (holds ? "holds" : "FAILS") << '\n';
    if (!holds) r.exit_code = kViolated;
  }
  finish(r, opt, std::move(doc), text.str());
  return r;
}

Result cmd_check_bm(const Options& opt) {
  std::vector<std::pair<std::string, MonoidTable>> tables;
  if (opt.file.empty()) {
    tables = monoid_catalog();
  } else {
    tables.emplace_back(opt.file, parse_monoid_table(read_file(opt.file)));
  }
  json doc = envelope("monoid check-bm");
  json results = json::array();
  std::ostringstream text;
  Result r;
  bool any_false = false;
  bool any_indeterminate = false;
  for (const auto& [name, table] : tables) {
    const MonoidCheck c = fundamental_monoid_check(table);
    json entry = report::monoid_check(c);
    entry["name"] = name;
    entry["order"] = table.order();
    results.push_back(std::move(entry));
    text << name << ": ";
    if (!c.isomorphic) {
      any_indeterminate = true;
      text << "indeterminate (completion did not finish)\n";
    } else {
      any_false = any_false || !*c.isomorphic;
      text << (*c.isomorphic ? "pi_1,0 B*M = M holds" : "MISMATCH") << " ("
           << c.normal_form_count << " normal forms, " << c.rules
           << " rules)\n";
    }
  }
  doc["result"] = std::move(results);
  doc["indeterminate"] = any_indeterminate;
  if (any_false) {
    r.exit_code = kViolated;
  } else if (any_indeterminate) {
    r.exit_code = kIndeterminate;
  }
  finish(r, opt, std::move(doc), text.str());
  return r;
}

Result cmd_group_complete(const Options& opt) {
  const std::string text_in = read_file(opt.file);
  std::istringstream probe(text_in);
  std::string first;
  while (probe >> first && first.starts_with("#")) {
    std::string rest;
    std::getline(probe, rest);
  }
  const MonoidPresentation p = first == "order"
                                   ? nerve_presentation(parse_monoid_table(text_in))
                                   : parse_presentation(text_in);
  const GroupCompletion g = group_completion(p);
  json doc = envelope("monoid group-complete");
  doc["result"] = report::group_completion(g);
  doc["result"]["homomorphism"] = completion_map_is_homomorphism(p, g);
  doc["indeterminate"] = !g.system.complete;
  std::ostringstream text;
  text << "group completion: " << to_string(g.kind);
  if (g.order) text << ", order " << *g.order;
  if (g.cyclic) text << ", cyclic";
  text << '\n';
  Result r;
  if (!g.system.complete) r.exit_code = kIndeterminate;
  finish(r, opt, std::move(doc), text.str());
  return r;
}

Result cmd_moore_selftest(const Options& opt) {
  const MooreLawReport rep = check_moore_laws(opt.seed, opt.trials);
  json doc = envelope("moore selftest");
  doc["seed"] = opt.seed;
  doc["result"] = report::moore_laws(rep);
  doc["indeterminate"] = false;
  std::ostringstream text;
  text << rep.trials << " random triples: "
       << (rep.ok() ? "all category laws hold" : "LAW FAILURES") << '\n';
  Result r;
  if (!rep.ok()) r.exit_code = kViolated;
  finish(r, opt, std::move(doc), text.str());
  return r;
}

Result cmd_gen_2pl(const Options& opt) {
  const Program p =
      generate_random_2pl(opt.seed, opt.procs, opt.locks, opt.max_locks);
  json doc = envelope("gen-2pl");
  doc["seed"] = opt.seed;
  doc["result"] = {{"program", report::program(p)},
                   {"two_phase", report::two_phase(is_two_phase(p))}};
  doc["indeterminate"] = false;
  Result r;
  finish(r, opt, std::move(doc), render_program(p));
  return r;
}

}  // namespace

std::optional<std::string> process_env(std::string_view name) {
  const char* v = std::getenv(std::string(name).c_str());
  if (v == nullptr) return std::nullopt;
  return std::string(v);
}

Result run(const std::vector<std::string>& args, const EnvLookup& env) {
  Options opt;
  CLI::App app{"dihomo: directed-topology analysis of lock programs"};
  app.name("dihomo");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--format", opt.format, "Input format (default by extension)")
      ->check(CLI::IsMember({"pv", "boxes"}));
  app.add_flag("--json", opt.json, "Emit the canonical JSON report");
  app.add_option("--seed", opt.seed, "Seed for gen-2pl and moore selftest");
  app.add_option("--max-paths", opt.max_paths,
                 "Schedule cap (env DIHOMO_MAX_PATHS, default 200000)");
  app.add_option("--max-class-size", opt.max_class_size,
                 "Class exploration cap (default 1000000)");
  app.add_option("--engine", opt.engine, "Class engine: sweep or enumerate")
      ->check(CLI::IsMember({"sweep", "enumerate"}));

  auto* analyze = app.add_subcommand("analyze", "Reachability, deadlocks, unsafe region");
  auto* classes = app.add_subcommand("classes", "Dihomotopy classes of complete schedules");
  auto* serial = app.add_subcommand("serializable", "Decide serializability");
  auto* check2pl = app.add_subcommand("check-2pl", "Two-phase flags and verdict");
  auto* homology = app.add_subcommand("homology", "Cubical homology of X and (X, X1)");
  for (auto* sub : {analyze, classes, serial, check2pl, homology}) {
    sub->add_option("file", opt.file, "Input file (.pv or .boxes)")->required();
  }

  auto* monoid = app.add_subcommand("monoid", "Fundamental monoid tools");
  monoid->require_subcommand(1);
  auto* check_bm = monoid->add_subcommand("check-bm", "Check pi_1,0 B*M = M");
  check_bm->add_option("file", opt.file, "Monoid table (default: built-in catalog)");
  auto* group = monoid->add_subcommand("group-complete", "Group completion");
  group->add_option("file", opt.file, "Monoid table or presentation")->required();

  auto* moore = app.add_subcommand("moore", "Moore path category");
  moore->require_subcommand(1);
  auto* selftest = moore->add_subcommand("selftest", "Randomized category-law check");
  selftest->add_option("--trials", opt.trials, "Number of random triples");

  auto* gen = app.add_subcommand("gen-2pl", "Print a random two-phase program");
  gen->add_option("--procs", opt.procs, "Process count")->check(CLI::PositiveNumber);
  gen->add_option("--locks", opt.locks, "Lock count")->check(CLI::PositiveNumber);
  gen->add_option("--max-locks", opt.max_locks, "Locks per process")
      ->check(CLI::NonNegativeNumber);

  Result r;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    r.out = app.help();
    return r;
  } catch (const CLI::ParseError& e) {
    r.exit_code = kInputError;
    r.err = std::string("error: ") + e.what() + "\n" + app.help();
    return r;
  }

  try {
    if (gen->parsed()) return cmd_gen_2pl(opt);
    if (selftest->parsed()) return cmd_moore_selftest(opt);
    if (check_bm->parsed()) return cmd_check_bm(opt);
    if (group->parsed()) return cmd_group_complete(opt);
    const Caps caps = resolve_caps(opt, env);
    if (analyze->parsed()) return cmd_analyze(opt, caps);
    if (classes->parsed()) return cmd_classes(opt, caps);
    if (serial->parsed()) return cmd_serializable(opt, caps);
    if (check2pl->parsed()) return cmd_check_2pl(opt, caps);
    if (homology->parsed()) return cmd_homology(opt, caps);
  } catch (const InputError& e) {
    r.exit_code = kInputError;
    r.err = std::string("error: ") + e.what() + "\n";
    return r;
  } catch (const std::exception& e) {
    r.exit_code = kIndeterminate;
    r.err = std::string("error: ") + e.what() + "\n";
    return r;
  }
  r.exit_code = kInputError;
  r.err = app.help();
  return r;
}

}  // namespace dihomo::cli
