#pragma once

// The gpsyn commands as library functions. Each takes its options, writes the
// human report (or JSON with `json`) to `out`, diagnostics to `err`, and
// returns the process exit code.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <random>

#include "gpsyn/compiler.hpp"
#include "gpsyn/domains.hpp"
#include "gpsyn/evaluation.hpp"
#include "gpsyn/interpreter.hpp"
#include "gpsyn/io.hpp"
#include "gpsyn/planner.hpp"

namespace gpsyn {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,          // bad request that is not a parse error (e.g. no positive instances)
  kExitParse = 2,          // malformed input file or configuration
  kExitUnsolvable = 3,     // no program exists / the program does not validate
  kExitResource = 4,       // search or interpreter budget exhausted
  kExitInconsistent = 5,   // internal cross-check failed
};

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr const char* kBudgetEnv = "GPSYN_PLANNER_BUDGET";

// ---------------------------------------------------------------- manifest

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const auto t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

struct RunManifest {
  explicit RunManifest(std::string cmd, std::vector<std::string> in = {})
      : command(std::move(cmd)), inputs(std::move(in)) {}

  std::string command;
  std::vector<std::string> inputs;
  json config = json::object();
  std::vector<std::string> outputs;
  std::string started = utc_timestamp();
  std::string finished;

  [[nodiscard]] json to_json() const {
    return {{"tool", "gpsyn"},       {"version", std::string(kVersion)}, {"command", command},
            {"inputs", inputs},      {"config", config},                 {"outputs", outputs},
            {"started", started},    {"finished", finished}};
  }
};

// Output files are written verbatim; their manifest goes to `<file>.manifest.json`
// so that the files themselves stay reproducible byte for byte.
inline void write_with_manifest(const std::string& path, std::string_view content, RunManifest& m) {
  write_file(path, content);
  m.outputs.push_back(path);
}

inline void finish_manifest(RunManifest& m, const std::vector<std::string>& files) {
  m.finished = utc_timestamp();
  for (const auto& f : files) write_file(f + ".manifest.json", m.to_json().dump(2) + "\n");
}

// Multi-file outputs (a PDDL directory) share one manifest at `path`.
inline void finish_manifest_at(RunManifest& m, const std::string& path) {
  m.finished = utc_timestamp();
  write_file(path, m.to_json().dump(2) + "\n");
}

// ------------------------------------------------------------------ budget

// GPSYN_PLANNER_BUDGET: either a number of seconds ("600") or comma-separated
// key=value pairs over seconds, expansions, states ("seconds=60,expansions=1e6").
inline void apply_budget(SearchConfig& cfg, std::string_view spec) {
  auto number = [&](std::string_view v) -> double {
    std::string s(detail::trim(v));
    std::size_t used = 0;
    double d = 0;
    try {
      d = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || !(d > 0)) throw ParseError("bad planner budget value '" + s + "'");
    return d;
  };
  spec = detail::trim(spec);
  if (spec.empty()) throw ParseError("empty planner budget");
  if (spec.find('=') == std::string_view::npos) {
    cfg.max_seconds = number(spec);
    return;
  }
  std::size_t start = 0;
  while (start <= spec.size()) {
    auto comma = spec.find(',', start);
    auto item = spec.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    start = comma == std::string_view::npos ? spec.size() + 1 : comma + 1;
    auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError("bad planner budget item '" + std::string(item) + "'");
    auto key = detail::trim(item.substr(0, eq));
    auto val = number(item.substr(eq + 1));
    if (key == "seconds") {
      cfg.max_seconds = val;
    } else if (key == "expansions") {
      cfg.max_expansions = static_cast<std::size_t>(val);
    } else if (key == "states") {
      cfg.max_states = static_cast<std::size_t>(val);
    } else {
      throw ParseError("unknown planner budget key '" + std::string(key) + "'");
    }
  }
}

inline constexpr double kDefaultBudgetSeconds = 600;

struct PlannerOptions {
  std::string strategy = "gbfs";
  std::string heuristic = "hadd";
  std::optional<double> max_seconds;
  std::optional<std::size_t> max_expansions;
  std::optional<std::size_t> max_states;
};

// Default budget, then the environment, then explicit flags.
inline SearchConfig make_search_config(const PlannerOptions& o, const char* env_budget) {
  SearchConfig cfg;
  cfg.max_seconds = kDefaultBudgetSeconds;
  if (env_budget) apply_budget(cfg, env_budget);
  if (o.strategy == "gbfs") {
    cfg.strategy = Strategy::GBFS;
  } else if (o.strategy == "bfs") {
    cfg.strategy = Strategy::BFS;
  } else {
    throw ParseError("unknown strategy '" + o.strategy + "' (gbfs|bfs)");
  }
  if (o.heuristic == "hadd") {
    cfg.heuristic = Heuristic::HAdd;
  } else if (o.heuristic == "goalcount") {
    cfg.heuristic = Heuristic::GoalCount;
  } else if (o.heuristic == "blind") {
    cfg.heuristic = Heuristic::Blind;
  } else {
    throw ParseError("unknown heuristic '" + o.heuristic + "' (hadd|goalcount|blind)");
  }
  if (o.max_seconds) cfg.max_seconds = *o.max_seconds;
  if (o.max_expansions) cfg.max_expansions = *o.max_expansions;
  if (o.max_states) cfg.max_states = *o.max_states;
  cfg.validate();
  return cfg;
}

inline json config_to_json(const SearchConfig& cfg) {
  json j{{"strategy", cfg.strategy == Strategy::GBFS ? "gbfs" : "bfs"},
         {"heuristic", cfg.heuristic == Heuristic::HAdd ? "hadd" : cfg.heuristic == Heuristic::GoalCount ? "goalcount" : "blind"}};
  j["max_seconds"] = cfg.max_seconds ? json(*cfg.max_seconds) : json(nullptr);
  j["max_expansions"] = cfg.max_expansions ? json(*cfg.max_expansions) : json(nullptr);
  j["max_states"] = cfg.max_states ? json(*cfg.max_states) : json(nullptr);
  return j;
}

inline json stats_to_json(const SearchStats& s) {
  return {{"expansions", s.expansions}, {"generated", s.generated}, {"evaluated", s.evaluated},
          {"stored", s.stored},         {"seconds", s.elapsed_seconds}};
}

// ------------------------------------------------------------------ shared

struct CommandIO {
  std::ostream& out;
  std::ostream& err;
  bool json = false;
  const char* env_budget = nullptr;
};

inline json outcome_to_json(const ExecutionOutcome& o, const Frame& f) {
  json j{{"solved", o.solved}};
  if (!o.solved) {
    j["reason"] = std::string(to_string(o.reason));
    switch (o.reason) {
      case FailureReason::Incomplete: j["line"] = o.line; break;
      case FailureReason::Inapplicable:
        j["line"] = o.line;
        j["action"] = f.action(o.action).name;
        break;
      case FailureReason::InfiniteLoop:
        j["first_repeat_step"] = o.first_repeat_step;
        j["cycle_length"] = o.cycle_length;
        break;
    }
  }
  j["steps"] = o.steps;
  return j;
}

inline std::string describe(const TraceOutcome& o, const Frame& f) {
  if (o.solved) return "solved";
  switch (o.reason) {
    case FailureReason::Incomplete: return "incomplete (end at line " + std::to_string(o.line) + ")";
    case FailureReason::Inapplicable:
      return "inapplicable (" + (o.action ? f.action(*o.action).name : std::string("?")) + " at line " +
             std::to_string(o.line) + ")";
    case FailureReason::InfiniteLoop: return "infinite-loop";
  }
  return {};
}

// Runs `body`, mapping library exceptions onto exit codes.
template <class F>
int guarded(const CommandIO& io, F&& body) {
  auto fail = [&](int code, const std::string& kind, const char* what) {
    if (io.json) {
      io.out << json{{"error", kind}, {"message", what}, {"exit_code", code}}.dump(2) << '\n';
    }
    io.err << "gpsyn: " << kind << ": " << what << '\n';
    return code;
  };
  try {
    return body();
  } catch (const ParseError& e) {
    return fail(kExitParse, "parse error", e.what());
  } catch (const ConfigError& e) {
    return fail(kExitParse, "configuration error", e.what());
  } catch (const ResourceError& e) {
    return fail(kExitResource, "resource exhausted", e.what());
  } catch (const MalformedPlanError& e) {
    return fail(kExitInconsistent, "decode error", e.what());
  } catch (const VariantError& e) {
    return fail(kExitUsage, "invalid request", e.what());
  } catch (const ModelError& e) {
    return fail(kExitParse, "invalid model", e.what());
  } catch (const Error& e) {
    return fail(kExitInconsistent, "internal consistency", e.what());
  }
}

inline Program load_program(const std::string& path, const FramePtr& frame) { return parse_program(read_file(path), frame); }

// ------------------------------------------------------------------- synth

struct SynthOptions {
  std::string problem;
  std::size_t lines = 0;  // n: the program has lines 0..n
  std::string output;     // empty: program to stdout only
  PlannerOptions planner;
  bool backward_gotos_only = false;
};

inline int cmd_synth(const SynthOptions& o, const CommandIO& io) {
  return guarded(io, [&]() -> int {
    RunManifest m{"synth", {o.problem}};
    auto gp = load_problem(o.problem);
    auto cfg = make_search_config(o.planner, io.env_budget);
    m.config = {{"lines", o.lines}, {"planner", config_to_json(cfg)}, {"backward_gotos_only", o.backward_gotos_only}};
    if (gp.num_positive() == 0) throw VariantError("the problem has no positive instances");

    CompileOptions copts;
    copts.backward_gotos_only = o.backward_gotos_only;
    const auto ci = gp.num_negative() == 0 ? compile_synthesis_positive(gp, o.lines, copts)
                                           : compile_synthesis_pn(gp, o.lines, copts);
    m.config["variant"] = std::string(to_string(ci.variant));
    const auto res = solve(ci, cfg);

    json report{{"status", std::string(to_string(res.status))},
                {"compiled", {{"fluents", ci.frame->num_fluents()}, {"actions", ci.frame->num_actions()}}},
                {"search", stats_to_json(res.stats)}};
    auto emit = [&](int code, const std::optional<std::string>& program_text) {
      m.finished = utc_timestamp();
      report["manifest"] = m.to_json();
      report["exit_code"] = code;
      if (io.json) {
        if (program_text) report["program"] = *program_text;
        io.out << report.dump(2) << '\n';
      } else {
        io.out << "status: " << to_string(res.status) << " (" << res.stats.expansions << " expansions, "
               << std::fixed << std::setprecision(3) << res.stats.elapsed_seconds << " s)\n";
        if (program_text) io.out << *program_text;
      }
      return code;
    };

    if (res.status == SolveResult::Status::ProvedUnsolvable) return emit(kExitUnsolvable, std::nullopt);
    if (res.status == SolveResult::Status::ResourceExhausted) return emit(kExitResource, std::nullopt);

    auto decoded = decode_program(res.plan->actions, ci);
    const auto text = decoded.program.to_text();
    if (parse_program(text, gp.frame_ptr()) != decoded.program) {
      throw Error("emitted program does not re-parse to itself");
    }
    auto check = validate_program(decoded.program, gp);
    json per_instance = json::array();
    for (const auto& r : check.instances) {
      per_instance.push_back({{"name", r.name}, {"label", std::string(to_string(r.label))},
                              {"outcome", outcome_to_json(r.outcome, gp.frame())}});
    }
    report["validation"] = per_instance;
    if (!check.pass) {
      io.err << "gpsyn: internal consistency: the decoded program fails interpreter validation\n";
      return emit(kExitInconsistent, text);
    }
    if (!o.output.empty()) write_with_manifest(o.output, text, m);
    const int code = emit(kExitOk, text);
    finish_manifest(m, m.outputs);
    return code;
  });
}

// ---------------------------------------------------------------- validate

enum class ValidateMode { Direct, Compiled, Both };

struct ValidateOptions {
  std::string problem;
  std::string program;
  ValidateMode mode = ValidateMode::Both;
  PlannerOptions planner;
};

struct CompiledInstanceCheck {
  bool solved = false;
  TraceOutcome outcome;
};

// Validation through the compilation: the whole set via P_n′, plus each
// instance on its own under both labels. Exactly one of the two relabelings is
// solvable, and the negative one's plan names the failure source.
struct CompiledValidation {
  bool pass = false;
  std::vector<TraceOutcome> instances;
};

inline CompiledValidation validate_compiled(const Program& prog, const GeneralizedProblem& gp, const SearchConfig& cfg) {
  CompiledValidation out;
  out.pass = true;
  if (gp.size() == 0) return out;
  auto run = [&](const GeneralizedProblem& sub) {
    auto ci = compile_validation(sub, prog);
    auto res = solve(ci, cfg);
    if (res.status == SolveResult::Status::ResourceExhausted) {
      throw ResourceError("planner budget exhausted on the validation compilation");
    }
    return std::make_pair(std::move(ci), std::move(res));
  };
  out.pass = run(gp).second.solved();
  for (const auto& p : gp.instances()) {
    auto as = [&](Label l) {
      auto q = p;
      q.label = l;
      return GeneralizedProblem(gp.frame_ptr(), {q});
    };
    auto [ci_pos, pos_res] = run(as(Label::Positive));
    auto [ci_neg, neg_res] = run(as(Label::Negative));
    if (pos_res.solved() == neg_res.solved()) {
      throw Error("instance '" + p.name + "': positive and negative validation compilations agree");
    }
    if (pos_res.solved()) {
      auto t = decode_trace(pos_res.plan->actions, ci_pos);
      if (!t.front().solved) throw Error("instance '" + p.name + "': positive compilation plan does not solve it");
      out.instances.push_back(t.front());
    } else {
      auto t = decode_trace(neg_res.plan->actions, ci_neg);
      if (t.front().solved) throw Error("instance '" + p.name + "': negative compilation plan solves it");
      out.instances.push_back(t.front());
    }
  }
  return out;
}

// Agreement between the interpreter's outcome and the compiled trace.
inline bool outcomes_agree(const ExecutionOutcome& o, const TraceOutcome& t) {
  if (o.solved != t.solved) return false;
  if (o.solved) return true;
  if (o.reason != t.reason) return false;
  switch (o.reason) {
    case FailureReason::Incomplete: return o.line == t.line;
    case FailureReason::Inapplicable: return o.line == t.line && t.action == o.action;
    case FailureReason::InfiniteLoop: return true;
  }
  return false;
}

inline int cmd_validate(const ValidateOptions& o, const CommandIO& io) {
  return guarded(io, [&]() -> int {
    RunManifest m{"validate", {o.problem, o.program}};
    auto gp = load_problem(o.problem);
    auto prog = load_program(o.program, gp.frame_ptr());
    const bool direct = o.mode != ValidateMode::Compiled;
    const bool compiled = o.mode != ValidateMode::Direct;
    m.config = {{"mode", direct && compiled ? "both" : direct ? "direct" : "compiled"}};

    std::optional<ValidationReport> drep;
    std::optional<CompiledValidation> crep;
    if (direct) drep = validate_program(prog, gp);
    if (compiled) {
      auto cfg = make_search_config(o.planner, io.env_budget);
      cfg.strategy = Strategy::BFS;  // completeness matters more than speed here
      m.config["planner"] = config_to_json(cfg);
      crep = validate_compiled(prog, gp, cfg);
    }

    bool agree = true;
    if (drep && crep) {
      agree = drep->pass == crep->pass;
      for (std::size_t t = 0; t < gp.size(); ++t) {
        agree = agree && outcomes_agree(drep->instances[t].outcome, crep->instances[t]);
      }
    }
    const bool pass = drep ? drep->pass : crep->pass;
    const int code = !agree ? kExitInconsistent : pass ? kExitOk : kExitUnsolvable;

    m.finished = utc_timestamp();
    if (io.json) {
      json rows = json::array();
      for (std::size_t t = 0; t < gp.size(); ++t) {
        const auto& p = gp.instances()[t];
        json row{{"name", p.name}, {"label", std::string(to_string(p.label))}};
        if (drep) {
          row["direct"] = outcome_to_json(drep->instances[t].outcome, gp.frame());
          row["as_expected"] = drep->instances[t].as_expected();
        }
        if (crep) {
          const auto& c = crep->instances[t];
          json cj{{"solved", c.solved}};
          if (!c.solved) {
            cj["reason"] = std::string(to_string(c.reason));
            if (c.reason != FailureReason::InfiniteLoop) cj["line"] = c.line;
            if (c.action) cj["action"] = gp.frame().action(*c.action).name;
          }
          row["compiled"] = cj;
          row["as_expected"] = c.solved == (p.label == Label::Positive);
        }
        rows.push_back(row);
      }
      io.out << json{{"pass", pass}, {"modes_agree", agree}, {"instances", rows}, {"manifest", m.to_json()},
                     {"exit_code", code}}
                    .dump(2)
             << '\n';
    } else {
      for (std::size_t t = 0; t < gp.size(); ++t) {
        const auto& p = gp.instances()[t];
        io.out << std::left << std::setw(28) << p.name << ' ' << std::setw(8) << to_string(p.label);
        if (drep) io.out << "  direct: " << describe(drep->instances[t].outcome, gp.frame());
        if (crep) io.out << "  compiled: " << describe(crep->instances[t], gp.frame());
        io.out << '\n';
      }
      io.out << (pass ? "PASS" : "FAIL") << " (" << gp.size() << " instances)\n";
      if (!agree) io.out << "MODES DISAGREE\n";
    }
    if (!agree) io.err << "gpsyn: internal consistency: direct and compiled validation disagree\n";
    return code;
  });
}

// -------------------------------------------------------------------- eval

struct EvalOptions {
  std::string program;
  std::string test_set;
};

inline int cmd_eval(const EvalOptions& o, const CommandIO& io) {
  return guarded(io, [&]() -> int {
    RunManifest m{"eval", {o.program, o.test_set}};
    auto gp = load_problem(o.test_set);
    auto prog = load_program(o.program, gp.frame_ptr());
    auto ev = evaluate_test_set(prog, gp);
    m.finished = utc_timestamp();
    const auto& c = ev.counts;
    if (io.json) {
      json rows = json::array();
      for (const auto& r : ev.instances) {
        json row{{"name", r.name}, {"label", std::string(to_string(r.label))}, {"class", std::string(to_string(r.result))}};
        row["outcome"] = outcome_to_json(r.outcome, gp.frame());
        rows.push_back(row);
      }
      auto rate = [](const std::optional<Rational>& r) -> json {
        if (!r) return nullptr;
        return {{"num", r->num()}, {"den", r->den()}, {"percent", r->percent()}};
      };
      io.out << json{{"counts", {{"p", c.p}, {"n", c.n}, {"p_minus", c.p_minus}, {"n_minus", c.n_minus}}},
                     {"metrics",
                      {{"precision", rate(ev.metrics.precision)},
                       {"recall", rate(ev.metrics.recall)},
                       {"accuracy", rate(ev.metrics.accuracy)}}},
                     {"instances", rows},
                     {"manifest", m.to_json()}}
                    .dump(2)
             << '\n';
    } else {
      for (const auto& r : ev.instances) {
        io.out << std::left << std::setw(28) << r.name << ' ' << std::setw(8) << to_string(r.label) << ' '
               << std::setw(3) << to_string(r.result) << ' ' << describe(r.outcome, gp.frame()) << '\n';
      }
      io.out << "p=" << c.p << " n=" << c.n << " p-=" << c.p_minus << " n-=" << c.n_minus << '\n';
      // Undefined rates print as a bare "-".
      auto pct = [](const std::optional<Rational>& r) { return r ? r->percent() + "%" : std::string("-"); };
      io.out << "pr=" << pct(ev.metrics.precision) << " re=" << pct(ev.metrics.recall)
             << " ac=" << pct(ev.metrics.accuracy) << "\n";
    }
    return kExitOk;
  });
}

// ------------------------------------------------------------- export-pddl

struct ExportOptions {
  std::string problem;
  std::string out_dir = ".";
  std::string compile;  // "", "synth", "validate"
  std::size_t lines = 0;
  std::string program;  // for "validate"
  std::string domain = "gpsyn";
};

inline int cmd_export_pddl(const ExportOptions& o, const CommandIO& io) {
  return guarded(io, [&]() -> int {
    RunManifest m{"export-pddl", {o.problem}};
    m.config = {{"compile", o.compile.empty() ? "none" : o.compile}, {"lines", o.lines}, {"domain", o.domain}};
    auto gp = load_problem(o.problem);
    std::filesystem::create_directories(o.out_dir);
    auto path = [&](const std::string& f) { return (std::filesystem::path(o.out_dir) / f).string(); };
    if (o.compile.empty()) {
      write_with_manifest(path("domain.pddl"), to_pddl_domain(gp.frame(), o.domain), m);
      for (const auto& p : gp.instances()) write_with_manifest(path(p.name + ".pddl"), to_pddl_problem(p, o.domain), m);
    } else {
      std::optional<CompiledInstance> ci;
      if (o.compile == "synth") {
        if (gp.num_positive() == 0) throw VariantError("the problem has no positive instances");
        ci = gp.num_negative() == 0 ? compile_synthesis_positive(gp, o.lines) : compile_synthesis_pn(gp, o.lines);
      } else if (o.compile == "validate") {
        if (o.program.empty()) throw VariantError("--compile validate needs --program");
        m.inputs.push_back(o.program);
        ci = compile_validation(gp, load_program(o.program, gp.frame_ptr()));
      } else {
        throw ParseError("unknown compilation '" + o.compile + "' (synth|validate)");
      }
      auto inst = ci->as_instance();
      inst.name = "compiled";
      write_with_manifest(path("domain.pddl"), to_pddl_domain(*ci->frame, o.domain), m);
      write_with_manifest(path("problem.pddl"), to_pddl_problem(inst, o.domain), m);
    }
    finish_manifest_at(m, path("manifest.json"));
    if (io.json) {
      io.out << json{{"outputs", m.outputs}, {"manifest", m.to_json()}}.dump(2) << '\n';
    } else {
      for (const auto& f : m.outputs) io.out << f << '\n';
    }
    return kExitOk;
  });
}

struct ImportOptions {
  std::string domain_file;
  std::vector<std::string> problem_files;
  std::string output;
};

inline int cmd_import_pddl(const ImportOptions& o, const CommandIO& io) {
  return guarded(io, [&]() -> int {
    RunManifest m{"import-pddl", {o.domain_file}};
    auto frame = parse_pddl_domain(read_file(o.domain_file));
    GeneralizedProblem gp(frame, {});
    for (const auto& f : o.problem_files) {
      m.inputs.push_back(f);
      gp.add(parse_pddl_problem(read_file(f), frame));
    }
    const auto text = problem_to_json(gp).dump(2) + "\n";
    if (o.output.empty()) {
      io.out << text;
    } else {
      write_with_manifest(o.output, text, m);
      finish_manifest(m, m.outputs);
    }
    return kExitOk;
  });
}

// --------------------------------------------------------------------- gen

struct GenOptions {
  std::string domain;
  std::vector<std::size_t> positive_sizes;
  std::vector<std::size_t> negative_sizes;
  // Random batch: `count` instances with sizes in [min_size, max_size].
  std::size_t count = 0;
  std::size_t min_size = 1;
  std::size_t max_size = 10;
  std::string label = "positive";  // positive | negative | mixed (random batch)
  std::uint64_t seed = 1;
  std::string output;
};

// Portable draw in [lo, hi]: std::uniform_int_distribution differs between
// standard libraries, mt19937_64 does not.
inline std::size_t draw(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

inline GeneralizedProblem generate_problem(const GenOptions& o) {
  if (std::find(domain_names().begin(), domain_names().end(), o.domain) == domain_names().end()) {
    throw ParseError("unknown domain '" + o.domain + "'");
  }
  std::mt19937_64 rng(o.seed);
  std::vector<DomainSpec> specs;
  auto add = [&](std::size_t size, Label label) {
    DomainSpec s{o.domain, size, label, std::nullopt};
    if (o.domain == "greenblock") s.green_pos = draw(rng, 1, size);
    if (o.domain == "greenblock" && label == Label::Negative && size < 2) {
      throw VariantError("greenblock negatives need a tower of at least 2 blocks");
    }
    specs.push_back(s);
  };
  for (auto s : o.positive_sizes) add(s, Label::Positive);
  for (auto s : o.negative_sizes) add(s, Label::Negative);
  if (o.count > 0) {
    if (o.min_size < 1 || o.min_size > o.max_size) throw ParseError("bad size range");
    if (o.label != "positive" && o.label != "negative" && o.label != "mixed") {
      throw ParseError("label must be positive, negative or mixed");
    }
    for (std::size_t i = 0; i < o.count; ++i) {
      Label l = o.label == "negative" ? Label::Negative : Label::Positive;
      if (o.label == "mixed") l = draw(rng, 0, 1) == 0 ? Label::Positive : Label::Negative;
      std::size_t lo = o.min_size;
      if (o.domain == "greenblock" && l == Label::Negative) lo = std::max<std::size_t>(lo, 2);
      if (lo > o.max_size) throw VariantError("no greenblock negative fits the size range");
      add(draw(rng, lo, o.max_size), l);
    }
  }
  if (specs.empty()) throw VariantError("nothing to generate: give --pos/--neg sizes or --count");
  auto gp = make_problem(specs);
  // Names must be unique within a problem.
  std::map<std::string, std::size_t> seen;
  GeneralizedProblem named(gp.frame_ptr(), {});
  for (auto p : gp.instances()) {
    const auto k = seen[p.name]++;
    if (k > 0) p.name += "-" + std::to_string(k + 1);
    named.add(std::move(p));
  }
  return named;
}

inline int cmd_gen(const GenOptions& o, const CommandIO& io) {
  return guarded(io, [&]() -> int {
    RunManifest m{"gen", {}};
    m.config = {{"domain", o.domain},       {"positive_sizes", o.positive_sizes}, {"negative_sizes", o.negative_sizes},
                {"count", o.count},         {"min_size", o.min_size},             {"max_size", o.max_size},
                {"label", o.label},         {"seed", o.seed}};
    auto gp = generate_problem(o);
    const auto text = problem_to_json(gp).dump(2) + "\n";
    if (o.output.empty()) {
      io.out << text;
    } else {
      write_with_manifest(o.output, text, m);
      finish_manifest(m, m.outputs);
      if (io.json) {
        io.out << json{{"outputs", m.outputs}, {"instances", gp.size()}, {"manifest", m.to_json()}}.dump(2) << '\n';
      } else {
        io.out << o.output << ": " << gp.size() << " instances\n";
      }
    }
    return kExitOk;
  });
}

}  // namespace gpsyn
