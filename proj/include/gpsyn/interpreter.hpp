#pragma once

// Direct execution of planning programs with exact classification of the
// three failure sources: incomplete program, inapplicable action, infinite loop.

#include <unordered_map>
#include <variant>

#include "gpsyn/core.hpp"
#include "gpsyn/program.hpp"

namespace gpsyn {

class ResourceError : public Error {
 public:
  using Error::Error;
};

struct ProgramState {
  State s;
  std::size_t pc = 0;
  friend bool operator==(const ProgramState&, const ProgramState&) = default;
};

struct ProgramStateHash {
  std::size_t operator()(const ProgramState& ps) const {
    return ps.s.hash() ^ (ps.pc * 0x9e3779b97f4a7c15ULL);
  }
};

struct Terminated {};

struct StepFailure {
  std::size_t line = 0;
  ActionId action = 0;
};

using StepResult = std::variant<ProgramState, Terminated, StepFailure>;

enum class FailureReason { Incomplete, Inapplicable, InfiniteLoop };

inline std::string_view to_string(FailureReason r) {
  switch (r) {
    case FailureReason::Incomplete: return "incomplete";
    case FailureReason::Inapplicable: return "inapplicable";
    case FailureReason::InfiniteLoop: return "infinite-loop";
  }
  return {};
}

struct ExecutionOutcome {
  bool solved = false;
  std::size_t steps = 0;  // instructions executed before termination or failure
  FailureReason reason = FailureReason::Incomplete;
  std::size_t line = 0;        // Incomplete / Inapplicable: failing line
  ActionId action = 0;         // Inapplicable
  std::size_t first_repeat_step = 0;  // InfiniteLoop: step at which a program state repeated
  std::size_t cycle_length = 0;       // InfiniteLoop
  std::optional<ProgramState> repeated;  // InfiniteLoop: the repeated program state

  [[nodiscard]] bool failed_with(FailureReason r) const { return !solved && reason == r; }
};

inline std::string describe(const ExecutionOutcome& o, const Frame& frame) {
  if (o.solved) return "solved";
  switch (o.reason) {
    case FailureReason::Incomplete: return "incomplete (end at line " + std::to_string(o.line) + ")";
    case FailureReason::Inapplicable:
      return "inapplicable (" + frame.action(o.action).name + " at line " + std::to_string(o.line) + ")";
    case FailureReason::InfiniteLoop:
      return "infinite-loop (repeat at step " + std::to_string(o.first_repeat_step) + ")";
  }
  return {};
}

inline StepResult step(const Program& prog, const ProgramState& ps) {
  if (ps.pc > prog.max_line()) throw ModelError("program counter out of range");
  const auto& w = prog.line(ps.pc);
  switch (w.kind) {
    case Instruction::Kind::End: return Terminated{};
    case Instruction::Kind::Goto:
      return ProgramState{ps.s, ps.s.get(w.fluent) ? ps.pc + 1 : w.target};
    case Instruction::Kind::Act: {
      const auto& a = prog.frame().action(w.action);
      if (!is_applicable(ps.s, a)) return StepFailure{ps.pc, w.action};
      return ProgramState{successor(ps.s, a), ps.pc + 1};
    }
  }
  return Terminated{};
}

struct ExecuteOptions {
  std::size_t max_visited = std::size_t{1} << 22;
};

// Runs Π from (I, 0). Deterministic execution over a finite space, so a
// repeated program state is equivalent to non-termination.
inline ExecutionOutcome execute(const Program& prog, const ClassicalInstance& p,
                                const ExecuteOptions& opts = {}) {
  if (p.init.size() != prog.frame().num_fluents()) {
    throw ModelError("program and instance '" + p.name + "' do not share a frame");
  }
  ExecutionOutcome out;
  ProgramState cur{p.init, 0};
  std::unordered_map<ProgramState, std::size_t, ProgramStateHash> seen;
  for (std::size_t steps = 0;; ++steps) {
    auto [it, fresh] = seen.emplace(cur, steps);
    if (!fresh) {
      out.reason = FailureReason::InfiniteLoop;
      out.steps = steps;
      out.first_repeat_step = steps;
      out.cycle_length = steps - it->second;
      out.repeated = cur;
      return out;
    }
    if (seen.size() > opts.max_visited) {
      throw ResourceError("visited-state cap of " + std::to_string(opts.max_visited) +
                          " program states exceeded on '" + p.name + "'");
    }
    auto r = step(prog, cur);
    if (std::holds_alternative<Terminated>(r)) {
      out.steps = steps;
      out.line = cur.pc;
      out.solved = p.goal.holds_in(cur.s);
      out.reason = FailureReason::Incomplete;
      return out;
    }
    if (auto* f = std::get_if<StepFailure>(&r)) {
      out.steps = steps;
      out.reason = FailureReason::Inapplicable;
      out.line = f->line;
      out.action = f->action;
      return out;
    }
    cur = std::move(std::get<ProgramState>(r));
  }
}

struct InstanceReport {
  std::string name;
  Label label = Label::Positive;
  ExecutionOutcome outcome;

  // Positives must be solved, negatives must fail.
  [[nodiscard]] bool as_expected() const { return outcome.solved == (label == Label::Positive); }
};

struct ValidationReport {
  std::vector<InstanceReport> instances;
  bool pass = true;
};

inline ValidationReport validate_program(const Program& prog, const GeneralizedProblem& gp,
                                         const ExecuteOptions& opts = {}) {
  ValidationReport rep;
  for (const auto& p : gp.instances()) {
    InstanceReport ir{p.name, p.label, execute(prog, p, opts)};
    rep.pass = rep.pass && ir.as_expected();
    rep.instances.push_back(std::move(ir));
  }
  return rep;
}

}  // namespace gpsyn
