#pragma once

// Translations of generalized planning tasks into single classical planning
// instances whose goal is {done}:
//
//   SynthPositive  synthesis from positive instances (programming + execution actions)
//   Validation     validation of a given program with failure-source detection
//                  (check actions and the store / compare / process / skip gadget)
//   SynthPosNeg    synthesis from positive and negative instances (negex-gated)
//
// Compiled fluent layout, in id order:
//   F | pc_i | ins_<i>_<w> (w in I ∪ {nil}) | test_t | done
//     | checked holds stored acted loop | copy_x correct_x (x ∈ F ∪ F_pc) | negex
//
// Compiled action names embed their role and survive PDDL round trips:
//   prog__<w>__l<i>[__t<t>]  exec__<w>__l<i>[__t<t>]  check__<w>__l<i>[__t<t>]
//   store  compare  process  skip__t<t>
// where <w> is an action name, `end`, or `goto-<target>-<fluent>`.

#include <set>
#include <sstream>

#include "gpsyn/core.hpp"
#include "gpsyn/interpreter.hpp"
#include "gpsyn/program.hpp"

namespace gpsyn {

class VariantError : public Error {
 public:
  using Error::Error;
};

class MalformedPlanError : public Error {
 public:
  using Error::Error;
};

enum class CompilationVariant { SynthPositive, Validation, SynthPosNeg };

inline std::string_view to_string(CompilationVariant v) {
  switch (v) {
    case CompilationVariant::SynthPositive: return "synth-positive";
    case CompilationVariant::Validation: return "validation";
    case CompilationVariant::SynthPosNeg: return "synth-posneg";
  }
  return {};
}

struct CompiledActionRole {
  enum class Kind { ProgramIns, ExecIns, CheckIns, Store, Compare, Process, Skip };

  Kind kind = Kind::Store;
  std::size_t instruction = 0;  // index into CompiledInstance::instructions
  std::size_t line = 0;
  std::optional<std::size_t> instance;  // 0-based t for end variants and skip

  friend bool operator==(const CompiledActionRole&, const CompiledActionRole&) = default;
};

struct CompileOptions {
  // Drop goto(i', !f) on line i when i' >= i.
  bool backward_gotos_only = false;
  // Validation only: gate end/skip on the instance label through negex so the
  // compiled instance is solvable iff the program passes validation. Without
  // it every instance may terminate either way (pure failure diagnosis).
  bool label_gating = true;
};

struct FluentLayout {
  std::size_t num_base = 0;
  FluentId pc0 = 0;
  FluentId ins0 = 0;
  FluentId test0 = 0;
  FluentId done = 0;
  bool gadget = false;
  FluentId checked = 0, holds = 0, stored = 0, acted = 0, loop = 0;
  FluentId copy0 = 0, correct0 = 0;
  std::optional<FluentId> negex;
};

struct CompiledInstance {
  CompilationVariant variant = CompilationVariant::SynthPositive;
  FramePtr frame;         // compiled F_n and A_n
  FramePtr source_frame;  // Φ
  State init;
  LiteralSet goal;
  std::size_t n = 0;  // last program line
  std::vector<Instruction> instructions;  // the instruction alphabet I over Φ
  std::vector<std::string> instruction_tokens;
  std::vector<CompiledActionRole> roles;  // decode map, indexed by compiled action id
  std::vector<Label> labels;
  std::vector<std::string> instance_names;
  FluentLayout layout;

  [[nodiscard]] std::size_t num_instances() const { return labels.size(); }
  [[nodiscard]] std::size_t nil_token() const { return instructions.size(); }
  [[nodiscard]] FluentId pc(std::size_t i) const { return layout.pc0 + static_cast<FluentId>(i); }
  [[nodiscard]] FluentId ins(std::size_t i, std::size_t token) const {
    return layout.ins0 + static_cast<FluentId>(i * (instructions.size() + 1) + token);
  }
  [[nodiscard]] FluentId test(std::size_t t) const { return layout.test0 + static_cast<FluentId>(t); }

  [[nodiscard]] ClassicalInstance as_instance() const {
    return ClassicalInstance{frame, init, goal, Label::Positive, std::string(to_string(variant))};
  }
};

namespace detail {

inline std::string instruction_token(const Instruction& w, const Frame& frame) {
  switch (w.kind) {
    case Instruction::Kind::Act: return frame.action(w.action).name;
    case Instruction::Kind::Goto:
      return "goto-" + std::to_string(w.target) + "-" + frame.fluent_name(w.fluent);
    case Instruction::Kind::End: return "end";
  }
  return {};
}

class Compiler {
 public:
  Compiler(const GeneralizedProblem& gp, std::size_t n, CompilationVariant variant,
           const CompileOptions& opts, const Program* program)
      : gp_(gp), opts_(opts), program_(program) {
    ci_.variant = variant;
    ci_.n = n;
    ci_.source_frame = gp.frame_ptr();
    for (const auto& p : gp.instances()) {
      ci_.labels.push_back(p.label);
      ci_.instance_names.push_back(p.name);
    }
  }

  CompiledInstance run() {
    build_alphabet();
    build_fluents();
    build_actions();
    build_init();
    ci_.frame = std::make_shared<const Frame>(std::move(frame_));
    return std::move(ci_);
  }

 private:
  [[nodiscard]] bool synth() const { return ci_.variant != CompilationVariant::Validation; }
  [[nodiscard]] bool gadget() const { return ci_.variant != CompilationVariant::SynthPositive; }
  [[nodiscard]] bool gated() const {
    return ci_.variant == CompilationVariant::SynthPosNeg ||
           (ci_.variant == CompilationVariant::Validation && opts_.label_gating);
  }
  [[nodiscard]] const Frame& src() const { return gp_.frame(); }
  [[nodiscard]] std::size_t T() const { return gp_.size(); }

  void build_alphabet() {
    auto& ins = ci_.instructions;
    for (ActionId a = 0; a < src().num_actions(); ++a) ins.push_back(Instruction::act(a));
    for (std::size_t j = 0; j <= ci_.n; ++j) {
      for (auto f : src().condition_fluents()) ins.push_back(Instruction::go(j, f));
    }
    ins.push_back(Instruction::end());
    if (program_ != nullptr) {
      for (const auto& w : program_->lines()) {
        if (std::find(ins.begin(), ins.end(), w) == ins.end()) ins.push_back(w);
      }
    }
    for (const auto& w : ins) ci_.instruction_tokens.push_back(instruction_token(w, src()));
  }

  FluentId add(const std::string& name) {
    if (frame_.find_fluent(name)) {
      throw ModelError("compiled fluent '" + name + "' collides with an existing fluent");
    }
    return frame_.add_fluent(name);
  }

  void build_fluents() {
    auto& L = ci_.layout;
    L.num_base = src().num_fluents();
    for (const auto& name : src().fluent_names()) frame_.add_fluent(name);
    L.pc0 = static_cast<FluentId>(frame_.num_fluents());
    for (std::size_t i = 0; i <= ci_.n; ++i) add("pc_" + std::to_string(i));
    L.ins0 = static_cast<FluentId>(frame_.num_fluents());
    for (std::size_t i = 0; i <= ci_.n; ++i) {
      for (const auto& tok : ci_.instruction_tokens) add("ins_" + std::to_string(i) + "_" + tok);
      add("ins_" + std::to_string(i) + "_nil");
    }
    L.test0 = static_cast<FluentId>(frame_.num_fluents());
    for (std::size_t t = 1; t <= T(); ++t) add("test_" + std::to_string(t));
    L.done = add("done");
    if (gadget()) {
      L.gadget = true;
      L.checked = add("checked");
      L.holds = add("holds");
      L.stored = add("stored");
      L.acted = add("acted");
      L.loop = add("loop");
      L.copy0 = static_cast<FluentId>(frame_.num_fluents());
      for (FluentId x = 0; x < num_copied(); ++x) add("copy_" + frame_.fluent_name(x));
      L.correct0 = static_cast<FluentId>(frame_.num_fluents());
      for (FluentId x = 0; x < num_copied(); ++x) add("correct_" + frame_.fluent_name(x));
    }
    if (gated()) L.negex = add("negex");
  }

  // F ∪ F_pc occupy the first |F| + n + 1 ids.
  [[nodiscard]] FluentId num_copied() const {
    return static_cast<FluentId>(ci_.layout.num_base + ci_.n + 1);
  }

  [[nodiscard]] std::string suffix(std::size_t i, std::optional<std::size_t> t = {}) const {
    std::string s = "__l" + std::to_string(i);
    if (t) s += "__t" + std::to_string(*t + 1);
    return s;
  }

  void emit(Action a, CompiledActionRole role) {
    frame_.add_action(std::move(a));
    ci_.roles.push_back(role);
  }

  // Effects that move execution from instance t to t+1, or finish after the last one.
  [[nodiscard]] LiteralSet termination_effect(std::size_t t) const {
    const auto& L = ci_.layout;
    LiteralSet e;
    if (t + 1 == T()) {
      e.insert(pos(L.done));
      return e;
    }
    const auto& next = gp_.instances()[t + 1];
    for (FluentId f = 0; f < L.num_base; ++f) e.insert({f, next.init.get(f)});
    for (std::size_t j = 0; j <= ci_.n; ++j) e.insert({ci_.pc(j), j == 0});
    e.insert(neg(ci_.test(t)));
    e.insert(pos(ci_.test(t + 1)));
    if (L.gadget) {
      for (auto f : {L.acted, L.stored, L.checked, L.holds, L.loop}) e.insert(neg(f));
      for (FluentId x = 0; x < num_copied(); ++x) {
        e.insert(neg(L.copy0 + x));
        e.insert(neg(L.correct0 + x));
      }
    }
    if (L.negex) e.insert({*L.negex, next.label == Label::Negative});
    return e;
  }

  [[nodiscard]] bool allowed_on_line(const Instruction& w, std::size_t i) const {
    if (i == ci_.n) return w.is_end();
    if (w.is_goto() && opts_.backward_gotos_only && w.target >= i) return false;
    return true;
  }

  void build_actions() {
    const auto& L = ci_.layout;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (line, token)
    for (std::size_t i = 0; i <= ci_.n; ++i) {
      if (program_ != nullptr) {
        const auto& w = program_->line(i);
        auto tok = static_cast<std::size_t>(
            std::find(ci_.instructions.begin(), ci_.instructions.end(), w) - ci_.instructions.begin());
        pairs.emplace_back(i, tok);
      } else {
        for (std::size_t k = 0; k < ci_.instructions.size(); ++k) {
          if (allowed_on_line(ci_.instructions[k], i)) pairs.emplace_back(i, k);
        }
      }
    }

    if (synth()) {
      for (auto [i, k] : pairs) emit_programming(i, k);
    }
    for (auto [i, k] : pairs) {
      if (gadget()) emit_check(i, k);
      emit_execution(i, k);
    }
    if (gadget()) {
      emit_loop_gadget();
      for (std::size_t t = 0; t < T(); ++t) {
        Action a{"skip" + std::string("__t") + std::to_string(t + 1), {}, {}};
        a.pre.insert(pos(ci_.test(t)));
        a.pre.insert(pos(L.checked));
        a.pre.insert(neg(L.holds));
        if (L.negex) a.pre.insert(pos(*L.negex));
        LiteralSet e = termination_effect(t);
        e.insert(neg(L.checked));
        e.insert(neg(L.stored));
        for (FluentId x = 0; x < num_copied(); ++x) {
          e.insert(neg(L.copy0 + x));
          e.insert(neg(L.correct0 + x));
        }
        a.effects.push_back({{}, std::move(e)});
        emit(std::move(a), {CompiledActionRole::Kind::Skip, 0, 0, t});
      }
    }
  }

  void emit_programming(std::size_t i, std::size_t k) {
    const auto& w = ci_.instructions[k];
    const auto& tok = ci_.instruction_tokens[k];
    LiteralSet eff{neg(ci_.ins(i, ci_.nil_token())), pos(ci_.ins(i, k))};
    auto base_pre = [&] {
      LiteralSet pre{pos(ci_.pc(i)), pos(ci_.ins(i, ci_.nil_token()))};
      return pre;
    };
    if (ci_.variant == CompilationVariant::SynthPositive) {
      // pre(P(w_i)) = pre(w) ∪ {pc_i, ins_i,nil}, one copy per end_t.
      if (w.is_end()) {
        for (std::size_t t = 0; t < T(); ++t) {
          LiteralSet pre = base_pre();
          pre.merge(gp_.instances()[t].goal);
          pre.insert(pos(ci_.test(t)));
          emit({"prog__" + tok + suffix(i, t), std::move(pre), {{{}, eff}}},
               {CompiledActionRole::Kind::ProgramIns, k, i, t});
        }
        return;
      }
      LiteralSet pre = base_pre();
      if (w.is_act()) pre.merge(src().action(w.action).pre);
      emit({"prog__" + tok + suffix(i), std::move(pre), {{{}, eff}}},
           {CompiledActionRole::Kind::ProgramIns, k, i, std::nullopt});
      return;
    }
    // With negatives an instruction may legitimately fail on the instance that
    // first reaches its line, so programming does not require pre(w).
    emit({"prog__" + tok + suffix(i), base_pre(), {{{}, eff}}},
         {CompiledActionRole::Kind::ProgramIns, k, i, std::nullopt});
  }

  void emit_check(std::size_t i, std::size_t k) {
    const auto& L = ci_.layout;
    const auto& w = ci_.instructions[k];
    const auto& tok = ci_.instruction_tokens[k];
    auto make = [&](LiteralSet cond) {
      Action a;
      a.pre = LiteralSet{pos(ci_.pc(i)), pos(ci_.ins(i, k)), neg(L.checked), neg(L.loop)};
      a.effects.push_back({{}, LiteralSet{pos(L.checked)}});
      a.effects.push_back({std::move(cond), LiteralSet{pos(L.holds)}});
      return a;
    };
    if (w.is_end()) {
      for (std::size_t t = 0; t < T(); ++t) {
        // test_t is a precondition so that a check for another instance cannot
        // fake a failure of the current one.
        Action a = make(gp_.instances()[t].goal);
        a.name = "check__" + tok + suffix(i, t);
        a.pre.insert(pos(ci_.test(t)));
        a.pre.insert(neg(L.stored));
        emit(std::move(a), {CompiledActionRole::Kind::CheckIns, k, i, t});
      }
      return;
    }
    Action a = make(w.is_act() ? src().action(w.action).pre : LiteralSet{});
    a.name = "check__" + tok + suffix(i);
    emit(std::move(a), {CompiledActionRole::Kind::CheckIns, k, i, std::nullopt});
  }

  void emit_execution(std::size_t i, std::size_t k) {
    const auto& L = ci_.layout;
    const auto& w = ci_.instructions[k];
    const auto& tok = ci_.instruction_tokens[k];
    auto base_pre = [&] {
      LiteralSet pre{pos(ci_.pc(i)), pos(ci_.ins(i, k))};
      if (gadget()) {
        pre.insert(pos(L.checked));
        pre.insert(pos(L.holds));
      }
      return pre;
    };
    LiteralSet bookkeeping;
    if (gadget()) bookkeeping = LiteralSet{neg(L.checked), neg(L.holds), pos(L.acted)};

    if (w.is_end()) {
      for (std::size_t t = 0; t < T(); ++t) {
        if (ci_.variant == CompilationVariant::Validation && opts_.label_gating &&
            ci_.labels[t] == Label::Negative) {
          continue;
        }
        LiteralSet pre = base_pre();
        pre.merge(gp_.instances()[t].goal);
        pre.insert(pos(ci_.test(t)));
        if (L.negex) pre.insert(neg(*L.negex));
        LiteralSet e = termination_effect(t);
        if (gadget()) {
          e.insert(neg(L.checked));
          e.insert(neg(L.holds));
        }
        emit({"exec__" + tok + suffix(i, t), std::move(pre), {{{}, std::move(e)}}},
             {CompiledActionRole::Kind::ExecIns, k, i, t});
      }
      return;
    }

    Action a{"exec__" + tok + suffix(i), base_pre(), {}};
    if (w.is_act()) {
      const auto& act = src().action(w.action);
      a.pre.merge(act.pre);
      a.effects = act.effects;
      LiteralSet e{neg(ci_.pc(i)), pos(ci_.pc(i + 1))};
      e.merge(bookkeeping);
      a.effects.push_back({{}, std::move(e)});
    } else {
      // goto(i', !f): fall through when f holds, jump otherwise. A self-jump
      // keeps pc_i, so only the fall-through branch touches it.
      if (!bookkeeping.empty()) a.effects.push_back({{}, bookkeeping});
      a.effects.push_back({LiteralSet{pos(w.fluent)}, LiteralSet{neg(ci_.pc(i)), pos(ci_.pc(i + 1))}});
      if (w.target != i) {
        a.effects.push_back(
            {LiteralSet{neg(w.fluent)}, LiteralSet{neg(ci_.pc(i)), pos(ci_.pc(w.target))}});
      }
    }
    emit(std::move(a), {CompiledActionRole::Kind::ExecIns, k, i, std::nullopt});
  }

  void emit_loop_gadget() {
    const auto& L = ci_.layout;
    const bool guard = ci_.variant == CompilationVariant::SynthPosNeg;

    Action store{"store", LiteralSet{neg(L.checked), neg(L.stored), pos(L.acted)}, {}};
    store.effects.push_back({{}, LiteralSet{pos(L.stored), neg(L.acted)}});
    for (FluentId x = 0; x < num_copied(); ++x) {
      store.effects.push_back({LiteralSet{pos(x)}, LiteralSet{pos(L.copy0 + x)}});
    }

    Action compare{"compare", LiteralSet{neg(L.checked), pos(L.stored), pos(L.acted), neg(L.loop)}, {}};
    compare.effects.push_back({{}, LiteralSet{neg(L.stored), neg(L.acted), pos(L.loop)}});
    for (FluentId x = 0; x < num_copied(); ++x) {
      compare.effects.push_back({LiteralSet{pos(x), pos(L.copy0 + x)}, LiteralSet{pos(L.correct0 + x)}});
      compare.effects.push_back({LiteralSet{neg(x), neg(L.copy0 + x)}, LiteralSet{pos(L.correct0 + x)}});
    }

    Action process{"process", LiteralSet{pos(L.loop)}, {}};
    for (FluentId x = 0; x < num_copied(); ++x) process.pre.insert(pos(L.correct0 + x));
    process.effects.push_back({{}, LiteralSet{neg(L.loop), pos(L.checked)}});

    for (auto* a : {&store, &compare, &process}) {
      if (guard) a->pre.insert(pos(*L.negex));
    }
    emit(std::move(store), {CompiledActionRole::Kind::Store, 0, 0, std::nullopt});
    emit(std::move(compare), {CompiledActionRole::Kind::Compare, 0, 0, std::nullopt});
    emit(std::move(process), {CompiledActionRole::Kind::Process, 0, 0, std::nullopt});
  }

  void build_init() {
    const auto& L = ci_.layout;
    State s(frame_.num_fluents());
    const auto& first = gp_.instances().front();
    for (FluentId f = 0; f < L.num_base; ++f) s.set(f, first.init.get(f));
    s.set(ci_.pc(0), true);
    s.set(ci_.test(0), true);
    for (std::size_t i = 0; i <= ci_.n; ++i) {
      if (program_ != nullptr) {
        const auto& w = program_->line(i);
        auto tok = static_cast<std::size_t>(
            std::find(ci_.instructions.begin(), ci_.instructions.end(), w) - ci_.instructions.begin());
        s.set(ci_.ins(i, tok), true);
      } else {
        s.set(ci_.ins(i, ci_.nil_token()), true);
      }
    }
    if (L.negex && first.label == Label::Negative) s.set(*L.negex, true);
    ci_.init = std::move(s);
    ci_.goal = LiteralSet{pos(L.done)};
  }

  const GeneralizedProblem& gp_;
  CompileOptions opts_;
  const Program* program_;
  CompiledInstance ci_;
  Frame frame_;
};

inline void require_instances(const GeneralizedProblem& gp) {
  if (gp.size() == 0) throw VariantError("generalized problem has no instances");
}

}  // namespace detail

// P_n: synthesis from positive instances only.
inline CompiledInstance compile_synthesis_positive(const GeneralizedProblem& gp, std::size_t n,
                                                   const CompileOptions& opts = {}) {
  detail::require_instances(gp);
  if (n < 1) throw VariantError("synthesis needs n >= 1");
  if (gp.num_negative() != 0) {
    throw VariantError("positive-only synthesis given " + std::to_string(gp.num_negative()) +
                       " negative instance(s)");
  }
  return detail::Compiler(gp, n, CompilationVariant::SynthPositive, opts, nullptr).run();
}

// P_n′: validation of a fixed program.
inline CompiledInstance compile_validation(const GeneralizedProblem& gp, const Program& prog,
                                           const CompileOptions& opts = {}) {
  detail::require_instances(gp);
  if (prog.frame_ptr().get() != gp.frame_ptr().get() && !(prog.frame() == gp.frame())) {
    throw ModelError("program and problem do not share a frame");
  }
  return detail::Compiler(gp, prog.max_line(), CompilationVariant::Validation, opts, &prog).run();
}

// P_n″: synthesis from positive and negative instances.
inline CompiledInstance compile_synthesis_pn(const GeneralizedProblem& gp, std::size_t n,
                                             const CompileOptions& opts = {}) {
  detail::require_instances(gp);
  if (n < 1) throw VariantError("synthesis needs n >= 1");
  if (gp.num_positive() == 0) {
    throw VariantError("synthesis with negatives needs at least one positive instance");
  }
  return detail::Compiler(gp, n, CompilationVariant::SynthPosNeg, opts, nullptr).run();
}

inline CompiledInstance compile(const GeneralizedProblem& gp, std::size_t n, CompilationVariant v,
                                const CompileOptions& opts = {}) {
  switch (v) {
    case CompilationVariant::SynthPositive: return compile_synthesis_positive(gp, n, opts);
    case CompilationVariant::SynthPosNeg: return compile_synthesis_pn(gp, n, opts);
    case CompilationVariant::Validation: break;
  }
  throw VariantError("validation compilation needs a program");
}

struct DecodedProgram {
  Program program;
  std::vector<std::size_t> unprogrammed;  // lines left empty by the plan, emitted as end
};

inline DecodedProgram decode_program(std::span<const ActionId> plan, const CompiledInstance& ci) {
  if (ci.variant == CompilationVariant::Validation) {
    throw VariantError("decode_program needs a synthesis compilation");
  }
  std::vector<std::optional<Instruction>> lines(ci.n + 1);
  for (auto id : plan) {
    if (id >= ci.roles.size()) throw MalformedPlanError("plan references unknown action id");
    const auto& r = ci.roles[id];
    if (r.kind != CompiledActionRole::Kind::ProgramIns) continue;
    if (lines[r.line]) {
      throw MalformedPlanError("line " + std::to_string(r.line) + " programmed twice");
    }
    lines[r.line] = ci.instructions[r.instruction];
  }
  DecodedProgram out{Program(ci.source_frame, {Instruction::end()}), {}};
  std::vector<Instruction> ws;
  for (std::size_t i = 0; i <= ci.n; ++i) {
    if (lines[i]) {
      ws.push_back(*lines[i]);
    } else {
      ws.push_back(Instruction::end());
      out.unprogrammed.push_back(i);
    }
  }
  out.program = Program(ci.source_frame, std::move(ws));
  return out;
}

struct TraceOutcome {
  bool solved = false;
  FailureReason reason = FailureReason::Incomplete;
  std::size_t line = 0;
  std::optional<ActionId> action;  // source action for Inapplicable

  friend bool operator==(const TraceOutcome&, const TraceOutcome&) = default;
};

// Replays a goal-reaching plan and reads off, per instance, whether it ended
// with E(end) or with skip_t; for skip_t the last non-programming action
// before it names the failure source.
inline std::vector<TraceOutcome> decode_trace(std::span<const ActionId> plan, const CompiledInstance& ci) {
  if (!validate_sequential_plan(ci.as_instance(), plan)) {
    throw MalformedPlanError("plan does not reach the compiled goal");
  }
  using K = CompiledActionRole::Kind;
  std::vector<TraceOutcome> out;
  std::optional<CompiledActionRole> last;
  for (auto id : plan) {
    const auto& r = ci.roles[id];
    if (r.kind == K::ExecIns && ci.instructions[r.instruction].is_end()) {
      out.push_back({true, FailureReason::Incomplete, r.line, std::nullopt});
    } else if (r.kind == K::Skip) {
      if (!last) throw MalformedPlanError("skip without a preceding failure witness");
      TraceOutcome o;
      if (last->kind == K::Process) {
        o.reason = FailureReason::InfiniteLoop;
      } else if (last->kind == K::CheckIns && ci.instructions[last->instruction].is_end()) {
        o.reason = FailureReason::Incomplete;
        o.line = last->line;
      } else if (last->kind == K::CheckIns && ci.instructions[last->instruction].is_act()) {
        o.reason = FailureReason::Inapplicable;
        o.line = last->line;
        o.action = ci.instructions[last->instruction].action;
      } else {
        throw MalformedPlanError("skip preceded by an action that witnesses no failure");
      }
      out.push_back(o);
    }
    if (r.kind != K::ProgramIns) last = r;
  }
  if (out.size() != ci.num_instances()) {
    throw MalformedPlanError("plan terminates " + std::to_string(out.size()) + " of " +
                             std::to_string(ci.num_instances()) + " instances");
  }
  return out;
}

// Recovers a role from a compiled action name (inverse of the naming scheme).
inline std::optional<CompiledActionRole> role_from_name(std::string_view name, const CompiledInstance& ci) {
  using K = CompiledActionRole::Kind;
  if (name == "store") return CompiledActionRole{K::Store, 0, 0, std::nullopt};
  if (name == "compare") return CompiledActionRole{K::Compare, 0, 0, std::nullopt};
  if (name == "process") return CompiledActionRole{K::Process, 0, 0, std::nullopt};
  auto take_number_suffix = [](std::string_view& s, std::string_view marker) -> std::optional<std::size_t> {
    auto p = s.rfind(marker);
    if (p == std::string_view::npos) return std::nullopt;
    auto v = detail::parse_index(s.substr(p + marker.size()));
    if (!v) return std::nullopt;
    s = s.substr(0, p);
    return v;
  };
  if (name.starts_with("skip__t")) {
    auto v = detail::parse_index(name.substr(7));
    if (!v || *v == 0) return std::nullopt;
    return CompiledActionRole{K::Skip, 0, 0, *v - 1};
  }
  K kind;
  std::string_view rest;
  if (name.starts_with("prog__")) {
    kind = K::ProgramIns;
    rest = name.substr(6);
  } else if (name.starts_with("exec__")) {
    kind = K::ExecIns;
    rest = name.substr(6);
  } else if (name.starts_with("check__")) {
    kind = K::CheckIns;
    rest = name.substr(7);
  } else {
    return std::nullopt;
  }
  std::optional<std::size_t> t;
  if (auto p = rest.rfind("__t"); p != std::string_view::npos && p > rest.rfind("__l")) {
    t = take_number_suffix(rest, "__t");
    if (!t || *t == 0) return std::nullopt;
    *t -= 1;
  }
  auto line = take_number_suffix(rest, "__l");
  if (!line) return std::nullopt;
  auto it = std::find(ci.instruction_tokens.begin(), ci.instruction_tokens.end(), rest);
  if (it == ci.instruction_tokens.end()) return std::nullopt;
  return CompiledActionRole{kind, static_cast<std::size_t>(it - ci.instruction_tokens.begin()), *line, t};
}

}  // namespace gpsyn
