#pragma once

// Shared test fixtures: the corridor programs of the running example, random
// frames / instances / programs, and a constructive witness-plan oracle for
// the P_n″ compilation.

#include <random>

#include "gpsyn/gpsyn.hpp"

namespace gpsyn::testing {

inline constexpr const char* kProgramPi = "0. paint\n1. inc\n2. inc\n3. end\n";
inline constexpr const char* kProgramPiStar =
    "0. goto(2,!at_end)\n1. end\n2. paint\n3. inc\n4. inc\n5. goto(0,!at_end)\n6. end\n";
inline constexpr const char* kProgramPiPlus = "0. paint\n1. inc\n2. inc\n3. goto(0,!at_end)\n4. end\n";

// {2×1 positive, 6×1 positive, 1×1 negative}
inline GeneralizedProblem corridor_problem() {
  return make_problem({{"robopainter", 2, Label::Positive, std::nullopt},
                       {"robopainter", 6, Label::Positive, std::nullopt},
                       {"robopainter", 1, Label::Negative, std::nullopt}});
}

using gpsyn::draw;

inline bool coin(std::mt19937_64& rng, double p = 0.5) {
  return std::uniform_real_distribution<double>(0, 1)(rng) < p;
}

inline LiteralSet random_literals(std::mt19937_64& rng, std::size_t num_fluents, std::size_t count,
                                  const std::vector<FluentId>& allowed = {}) {
  LiteralSet out;
  for (std::size_t k = 0; k < count; ++k) {
    const auto f = allowed.empty() ? static_cast<FluentId>(draw(rng, 0, num_fluents - 1))
                                   : allowed[draw(rng, 0, allowed.size() - 1)];
    if (!out.value(f)) out.insert({f, coin(rng)});
  }
  return out;
}

// Random frame whose conditional effects within one action write disjoint
// fluents, so no state can trigger conflicting effects.
inline FramePtr random_frame(std::mt19937_64& rng, std::size_t num_fluents, std::size_t num_actions) {
  auto f = std::make_shared<Frame>();
  for (std::size_t i = 0; i < num_fluents; ++i) f->add_fluent("f" + std::to_string(i));
  for (std::size_t a = 0; a < num_actions; ++a) {
    Action act{"a" + std::to_string(a), random_literals(rng, num_fluents, draw(rng, 0, 2)), {}};
    std::vector<FluentId> free(num_fluents);
    std::iota(free.begin(), free.end(), 0);
    std::shuffle(free.begin(), free.end(), rng);
    const auto effects = draw(rng, 1, 3);
    for (std::size_t e = 0; e < effects && !free.empty(); ++e) {
      LiteralSet eff;
      const auto width = std::min<std::size_t>(draw(rng, 1, 2), free.size());
      for (std::size_t k = 0; k < width; ++k) {
        eff.insert({free.back(), coin(rng)});
        free.pop_back();
      }
      act.effects.push_back({random_literals(rng, num_fluents, draw(rng, 0, 2)), std::move(eff)});
    }
    f->add_action(std::move(act));
  }
  return f;
}

inline State random_state(std::mt19937_64& rng, std::size_t num_fluents) {
  State s(num_fluents);
  for (FluentId i = 0; i < num_fluents; ++i) s.set(i, coin(rng));
  return s;
}

inline ClassicalInstance random_instance(std::mt19937_64& rng, const FramePtr& frame, Label label, std::string name) {
  return {frame, random_state(rng, frame->num_fluents()),
          random_literals(rng, frame->num_fluents(), draw(rng, 1, 3)), label, std::move(name)};
}

inline Instruction random_instruction(std::mt19937_64& rng, const Frame& frame, std::size_t max_line) {
  const auto conds = frame.condition_fluents();
  switch (draw(rng, 0, 5)) {
    case 0:
    case 1:
    case 2: return Instruction::act(static_cast<ActionId>(draw(rng, 0, frame.num_actions() - 1)));
    case 3:
    case 4: return Instruction::go(draw(rng, 0, max_line), conds[draw(rng, 0, conds.size() - 1)]);
    default: return Instruction::end();
  }
}

// Random program with `num_lines` lines, the last one end.
inline Program random_program(std::mt19937_64& rng, const FramePtr& frame, std::size_t num_lines) {
  std::vector<Instruction> lines;
  for (std::size_t i = 0; i + 1 < num_lines; ++i) lines.push_back(random_instruction(rng, *frame, num_lines - 1));
  lines.push_back(Instruction::end());
  return Program(frame, std::move(lines));
}

// Builds, without search, the P_n″ plan that programs Π just in time and
// simulates it instance by instance: exec for positives; check + skip for
// incomplete / inapplicable negatives; store, compare, process, skip around
// one lap of the cycle for looping negatives. Returns nullopt when Π does not
// pass validation on the problem.
inline std::optional<std::vector<ActionId>> witness_plan(const Program& prog, const GeneralizedProblem& gp,
                                                         const CompiledInstance& ci) {
  const auto& src = gp.frame();
  const auto& cf = *ci.frame;
  std::vector<ActionId> plan;
  std::vector<bool> programmed(ci.n + 1, false);
  auto id = [&](const std::string& name) { return cf.action_id(name); };
  auto tok = [&](std::size_t line) { return detail::instruction_token(prog.line(line), src); };
  auto suffix = [](std::size_t line, std::optional<std::size_t> t) {
    return "__l" + std::to_string(line) + (t ? "__t" + std::to_string(*t + 1) : std::string());
  };
  auto touch = [&](std::size_t line) {
    if (!programmed[line]) {
      plan.push_back(id("prog__" + tok(line) + suffix(line, std::nullopt)));
      programmed[line] = true;
    }
  };
  // One successful instruction: check + exec.
  auto run = [&](std::size_t line) {
    touch(line);
    plan.push_back(id("check__" + tok(line) + suffix(line, std::nullopt)));
    plan.push_back(id("exec__" + tok(line) + suffix(line, std::nullopt)));
  };

  for (std::size_t t = 0; t < gp.size(); ++t) {
    const auto& p = gp.instances()[t];
    const auto out = execute(prog, p);
    if (out.solved != (p.label == Label::Positive)) return std::nullopt;
    ProgramState cur{p.init, 0};
    auto advance = [&] { cur = std::get<ProgramState>(step(prog, cur)); };

    if (out.solved || out.reason == FailureReason::Incomplete) {
      while (!prog.line(cur.pc).is_end()) {
        run(cur.pc);
        advance();
      }
      touch(cur.pc);
      plan.push_back(id("check__end" + suffix(cur.pc, t)));
      plan.push_back(id((out.solved ? "exec__end" + suffix(cur.pc, t) : "skip__t" + std::to_string(t + 1))));
    } else if (out.reason == FailureReason::Inapplicable) {
      for (std::size_t k = 0; k < out.steps; ++k) {
        run(cur.pc);
        advance();
      }
      touch(cur.pc);
      plan.push_back(id("check__" + tok(cur.pc) + suffix(cur.pc, std::nullopt)));
      plan.push_back(id("skip__t" + std::to_string(t + 1)));
    } else {
      // The cycle spans steps [first, first + len); storing needs one executed
      // step, and every state of the cycle recurs, so start no earlier than 1.
      const auto len = out.cycle_length;
      const auto start = std::max<std::size_t>(out.first_repeat_step - len, 1);
      for (std::size_t k = 0; k < start; ++k) {
        run(cur.pc);
        advance();
      }
      plan.push_back(id("store"));
      for (std::size_t k = 0; k < len; ++k) {
        run(cur.pc);
        advance();
      }
      plan.push_back(id("compare"));
      plan.push_back(id("process"));
      plan.push_back(id("skip__t" + std::to_string(t + 1)));
    }
  }
  return plan;
}

}  // namespace gpsyn::testing
