#include <gtest/gtest.h>

#include "support.hpp"

namespace gpsyn {
namespace {

using testing::corridor_problem;

TEST(Interpreter, FigureOneOutcomes) {
  auto gp = corridor_problem();
  const auto& I = gp.instances();
  auto pi = parse_program(testing::kProgramPi, gp.frame_ptr());
  auto star = parse_program(testing::kProgramPiStar, gp.frame_ptr());
  auto plus = parse_program(testing::kProgramPiPlus, gp.frame_ptr());

  EXPECT_TRUE(execute(pi, I[0]).solved);
  auto o = execute(pi, I[1]);
  EXPECT_TRUE(o.failed_with(FailureReason::Incomplete));
  EXPECT_EQ(o.line, 3U);
  EXPECT_FALSE(execute(pi, I[2]).solved);

  for (const auto& p : I) EXPECT_TRUE(execute(star, p).solved) << p.name;
  EXPECT_FALSE(validate_program(star, gp).pass);

  auto rep = validate_program(plus, gp);
  EXPECT_TRUE(rep.pass);
  ASSERT_EQ(rep.instances.size(), 3U);
  EXPECT_TRUE(rep.instances[2].outcome.failed_with(FailureReason::Incomplete));
  EXPECT_TRUE(rep.instances[2].as_expected());
}

TEST(Interpreter, StepSemantics) {
  auto gp = corridor_problem();
  const auto& f = gp.frame();
  auto prog = parse_program("0. goto(2,!at_end)\n1. end\n2. paint\n3. end\n", gp.frame_ptr());
  // at_end false: jump to 2.
  auto r = step(prog, ProgramState{gp.instances()[0].init, 0});
  ASSERT_TRUE(std::holds_alternative<ProgramState>(r));
  EXPECT_EQ(std::get<ProgramState>(r).pc, 2U);
  // at_end true (1×1): fall through to 1.
  r = step(prog, ProgramState{gp.instances()[2].init, 0});
  EXPECT_EQ(std::get<ProgramState>(r).pc, 1U);
  r = step(prog, ProgramState{gp.instances()[2].init, 1});
  EXPECT_TRUE(std::holds_alternative<Terminated>(r));
  r = step(prog, ProgramState{gp.instances()[0].init, 2});
  EXPECT_TRUE(std::get<ProgramState>(r).s.get(f.fluent("painted_1")));
  EXPECT_THROW(step(prog, ProgramState{gp.instances()[0].init, 9}), ModelError);
}

TEST(Interpreter, InapplicableAction) {
  // visit has precondition ¬at_null; a list of length 1 is left after one next.
  auto gp = make_problem({{"list", 1, Label::Positive, std::nullopt}});
  auto prog = parse_program("0. visit\n1. next\n2. visit\n3. end\n", gp.frame_ptr());
  auto o = execute(prog, gp.instances()[0]);
  EXPECT_TRUE(o.failed_with(FailureReason::Inapplicable));
  EXPECT_EQ(o.line, 2U);
  EXPECT_EQ(o.action, gp.frame().action_id("visit"));
  EXPECT_EQ(o.steps, 2U);
}

TEST(Interpreter, InfiniteLoopDetection) {
  auto gp = corridor_problem();
  // paint forever on a 2×1 corridor: at_end never holds before inc.
  auto prog = parse_program("0. paint\n1. goto(0,!at_end)\n2. end\n", gp.frame_ptr());
  auto o = execute(prog, gp.instances()[0]);
  ASSERT_TRUE(o.failed_with(FailureReason::InfiniteLoop));
  ASSERT_TRUE(o.repeated.has_value());
  EXPECT_EQ(o.cycle_length, 2U);
  EXPECT_EQ(o.first_repeat_step, 3U);  // (s1,1) first seen at step 1, again at step 3
  EXPECT_EQ(o.repeated->pc, 1U);
  // Self-loop through a goto on its own line.
  auto spin = parse_program("0. goto(0,!at_end)\n1. end\n", gp.frame_ptr());
  auto s = execute(spin, gp.instances()[0]);
  EXPECT_TRUE(s.failed_with(FailureReason::InfiniteLoop));
  EXPECT_EQ(s.cycle_length, 1U);
  // On 1×1 at_end holds at once; end then meets the negative goal (nothing painted).
  EXPECT_TRUE(execute(spin, gp.instances()[2]).solved);
}

TEST(Interpreter, VisitedCapRaisesResourceError) {
  auto gp = make_problem({{"trisum", 10, Label::Positive, std::nullopt}});
  auto prog = parse_program("0. add_a_b\n1. dec_b\n2. goto(0,!b_eq_0)\n3. end\n", gp.frame_ptr());
  EXPECT_TRUE(execute(prog, gp.instances()[0]).solved);
  EXPECT_THROW(execute(prog, gp.instances()[0], ExecuteOptions{5}), ResourceError);
}

TEST(Interpreter, FrameMismatch) {
  auto gp = corridor_problem();
  auto other = make_problem({{"list", 2, Label::Positive, std::nullopt}});
  auto prog = parse_program(testing::kProgramPi, gp.frame_ptr());
  EXPECT_THROW(execute(prog, other.instances()[0]), ModelError);
}

TEST(Interpreter, DescribeMentionsSource) {
  auto gp = make_problem({{"list", 1, Label::Positive, std::nullopt}});
  auto prog = parse_program("0. next\n1. next\n2. end\n", gp.frame_ptr());
  auto o = execute(prog, gp.instances()[0]);
  EXPECT_EQ(describe(o, gp.frame()), "inapplicable (next at line 1)");
}

}  // namespace
}  // namespace gpsyn
