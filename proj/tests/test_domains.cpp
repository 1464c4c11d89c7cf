#include <gtest/gtest.h>

#include "gpsyn/domains.hpp"
#include "gpsyn/interpreter.hpp"
#include "gpsyn/planner.hpp"
#include "support.hpp"

namespace gpsyn {
namespace {

struct Intended {
  std::string domain;
  std::string program;
  std::size_t min_negative = 1;
  bool even_only = false;  // positives solved only for even sizes (and 1)
};

const std::vector<Intended>& intended() {
  static const std::vector<Intended> v{
      {"robopainter", testing::kProgramPiPlus, 1, true},
      {"gripper", "0. pick_left\n1. move\n2. drop_left\n3. move\n4. goto(0,!a_empty)\n5. end\n"},
      {"fibonacci", "0. assign_d_c\n1. assign_c_a\n2. add_a_d\n3. dec_b\n4. goto(0,!b_eq_0)\n5. end\n"},
      {"trisum", "0. add_a_b\n1. dec_b\n2. goto(0,!b_eq_0)\n3. end\n"},
      {"list", "0. visit\n1. next\n2. goto(0,!at_null)\n3. end\n"},
      {"greenblock", "0. unstack\n1. goto(4,!holding_green)\n2. collect\n3. end\n4. drop\n5. goto(0,!holding_green)\n6. end\n",
       2},
  };
  return v;
}

TEST(Domains, NamesAreComplete) {
  EXPECT_EQ(domain_names().size(), 6U);
  for (const auto& d : intended()) {
    EXPECT_NE(std::find(domain_names().begin(), domain_names().end(), d.domain), domain_names().end());
  }
  EXPECT_THROW(make_frame("sokoban", 3), ModelError);
}

TEST(Domains, IntendedProgramsSeparateLabels) {
  constexpr std::size_t kMax = 8;
  for (const auto& d : intended()) {
    auto frame = make_frame(d.domain, kMax);
    auto prog = parse_program(d.program, frame);
    for (std::size_t n = 1; n <= kMax; ++n) {
      auto p = generate({d.domain, n, Label::Positive, std::nullopt, n}, frame);
      EXPECT_EQ(execute(prog, p).solved, !d.even_only || n % 2 == 0 || n == 1) << p.name;
      if (d.domain == "greenblock") {
        for (std::size_t g = 1; g <= n; ++g) {
          EXPECT_TRUE(execute(prog, generate({d.domain, n, Label::Positive, std::nullopt, g}, frame)).solved);
        }
      }
      if (n >= d.min_negative) {
        auto q = generate({d.domain, n, Label::Negative, std::nullopt, 1}, frame);
        EXPECT_FALSE(execute(prog, q).solved) << q.name;
      }
    }
  }
}

TEST(Domains, GoalsAreReachable) {
  for (const auto& d : intended()) {
    for (std::size_t n = 1; n <= 4; ++n) {
      for (auto label : {Label::Positive, Label::Negative}) {
        if (label == Label::Negative && n < d.min_negative) continue;
        if (d.domain == "robopainter" && label == Label::Positive && n % 2 == 1 && n > 1) continue;
        auto p = generate({d.domain, n, label, std::nullopt, 1});
        EXPECT_TRUE(check_reachable(p, 1'000'000).solved()) << p.name;
      }
    }
  }
}

TEST(Domains, Naming) {
  EXPECT_EQ(generate({"trisum", 3, Label::Negative, std::nullopt, 1}).name, "trisum-3-negative");
  EXPECT_EQ(generate({"greenblock", 4, Label::Positive, std::nullopt, 2}).name, "greenblock-4g2-positive");
}

TEST(Domains, CapacityAndArguments) {
  auto f = make_frame("list", 3);
  EXPECT_THROW(generate({"list", 4, Label::Positive, std::nullopt, 1}, f), ModelError);
  EXPECT_THROW(generate({"greenblock", 3, Label::Positive, std::nullopt, 5}), ModelError);
  EXPECT_THROW(generate({"greenblock", 1, Label::Negative, std::nullopt, 1}), ModelError);
  EXPECT_THROW(make_problem({}), ModelError);
  EXPECT_THROW(make_problem({{"list", 2, Label::Positive, std::nullopt}, {"trisum", 2, Label::Positive, std::nullopt}}),
               ModelError);
}

TEST(Domains, SharedFrameAtMaximumSize) {
  auto gp = make_problem({{"trisum", 2, Label::Positive, std::nullopt}, {"trisum", 5, Label::Negative, std::nullopt}});
  EXPECT_TRUE(gp.frame().find_fluent("a_eq_15"));
  EXPECT_FALSE(gp.frame().find_fluent("a_eq_16"));
  EXPECT_EQ(gp.instances()[0].frame.get(), gp.instances()[1].frame.get());
}

TEST(Domains, GoalOverride) {
  auto p = generate({"trisum", 2, Label::Positive, std::vector<std::string>{"a_eq_1", "-b_eq_0"}, 1});
  EXPECT_EQ(p.goal, (LiteralSet{pos(p.frame->fluent("a_eq_1")), neg(p.frame->fluent("b_eq_0"))}));
  EXPECT_THROW(generate({"trisum", 2, Label::Positive, std::vector<std::string>{"nope"}, 1}), ModelError);
}

TEST(Domains, FigureOneInstance) {
  // 2×1 corridor: robot on cell 1, goal paints cell 1 and ends on cell 2.
  auto p = generate({"robopainter", 2, Label::Positive, std::nullopt, 1});
  const auto& f = *p.frame;
  EXPECT_TRUE(p.init.get(f.fluent("at_1")));
  EXPECT_EQ(p.init.count_true(), 2U);  // at_1, last_2
  EXPECT_TRUE(p.goal.contains(pos(f.fluent("painted_1"))));
  EXPECT_TRUE(p.goal.contains(pos(f.fluent("at_2"))));
}

}  // namespace
}  // namespace gpsyn
