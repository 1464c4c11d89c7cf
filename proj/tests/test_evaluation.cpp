#include <gtest/gtest.h>

#include <random>

#include "gpsyn/evaluation.hpp"
#include "support.hpp"

namespace gpsyn {
namespace {

TEST(Rational, Normalizes) {
  EXPECT_EQ(Rational(6, 8), Rational(3, 4));
  EXPECT_EQ(Rational(3, -6).str(), "-1/2");
  EXPECT_EQ(Rational(4, 2).str(), "2");
  EXPECT_EQ(Rational(0, 5), Rational(0, 1));
  EXPECT_THROW(Rational(1, 0), ModelError);
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
}

TEST(Rational, PercentRoundsHalfUp) {
  EXPECT_EQ(Rational(3, 4).percent(), "75.00");
  EXPECT_EQ(Rational(2, 3).percent(), "66.67");
  EXPECT_EQ(Rational(1, 3).percent(), "33.33");
  EXPECT_EQ(Rational(1, 1).percent(), "100.00");
  EXPECT_EQ(Rational(0, 7).percent(), "0.00");
  EXPECT_EQ(Rational(1, 8).percent(), "12.50");
  EXPECT_EQ(Rational(1, 80000).percent(), "0.00");
  EXPECT_EQ(Rational(1, 20000).percent(), "0.01");  // exactly half a hundredth rounds up
}

TEST(Metrics, WorkedCounts) {
  auto m = compute_metrics({3, 3, 1, 1});
  EXPECT_EQ(*m.precision, Rational(3, 4));
  EXPECT_EQ(*m.recall, Rational(3, 4));
  EXPECT_EQ(*m.accuracy, Rational(3, 4));
  auto u = compute_metrics({0, 2, 0, 0});
  EXPECT_FALSE(u.precision);
  EXPECT_FALSE(u.recall);
  EXPECT_EQ(*u.accuracy, Rational(1));
  EXPECT_EQ(render_rate(u.precision), "-");
  auto e = compute_metrics({});
  EXPECT_FALSE(e.accuracy);
  EXPECT_THROW(compute_metrics({-1, 0, 0, 0}), ModelError);
}

TEST(Metrics, ClassifyOutcomes) {
  ExecutionOutcome ok;
  ok.solved = true;
  ExecutionOutcome bad;
  EXPECT_EQ(classify(ok, Label::Positive), Outcome::TP);
  EXPECT_EQ(classify(ok, Label::Negative), Outcome::FP);
  EXPECT_EQ(classify(bad, Label::Negative), Outcome::TN);
  EXPECT_EQ(classify(bad, Label::Positive), Outcome::FN);
}

TEST(Evaluation, FigureOnePrograms) {
  auto gp = testing::corridor_problem();
  auto plus = evaluate_test_set(parse_program(testing::kProgramPiPlus, gp.frame_ptr()), gp);
  EXPECT_EQ(plus.counts, (ConfusionCounts{2, 1, 0, 0}));
  EXPECT_EQ(*plus.metrics.accuracy, Rational(1));
  auto end = evaluate_test_set(parse_program("0. end\n", gp.frame_ptr()), gp);
  // "end" leaves the 1×1 corridor unpainted, which is the negative's goal: an FP.
  EXPECT_EQ(end.counts, (ConfusionCounts{0, 0, 1, 2}));
  EXPECT_EQ(*end.metrics.accuracy, Rational(0));
  EXPECT_EQ(*end.metrics.precision, Rational(0));
  // Without the negative nothing is predicted positive: precision is undefined.
  auto positives = make_problem({{"robopainter", 2, Label::Positive, std::nullopt}});
  auto none = evaluate_test_set(parse_program("0. end\n", positives.frame_ptr()), positives);
  EXPECT_FALSE(none.metrics.precision);
  EXPECT_EQ(render_rate(none.metrics.precision), "-");
  auto pi = evaluate_test_set(parse_program(testing::kProgramPi, gp.frame_ptr()), gp);
  EXPECT_EQ(render_rate(pi.metrics.precision), "100.00");
  EXPECT_EQ(render_rate(pi.metrics.recall), "50.00");
  EXPECT_EQ(render_rate(pi.metrics.accuracy), "66.67");
  ASSERT_EQ(pi.instances.size(), 3U);
  EXPECT_EQ(pi.instances[1].result, Outcome::FN);
}

TEST(Evaluation, EndOnBalancedSetIsHalf) {
  auto gp = make_problem({{"list", 2, Label::Positive, std::nullopt}, {"list", 3, Label::Negative, std::nullopt}});
  auto ev = evaluate_test_set(parse_program("0. end\n", gp.frame_ptr()), gp);
  EXPECT_EQ(*ev.metrics.accuracy, Rational(1, 2));
}

TEST(Evaluation, RandomRoboPainterSet) {
  std::mt19937_64 rng(11);
  std::vector<DomainSpec> specs;
  for (int i = 0; i < 20; ++i) {
    auto n = draw(rng, 1, 10);
    // Even sizes are positives; odd sizes ask for an unpainted corridor.
    specs.push_back({"robopainter", n, n % 2 == 0 ? Label::Positive : Label::Negative, std::nullopt});
  }
  auto gp = make_problem(specs);
  auto ev = evaluate_test_set(parse_program(testing::kProgramPiPlus, gp.frame_ptr()), gp);
  EXPECT_EQ(ev.counts.total(), 20);
  EXPECT_EQ(*ev.metrics.accuracy, Rational(1));
}

TEST(Metrics, AccuracyMonotoneInCorrectCounts) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    ConfusionCounts c{static_cast<std::int64_t>(draw(rng, 0, 9)), static_cast<std::int64_t>(draw(rng, 0, 9)),
                      static_cast<std::int64_t>(draw(rng, 0, 9)), static_cast<std::int64_t>(draw(rng, 1, 9))};
    auto before = compute_metrics(c);
    // Turning a false negative into a true positive never lowers a rate.
    --c.n_minus;
    ++c.p;
    auto after = compute_metrics(c);
    EXPECT_GE(*after.accuracy, *before.accuracy);
    EXPECT_GE(*after.recall, *before.recall);
  }
}

}  // namespace
}  // namespace gpsyn
