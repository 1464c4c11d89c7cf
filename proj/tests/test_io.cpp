#include <gtest/gtest.h>

#include "gpsyn/io.hpp"
#include "support.hpp"

namespace gpsyn {
namespace {

TEST(Json, ProblemRoundTripIsExact) {
  for (const auto& d : domain_names()) {
    auto gp = make_problem({{d, 3, Label::Positive, std::nullopt}, {d, 2, Label::Negative, std::nullopt}});
    const auto text = problem_to_json(gp).dump(2);
    auto back = parse_problem(text);
    EXPECT_EQ(back.frame(), gp.frame()) << d;
    EXPECT_EQ(back.frame().declared_conditions(), gp.frame().declared_conditions());
    ASSERT_EQ(back.size(), gp.size());
    for (std::size_t t = 0; t < gp.size(); ++t) {
      EXPECT_EQ(back.instances()[t].init, gp.instances()[t].init);
      EXPECT_EQ(back.instances()[t].goal, gp.instances()[t].goal);
      EXPECT_EQ(back.instances()[t].label, gp.instances()[t].label);
      EXPECT_EQ(back.instances()[t].name, gp.instances()[t].name);
    }
    EXPECT_EQ(problem_to_json(back).dump(2), text);
  }
}

TEST(Json, MinimalProblemDefaults) {
  auto gp = parse_problem(R"({"frame": {"fluents": ["x"], "actions": [
      {"name": "set", "effects": [{"then": ["x"]}]}]},
      "instances": [{"name": "p", "init": [], "goal": ["x"]}]})");
  EXPECT_EQ(gp.num_positive(), 1U);
  EXPECT_TRUE(gp.frame().action(0).pre.empty());
  EXPECT_EQ(gp.frame().condition_fluents().size(), 1U);
}

TEST(Json, ParseErrors) {
  for (const char* bad : {
           "not json",
           "{}",
           R"({"frame": {"fluents": ["x"], "actions": []}, "instances": [{"init": ["y"], "goal": []}]})",
           R"({"frame": {"fluents": ["x", "x"], "actions": []}, "instances": []})",
           R"({"frame": {"fluents": ["x"], "actions": [{"name": "a", "pre": ["-z"]}]}, "instances": []})",
           R"({"frame": {"fluents": ["x"], "actions": []}, "instances": [{"init": [], "goal": [], "label": "maybe"}]})",
           R"({"frame": {"fluents": ["x"], "conditions": ["q"], "actions": []}, "instances": []})",
           R"({"frame": {"fluents": 3, "actions": []}, "instances": []})",
       }) {
    EXPECT_THROW(parse_problem(bad), ParseError) << bad;
  }
  EXPECT_THROW(load_problem("/nonexistent/problem.json"), ParseError);
}

TEST(Pddl, SingleFluentRoundTrip) {
  auto f = std::make_shared<Frame>();
  f->add_fluent("lit");
  f->add_action({"switch_on", LiteralSet{neg(0)}, {{{}, LiteralSet{pos(0)}}}});
  ClassicalInstance p{f, State(1), LiteralSet{pos(0)}, Label::Negative, "one"};
  const auto dom = to_pddl_domain(*f);
  const auto prob = to_pddl_problem(p);
  auto f2 = parse_pddl_domain(dom);
  EXPECT_EQ(*f2, *f);
  auto p2 = parse_pddl_problem(prob, f2);
  EXPECT_EQ(p2.init, p.init);
  EXPECT_EQ(p2.goal, p.goal);
  EXPECT_EQ(p2.label, Label::Negative);
  EXPECT_EQ(p2.name, "one");
  EXPECT_EQ(to_pddl_domain(*f2), dom);
  EXPECT_EQ(to_pddl_problem(p2), prob);
}

TEST(Pddl, DomainFramesRoundTrip) {
  for (const auto& d : domain_names()) {
    auto f = make_frame(d, 3);
    auto back = parse_pddl_domain(to_pddl_domain(*f, d));
    EXPECT_EQ(*back, *f) << d;
    EXPECT_EQ(back->declared_conditions(), f->declared_conditions()) << d;
  }
}

TEST(Pddl, CompiledTaskKeepsStructure) {
  auto gp = testing::corridor_problem();
  auto ci = compile_synthesis_pn(gp, 4);
  auto inst = ci.as_instance();
  auto f2 = parse_pddl_domain(to_pddl_domain(*ci.frame, "pn"));
  auto p2 = parse_pddl_problem(to_pddl_problem(inst, "pn"), f2);
  ASSERT_EQ(f2->num_actions(), ci.frame->num_actions());
  for (ActionId a = 0; a < f2->num_actions(); ++a) EXPECT_EQ(f2->action(a).name, ci.frame->action(a).name);
  EXPECT_EQ(*f2, *ci.frame);
  // Same reachable state space: a blind BFS explores the same number of states.
  SearchConfig c;
  c.strategy = Strategy::BFS;
  c.heuristic = Heuristic::Blind;
  auto r1 = solve(inst, c);
  auto r2 = solve(p2, c);
  EXPECT_EQ(r1.solved(), r2.solved());
  EXPECT_EQ(r1.stats.stored, r2.stats.stored);
  // Roles survive the trip through names.
  for (ActionId a = 0; a < f2->num_actions(); ++a) {
    auto r = role_from_name(f2->action(a).name, ci);
    ASSERT_TRUE(r);
    EXPECT_EQ(*r, ci.roles[a]);
  }
}

TEST(Pddl, RejectsUnsupported) {
  EXPECT_THROW(parse_pddl_domain("(define (domain d) (:predicates (at ?x)))"), ParseError);
  EXPECT_THROW(parse_pddl_domain("(define (domain d) (:predicates (p)) (:action a :parameters (?x) :effect (p)))"),
               ParseError);
  EXPECT_THROW(parse_pddl_domain("(define (domain d) (:predicates (p)) (:action a :duration 3 :effect (p)))"),
               ParseError);
  EXPECT_THROW(parse_pddl_domain("(define (domain d) (:predicates (p)"), ParseError);
  auto f = parse_pddl_domain("(define (domain d) (:predicates (p)) (:action a :effect (and (p))))");
  EXPECT_EQ(f->num_actions(), 1U);
  EXPECT_THROW(parse_pddl_problem("(define (problem q) (:domain d) (:init (not (p))) (:goal (p)))", f), ParseError);
  EXPECT_THROW(parse_pddl_problem("(define (problem q) (:domain d) (:init (r)) (:goal (p)))", f), ParseError);
  EXPECT_THROW(parse_pddl_problem("(define (problem q) (:domain d) (:init))", f), ParseError);
}

TEST(Pddl, NamesMustBePddlSafe) {
  auto f = std::make_shared<Frame>();
  f->add_fluent("Bad Name");
  EXPECT_THROW(to_pddl_domain(*f), ModelError);
  auto g = std::make_shared<Frame>();
  g->add_fluent("ok");
  EXPECT_THROW(to_pddl_domain(*g, "9lives"), ModelError);
}

}  // namespace
}  // namespace gpsyn
