#pragma once

// Parameterized generators for the benchmark families. Every family builds a
// frame for a capacity (largest size it must hold); instances of smaller sizes
// fit in the same frame, and action / condition-fluent names do not depend on
// the capacity, so one program text binds against every size.
//
// Numbers are unary: value fluents <var>_eq_<v> over a bounded range.

#include <numeric>

#include "gpsyn/core.hpp"

namespace gpsyn {

struct DomainSpec {
  std::string domain;
  std::size_t size = 1;
  Label label = Label::Positive;
  // Goal literals as "name" / "-name"; replaces the default goal for the label.
  std::optional<std::vector<std::string>> goal_override;
  std::size_t green_pos = 1;  // greenblock only, 1 = bottom
};

inline const std::vector<std::string>& domain_names() {
  static const std::vector<std::string> names{"robopainter", "gripper", "fibonacci",
                                              "trisum",      "list",    "greenblock"};
  return names;
}

namespace detail {

inline std::string idx(std::string_view prefix, std::size_t i) { return std::string(prefix) + std::to_string(i); }

inline LiteralSet parse_goal(const Frame& frame, const std::vector<std::string>& lits) {
  LiteralSet out;
  for (const auto& raw : lits) {
    const bool negative = raw.starts_with("-");
    out.insert({frame.fluent(negative ? std::string_view(raw).substr(1) : std::string_view(raw)), !negative});
  }
  return out;
}

inline std::size_t fib(std::size_t k) {
  std::size_t a = 0, b = 1;
  for (std::size_t i = 0; i < k; ++i) {
    auto c = a + b;
    a = b;
    b = c;
  }
  return a;
}

inline std::size_t tri(std::size_t n) { return n * (n + 1) / 2; }

// x := x + y over unary ranges; sums beyond the range raise `overflow`.
inline Action add_action(const Frame& f, std::string name, std::string_view x, std::string_view y,
                         std::size_t x_cap, std::size_t y_cap) {
  Action a{std::move(name), {}, {}};
  const auto ovf = f.fluent("overflow");
  for (std::size_t u = 0; u <= x_cap; ++u) {
    for (std::size_t v = 1; v <= y_cap; ++v) {
      LiteralSet cond{pos(f.fluent(idx(std::string(x) + "_eq_", u))), pos(f.fluent(idx(std::string(y) + "_eq_", v)))};
      if (u + v <= x_cap) {
        a.effects.push_back({cond, LiteralSet{neg(f.fluent(idx(std::string(x) + "_eq_", u))),
                                              pos(f.fluent(idx(std::string(x) + "_eq_", u + v)))}});
      } else {
        a.effects.push_back({cond, LiteralSet{pos(ovf)}});
      }
    }
  }
  return a;
}

// x := y
inline Action assign_action(const Frame& f, std::string name, std::string_view x, std::string_view y,
                            std::size_t cap) {
  Action a{std::move(name), {}, {}};
  for (std::size_t v = 0; v <= cap; ++v) {
    LiteralSet eff;
    for (std::size_t u = 0; u <= cap; ++u) eff.insert({f.fluent(idx(std::string(x) + "_eq_", u)), u == v});
    a.effects.push_back({LiteralSet{pos(f.fluent(idx(std::string(y) + "_eq_", v)))}, std::move(eff)});
  }
  return a;
}

inline Action dec_action(const Frame& f, std::string name, std::string_view x, std::size_t cap) {
  Action a{std::move(name), LiteralSet{neg(f.fluent(std::string(x) + "_eq_0"))}, {}};
  for (std::size_t v = 1; v <= cap; ++v) {
    a.effects.push_back({LiteralSet{pos(f.fluent(idx(std::string(x) + "_eq_", v)))},
                         LiteralSet{neg(f.fluent(idx(std::string(x) + "_eq_", v))),
                                    pos(f.fluent(idx(std::string(x) + "_eq_", v - 1)))}});
  }
  return a;
}

inline Action inc_action(const Frame& f, std::string name, std::string_view x, std::size_t cap) {
  Action a{std::move(name), {}, {}};
  for (std::size_t v = 0; v < cap; ++v) {
    a.effects.push_back({LiteralSet{pos(f.fluent(idx(std::string(x) + "_eq_", v)))},
                         LiteralSet{neg(f.fluent(idx(std::string(x) + "_eq_", v))),
                                    pos(f.fluent(idx(std::string(x) + "_eq_", v + 1)))}});
  }
  a.effects.push_back({LiteralSet{pos(f.fluent(idx(std::string(x) + "_eq_", cap)))},
                       LiteralSet{pos(f.fluent("overflow"))}});
  return a;
}

inline void add_counter(Frame& f, std::string_view var, std::size_t cap) {
  for (std::size_t v = 0; v <= cap; ++v) f.add_fluent(idx(std::string(var) + "_eq_", v));
}

inline void set_counter(const Frame& f, State& s, std::string_view var, std::size_t value) {
  s.set(f.fluent(idx(std::string(var) + "_eq_", value)), true);
}

inline void require_size(std::size_t size, std::size_t capacity, std::string_view domain) {
  if (size < 1) throw ModelError(std::string(domain) + ": size must be at least 1");
  if (size > capacity) {
    throw ModelError(std::string(domain) + ": size " + std::to_string(size) + " exceeds frame capacity " +
                     std::to_string(capacity));
  }
}

}  // namespace detail

// ---------------------------------------------------------------- robopainter
//
// Corridor of cells 1..N, robot starts on cell 1. paint marks the current
// cell; inc moves right and does nothing on the rightmost cell (marked by the
// static last_<N>). at_end tracks whether the robot stands on the last cell.

inline FramePtr robopainter_frame(std::size_t capacity) {
  using detail::idx;
  auto f = std::make_shared<Frame>();
  for (std::size_t x = 1; x <= capacity; ++x) f->add_fluent(idx("at_", x));
  for (std::size_t x = 1; x <= capacity; ++x) f->add_fluent(idx("painted_", x));
  for (std::size_t x = 1; x <= capacity; ++x) f->add_fluent(idx("last_", x));
  const auto at_end = f->add_fluent("at_end");

  Action paint{"paint", {}, {}};
  for (std::size_t x = 1; x <= capacity; ++x) {
    paint.effects.push_back({LiteralSet{pos(f->fluent(idx("at_", x)))}, LiteralSet{pos(f->fluent(idx("painted_", x)))}});
  }
  f->add_action(std::move(paint));

  Action inc{"inc", {}, {}};
  for (std::size_t x = 1; x < capacity; ++x) {
    const auto at = f->fluent(idx("at_", x));
    const auto last = f->fluent(idx("last_", x));
    inc.effects.push_back({LiteralSet{pos(at), neg(last)}, LiteralSet{neg(at), pos(f->fluent(idx("at_", x + 1)))}});
    inc.effects.push_back({LiteralSet{pos(at), neg(last), pos(f->fluent(idx("last_", x + 1)))}, LiteralSet{pos(at_end)}});
  }
  f->add_action(std::move(inc));
  f->set_conditions({at_end});
  return f;
}

inline ClassicalInstance gen_robopainter(std::size_t n, Label label,
                                         const std::optional<std::vector<std::string>>& goal_override = {},
                                         FramePtr frame = nullptr) {
  using detail::idx;
  if (!frame) frame = robopainter_frame(n);
  const auto capacity = static_cast<std::size_t>(std::count_if(
      frame->fluent_names().begin(), frame->fluent_names().end(), [](const auto& s) { return s.starts_with("last_"); }));
  detail::require_size(n, capacity, "robopainter");
  ClassicalInstance p{frame, State(frame->num_fluents()), {}, label,
                      "robopainter-" + std::to_string(n) + "-" + std::string(to_string(label))};
  p.init.set(frame->fluent("at_1"), true);
  p.init.set(frame->fluent(idx("last_", n)), true);
  if (n == 1) p.init.set(frame->fluent("at_end"), true);
  if (goal_override) {
    p.goal = detail::parse_goal(*frame, *goal_override);
  } else if (label == Label::Positive) {
    for (std::size_t x = 1; x <= n; x += 2) p.goal.insert(pos(frame->fluent(idx("painted_", x))));
    p.goal.insert(pos(frame->fluent(idx("at_", n))));
  } else {
    // Robot stays on the first cell and nothing gets painted.
    p.goal.insert(pos(frame->fluent("at_1")));
    for (std::size_t x = 1; x <= n; ++x) p.goal.insert(neg(frame->fluent(idx("painted_", x))));
  }
  return p;
}

// -------------------------------------------------------------------- gripper
//
// Balls start in room A; hands pick the lowest-numbered ball of the current
// room. a_empty holds once no ball is left in room A.

inline FramePtr gripper_frame(std::size_t capacity) {
  using detail::idx;
  auto f = std::make_shared<Frame>();
  const auto at_a = f->add_fluent("at_a");
  const auto at_b = f->add_fluent("at_b");
  for (std::size_t i = 1; i <= capacity; ++i) f->add_fluent(idx("in_a_", i));
  for (std::size_t i = 1; i <= capacity; ++i) f->add_fluent(idx("in_b_", i));
  for (std::size_t i = 1; i <= capacity; ++i) f->add_fluent(idx("left_", i));
  for (std::size_t i = 1; i <= capacity; ++i) f->add_fluent(idx("right_", i));
  const auto free_left = f->add_fluent("free_left");
  const auto free_right = f->add_fluent("free_right");
  const auto a_empty = f->add_fluent("a_empty");

  for (std::string hand : {"left", "right"}) {
    const auto free = hand == "left" ? free_left : free_right;
    Action pick{"pick_" + hand, LiteralSet{pos(free)}, {}};
    for (std::string room : {"a", "b"}) {
      const auto at = room == "a" ? at_a : at_b;
      for (std::size_t i = 1; i <= capacity; ++i) {
        const auto in = f->fluent(idx("in_" + room + "_", i));
        LiteralSet cond{pos(at), pos(in)};
        for (std::size_t j = 1; j < i; ++j) cond.insert(neg(f->fluent(idx("in_" + room + "_", j))));
        pick.effects.push_back({cond, LiteralSet{neg(in), pos(f->fluent(idx(hand + "_", i))), neg(free)}});
        if (room == "a") {
          LiteralSet only{pos(at), pos(in)};
          for (std::size_t j = 1; j <= capacity; ++j) {
            if (j != i) only.insert(neg(f->fluent(idx("in_a_", j))));
          }
          pick.effects.push_back({only, LiteralSet{pos(a_empty)}});
        }
      }
    }
    f->add_action(std::move(pick));

    Action drop{"drop_" + hand, LiteralSet{neg(free)}, {}};
    for (std::size_t i = 1; i <= capacity; ++i) {
      const auto held = f->fluent(idx(hand + "_", i));
      drop.effects.push_back({LiteralSet{pos(held), pos(at_a)},
                              LiteralSet{neg(held), pos(f->fluent(idx("in_a_", i))), pos(free), neg(a_empty)}});
      drop.effects.push_back(
          {LiteralSet{pos(held), pos(at_b)}, LiteralSet{neg(held), pos(f->fluent(idx("in_b_", i))), pos(free)}});
    }
    f->add_action(std::move(drop));
  }

  Action move{"move", {}, {}};
  move.effects.push_back({LiteralSet{pos(at_a)}, LiteralSet{neg(at_a), pos(at_b)}});
  move.effects.push_back({LiteralSet{pos(at_b)}, LiteralSet{neg(at_b), pos(at_a)}});
  f->add_action(std::move(move));
  f->set_conditions({a_empty});
  return f;
}

inline ClassicalInstance gen_gripper(std::size_t balls, Label label,
                                     const std::optional<std::vector<std::string>>& goal_override = {},
                                     FramePtr frame = nullptr) {
  using detail::idx;
  if (!frame) frame = gripper_frame(balls);
  const auto capacity = static_cast<std::size_t>(std::count_if(
      frame->fluent_names().begin(), frame->fluent_names().end(), [](const auto& s) { return s.starts_with("in_a_"); }));
  detail::require_size(balls, capacity, "gripper");
  ClassicalInstance p{frame, State(frame->num_fluents()), {}, label,
                      "gripper-" + std::to_string(balls) + "-" + std::string(to_string(label))};
  p.init.set(frame->fluent("at_a"), true);
  p.init.set(frame->fluent("free_left"), true);
  p.init.set(frame->fluent("free_right"), true);
  for (std::size_t i = 1; i <= balls; ++i) p.init.set(frame->fluent(idx("in_a_", i)), true);
  if (goal_override) {
    p.goal = detail::parse_goal(*frame, *goal_override);
  } else if (label == Label::Positive) {
    for (std::size_t i = 1; i <= balls; ++i) p.goal.insert(pos(frame->fluent(idx("in_b_", i))));
  } else {
    // The last ball is left behind in room A.
    for (std::size_t i = 1; i < balls; ++i) p.goal.insert(pos(frame->fluent(idx("in_b_", i))));
    p.goal.insert(pos(frame->fluent(idx("in_a_", balls))));
  }
  return p;
}

// ------------------------------------------------------------------ fibonacci
//
// A, B, C, D hold F_n, n, F_{n-1}, F_{n-2}. Starting from A = 0, C = 1,
// B = k, repeating D := C; C := A; A := A + D; B -= 1 until B = 0 leaves F_k in A.

inline FramePtr fibonacci_frame(std::size_t capacity) {
  const auto vcap = std::max<std::size_t>(detail::fib(capacity), 1);
  auto f = std::make_shared<Frame>();
  detail::add_counter(*f, "a", vcap);
  detail::add_counter(*f, "b", capacity);
  detail::add_counter(*f, "c", vcap);
  detail::add_counter(*f, "d", vcap);
  f->add_fluent("overflow");
  for (auto [x, y] : std::vector<std::pair<std::string, std::string>>{
           {"a", "c"}, {"a", "d"}, {"c", "a"}, {"c", "d"}, {"d", "a"}, {"d", "c"}}) {
    f->add_action(detail::assign_action(*f, "assign_" + x + "_" + y, x, y, vcap));
  }
  f->add_action(detail::add_action(*f, "add_a_c", "a", "c", vcap, vcap));
  f->add_action(detail::add_action(*f, "add_a_d", "a", "d", vcap, vcap));
  f->add_action(detail::dec_action(*f, "dec_b", "b", capacity));
  f->set_conditions({f->fluent("a_eq_0"), f->fluent("b_eq_0"), f->fluent("c_eq_0"), f->fluent("d_eq_0")});
  return f;
}

inline ClassicalInstance gen_fibonacci(std::size_t k, Label label,
                                       const std::optional<std::vector<std::string>>& goal_override = {},
                                       FramePtr frame = nullptr) {
  if (!frame) frame = fibonacci_frame(k);
  std::size_t capacity = 0;
  while (frame->find_fluent(detail::idx("b_eq_", capacity + 1))) ++capacity;
  detail::require_size(k, capacity, "fibonacci");
  ClassicalInstance p{frame, State(frame->num_fluents()), {}, label,
                      "fibonacci-" + std::to_string(k) + "-" + std::string(to_string(label))};
  detail::set_counter(*frame, p.init, "a", 0);
  detail::set_counter(*frame, p.init, "b", k);
  detail::set_counter(*frame, p.init, "c", 1);
  detail::set_counter(*frame, p.init, "d", 0);
  if (goal_override) {
    p.goal = detail::parse_goal(*frame, *goal_override);
  } else {
    const auto target = label == Label::Positive ? detail::fib(k) : detail::fib(k) - 1;
    p.goal = LiteralSet{pos(frame->fluent(detail::idx("a_eq_", target))), neg(frame->fluent("overflow"))};
  }
  return p;
}

// --------------------------------------------------------------------- trisum
//
// y = 1 + 2 + ... + N, computed in A with B counting down from N.

inline FramePtr trisum_frame(std::size_t capacity) {
  const auto acap = detail::tri(capacity);
  auto f = std::make_shared<Frame>();
  detail::add_counter(*f, "a", acap);
  detail::add_counter(*f, "b", capacity);
  f->add_fluent("overflow");
  f->add_action(detail::add_action(*f, "add_a_b", "a", "b", acap, capacity));
  f->add_action(detail::dec_action(*f, "dec_b", "b", capacity));
  f->add_action(detail::inc_action(*f, "inc_a", "a", acap));
  f->set_conditions({f->fluent("a_eq_0"), f->fluent("b_eq_0")});
  return f;
}

inline ClassicalInstance gen_trisum(std::size_t n, Label label,
                                    const std::optional<std::vector<std::string>>& goal_override = {},
                                    FramePtr frame = nullptr) {
  if (!frame) frame = trisum_frame(n);
  std::size_t capacity = 0;
  while (frame->find_fluent(detail::idx("b_eq_", capacity + 1))) ++capacity;
  detail::require_size(n, capacity, "trisum");
  ClassicalInstance p{frame, State(frame->num_fluents()), {}, label,
                      "trisum-" + std::to_string(n) + "-" + std::string(to_string(label))};
  detail::set_counter(*frame, p.init, "a", 0);
  detail::set_counter(*frame, p.init, "b", n);
  if (goal_override) {
    p.goal = detail::parse_goal(*frame, *goal_override);
  } else {
    const auto target = label == Label::Positive ? detail::tri(n) : detail::tri(n) - 1;
    p.goal = LiteralSet{pos(frame->fluent(detail::idx("a_eq_", target))), neg(frame->fluent("overflow"))};
  }
  return p;
}

// ----------------------------------------------------------------------- list
//
// Singly linked list of nodes 1..len; the cursor starts on the head and next
// from the tail moves it to null.

inline FramePtr list_frame(std::size_t capacity) {
  using detail::idx;
  auto f = std::make_shared<Frame>();
  for (std::size_t i = 1; i <= capacity; ++i) f->add_fluent(idx("at_", i));
  const auto at_null = f->add_fluent("at_null");
  for (std::size_t i = 1; i <= capacity; ++i) f->add_fluent(idx("visited_", i));
  for (std::size_t i = 1; i <= capacity; ++i) f->add_fluent(idx("tail_", i));

  Action visit{"visit", LiteralSet{neg(at_null)}, {}};
  Action next{"next", LiteralSet{neg(at_null)}, {}};
  for (std::size_t i = 1; i <= capacity; ++i) {
    const auto at = f->fluent(idx("at_", i));
    const auto tail = f->fluent(idx("tail_", i));
    visit.effects.push_back({LiteralSet{pos(at)}, LiteralSet{pos(f->fluent(idx("visited_", i)))}});
    next.effects.push_back({LiteralSet{pos(at), pos(tail)}, LiteralSet{neg(at), pos(at_null)}});
    if (i < capacity) {
      next.effects.push_back({LiteralSet{pos(at), neg(tail)}, LiteralSet{neg(at), pos(f->fluent(idx("at_", i + 1)))}});
    }
  }
  f->add_action(std::move(visit));
  f->add_action(std::move(next));
  f->set_conditions({at_null});
  return f;
}

inline ClassicalInstance gen_list(std::size_t len, Label label,
                                  const std::optional<std::vector<std::string>>& goal_override = {},
                                  FramePtr frame = nullptr) {
  using detail::idx;
  if (!frame) frame = list_frame(len);
  const auto capacity = static_cast<std::size_t>(std::count_if(
      frame->fluent_names().begin(), frame->fluent_names().end(), [](const auto& s) { return s.starts_with("tail_"); }));
  detail::require_size(len, capacity, "list");
  ClassicalInstance p{frame, State(frame->num_fluents()), {}, label,
                      "list-" + std::to_string(len) + "-" + std::string(to_string(label))};
  p.init.set(frame->fluent("at_1"), true);
  p.init.set(frame->fluent(idx("tail_", len)), true);
  if (goal_override) {
    p.goal = detail::parse_goal(*frame, *goal_override);
  } else {
    // Negatives skip one node: an interior one when there is one.
    const std::size_t skipped = label == Label::Positive ? 0 : (len >= 3 ? 2 : len);
    for (std::size_t i = 1; i <= len; ++i) p.goal.insert({frame->fluent(idx("visited_", i)), i != skipped});
  }
  return p;
}

// ----------------------------------------------------------------- greenblock
//
// Tower of blocks 1..h (1 at the bottom) with exactly one green block. The
// top block can be unstacked into the hand; drop puts the held block on the
// table; collect takes the green block once it is held.

inline FramePtr greenblock_frame(std::size_t capacity) {
  using detail::idx;
  auto f = std::make_shared<Frame>();
  for (std::size_t i = 1; i <= capacity; ++i) f->add_fluent(idx("in_tower_", i));
  for (std::size_t i = 1; i <= capacity; ++i) f->add_fluent(idx("top_", i));
  for (std::size_t i = 1; i <= capacity; ++i) f->add_fluent(idx("holding_", i));
  for (std::size_t i = 1; i <= capacity; ++i) f->add_fluent(idx("on_table_", i));
  for (std::size_t i = 1; i <= capacity; ++i) f->add_fluent(idx("green_", i));
  const auto hand_empty = f->add_fluent("hand_empty");
  const auto holding_green = f->add_fluent("holding_green");
  const auto collected = f->add_fluent("collected");

  Action unstack{"unstack", LiteralSet{pos(hand_empty)}, {}};
  Action drop{"drop", {}, {}};
  Action collect{"collect", LiteralSet{pos(holding_green)}, {}};
  collect.effects.push_back({{}, LiteralSet{pos(collected), neg(holding_green), pos(hand_empty)}});
  for (std::size_t i = 1; i <= capacity; ++i) {
    const auto top = f->fluent(idx("top_", i));
    const auto held = f->fluent(idx("holding_", i));
    const auto green = f->fluent(idx("green_", i));
    LiteralSet e{neg(top), neg(f->fluent(idx("in_tower_", i))), pos(held), neg(hand_empty)};
    if (i > 1) e.insert(pos(f->fluent(idx("top_", i - 1))));
    unstack.effects.push_back({LiteralSet{pos(top)}, std::move(e)});
    unstack.effects.push_back({LiteralSet{pos(top), pos(green)}, LiteralSet{pos(holding_green)}});
    drop.effects.push_back(
        {LiteralSet{pos(held)}, LiteralSet{neg(held), pos(f->fluent(idx("on_table_", i))), pos(hand_empty)}});
    drop.effects.push_back({LiteralSet{pos(held), pos(green)}, LiteralSet{neg(holding_green)}});
    collect.effects.push_back({LiteralSet{pos(held)}, LiteralSet{neg(held)}});
  }
  f->add_action(std::move(unstack));
  f->add_action(std::move(drop));
  f->add_action(std::move(collect));
  f->set_conditions({holding_green, hand_empty});
  return f;
}

inline ClassicalInstance gen_greenblock(std::size_t height, std::size_t green_pos, Label label,
                                        const std::optional<std::vector<std::string>>& goal_override = {},
                                        FramePtr frame = nullptr) {
  using detail::idx;
  if (!frame) frame = greenblock_frame(height);
  const auto capacity = static_cast<std::size_t>(std::count_if(
      frame->fluent_names().begin(), frame->fluent_names().end(), [](const auto& s) { return s.starts_with("green_"); }));
  detail::require_size(height, capacity, "greenblock");
  if (green_pos < 1 || green_pos > height) throw ModelError("greenblock: green block outside the tower");
  ClassicalInstance p{frame, State(frame->num_fluents()), {}, label,
                      "greenblock-" + std::to_string(height) + "g" + std::to_string(green_pos) + "-" +
                          std::string(to_string(label))};
  for (std::size_t i = 1; i <= height; ++i) p.init.set(frame->fluent(idx("in_tower_", i)), true);
  p.init.set(frame->fluent(idx("top_", height)), true);
  p.init.set(frame->fluent(idx("green_", green_pos)), true);
  p.init.set(frame->fluent("hand_empty"), true);
  if (goal_override) {
    p.goal = detail::parse_goal(*frame, *goal_override);
  } else if (label == Label::Positive) {
    p.goal = LiteralSet{pos(frame->fluent("collected"))};
  } else {
    if (height < 2) throw ModelError("greenblock: a negative needs a non-green block");
    const std::size_t other = green_pos == height ? height - 1 : height;
    p.goal = LiteralSet{pos(frame->fluent(idx("holding_", other)))};
  }
  return p;
}

// ---------------------------------------------------------------- dispatching

inline FramePtr make_frame(std::string_view domain, std::size_t capacity) {
  if (domain == "robopainter") return robopainter_frame(capacity);
  if (domain == "gripper") return gripper_frame(capacity);
  if (domain == "fibonacci") return fibonacci_frame(capacity);
  if (domain == "trisum") return trisum_frame(capacity);
  if (domain == "list") return list_frame(capacity);
  if (domain == "greenblock") return greenblock_frame(capacity);
  throw ModelError("unknown domain '" + std::string(domain) + "'");
}

inline ClassicalInstance generate(const DomainSpec& spec, FramePtr frame = nullptr) {
  if (!frame) frame = make_frame(spec.domain, spec.size);
  const auto& d = spec.domain;
  if (d == "robopainter") return gen_robopainter(spec.size, spec.label, spec.goal_override, frame);
  if (d == "gripper") return gen_gripper(spec.size, spec.label, spec.goal_override, frame);
  if (d == "fibonacci") return gen_fibonacci(spec.size, spec.label, spec.goal_override, frame);
  if (d == "trisum") return gen_trisum(spec.size, spec.label, spec.goal_override, frame);
  if (d == "list") return gen_list(spec.size, spec.label, spec.goal_override, frame);
  if (d == "greenblock") return gen_greenblock(spec.size, spec.green_pos, spec.label, spec.goal_override, frame);
  throw ModelError("unknown domain '" + d + "'");
}

// One frame sized for the largest instance, shared by all of them.
inline GeneralizedProblem make_problem(const std::vector<DomainSpec>& specs) {
  if (specs.empty()) throw ModelError("no instances requested");
  std::size_t capacity = 0;
  for (const auto& s : specs) {
    if (s.domain != specs.front().domain) throw ModelError("instances from different domains");
    capacity = std::max(capacity, s.size);
  }
  auto frame = make_frame(specs.front().domain, capacity);
  GeneralizedProblem gp(frame, {});
  for (const auto& s : specs) gp.add(generate(s, frame));
  return gp;
}

}  // namespace gpsyn
