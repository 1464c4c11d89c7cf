#pragma once

// Desk-scale classical planner for ground instances with conditional effects
// and negative preconditions: greedy best-first search (h_add, goal count or
// blind) and breadth-first search, both with full-state duplicate detection.

#include <chrono>
#include <cstdint>
#include <deque>
#include <limits>
#include <queue>
#include <unordered_set>

#include "gpsyn/compiler.hpp"
#include "gpsyn/core.hpp"

namespace gpsyn {

class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Strategy { GBFS, BFS };
enum class Heuristic { HAdd, GoalCount, Blind };

struct SearchConfig {
  Strategy strategy = Strategy::GBFS;
  Heuristic heuristic = Heuristic::HAdd;
  std::optional<std::size_t> max_expansions;
  std::optional<double> max_seconds;
  std::optional<std::size_t> max_states;

  void validate() const {
    if (max_expansions && *max_expansions == 0) throw ConfigError("max_expansions must be positive");
    if (max_seconds && !(*max_seconds > 0)) throw ConfigError("max_seconds must be positive");
    if (max_states && *max_states == 0) throw ConfigError("max_states must be positive");
  }
};

struct SearchStats {
  std::size_t expansions = 0;
  std::size_t generated = 0;
  std::size_t evaluated = 0;
  std::size_t stored = 0;
  double elapsed_seconds = 0;
};

struct Plan {
  std::vector<ActionId> actions;
  SearchStats stats;
};

struct SolveResult {
  enum class Status { Solved, ProvedUnsolvable, ResourceExhausted };
  Status status = Status::ResourceExhausted;
  std::optional<Plan> plan;
  SearchStats stats;

  [[nodiscard]] bool solved() const { return status == Status::Solved; }
};

inline std::string_view to_string(SolveResult::Status s) {
  switch (s) {
    case SolveResult::Status::Solved: return "solved";
    case SolveResult::Status::ProvedUnsolvable: return "unsolvable";
    case SolveResult::Status::ResourceExhausted: return "resource-exhausted";
  }
  return {};
}

inline constexpr std::int64_t kInfiniteCost = std::numeric_limits<std::int64_t>::max() / 4;

namespace detail {

// Literal node index: 2 * fluent + polarity.
inline std::uint32_t node(Literal l) { return (l.fluent << 1) | (l.positive ? 1U : 0U); }

// Flat, search-friendly copy of a frame plus goal.
class GroundTask {
 public:
  GroundTask(const Frame& frame, const LiteralSet& goal)
      : num_fluents_(frame.num_fluents()), words_((frame.num_fluents() + 63) / 64) {
    for (ActionId a = 0; a < frame.num_actions(); ++a) {
      const auto& act = frame.action(a);
      Op op;
      op.pre_begin = static_cast<std::uint32_t>(lits_.size());
      for (auto l : act.pre) lits_.push_back(node(l));
      op.pre_end = static_cast<std::uint32_t>(lits_.size());
      op.eff_begin = static_cast<std::uint32_t>(effects_.size());
      for (const auto& ce : act.effects) {
        Eff e;
        e.cond_begin = static_cast<std::uint32_t>(lits_.size());
        for (auto l : ce.condition) lits_.push_back(node(l));
        e.cond_end = static_cast<std::uint32_t>(lits_.size());
        for (auto l : ce.effect) lits_.push_back(node(l));
        e.eff_end = static_cast<std::uint32_t>(lits_.size());
        effects_.push_back(e);
      }
      op.eff_end = static_cast<std::uint32_t>(effects_.size());
      ops_.push_back(op);
      names_.push_back(act.name);
    }
    for (auto l : goal) goal_.push_back(node(l));
    build_index(frame);
    build_relaxation(frame);
  }

  [[nodiscard]] std::size_t words() const { return words_; }
  [[nodiscard]] std::size_t num_fluents() const { return num_fluents_; }

  static bool bit(const std::uint64_t* s, std::uint32_t f) { return (s[f >> 6] >> (f & 63)) & 1U; }
  static bool holds(const std::uint64_t* s, std::uint32_t lit) { return bit(s, lit >> 1) == (lit & 1U); }

  [[nodiscard]] bool is_goal(const std::uint64_t* s) const {
    return std::all_of(goal_.begin(), goal_.end(), [&](auto l) { return holds(s, l); });
  }

  [[nodiscard]] bool applicable(const std::uint64_t* s, ActionId a) const {
    const auto& op = ops_[a];
    for (auto i = op.pre_begin; i < op.pre_end; ++i) {
      if (!holds(s, lits_[i])) return false;
    }
    return true;
  }

  template <typename Fn>
  void for_each_applicable(const std::uint64_t* s, Fn&& fn) const {
    for (auto a : unkeyed_) {
      if (applicable(s, a)) fn(a);
    }
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t m = s[w] & key_mask_[w];
      while (m != 0) {
        const auto f = static_cast<std::uint32_t>(w * 64 + std::countr_zero(m));
        m &= m - 1;
        for (auto a : keyed_[f]) {
          if (applicable(s, a)) fn(a);
        }
      }
    }
  }

  // Writes θ(s, a) into out (same width as s).
  void apply(const std::uint64_t* s, ActionId a, std::uint64_t* out) const {
    std::copy(s, s + words_, out);
    scratch_.clear();
    const auto& op = ops_[a];
    for (auto e = op.eff_begin; e < op.eff_end; ++e) {
      const auto& eff = effects_[e];
      bool fire = true;
      for (auto i = eff.cond_begin; i < eff.cond_end && fire; ++i) fire = holds(s, lits_[i]);
      if (!fire) continue;
      for (auto i = eff.cond_end; i < eff.eff_end; ++i) scratch_.push_back(lits_[i]);
    }
    if (scratch_.size() > 1) {
      std::sort(scratch_.begin(), scratch_.end());
      for (std::size_t i = 1; i < scratch_.size(); ++i) {
        if ((scratch_[i] >> 1) == (scratch_[i - 1] >> 1) && scratch_[i] != scratch_[i - 1]) {
          throw ConflictingEffectsError("action '" + names_[a] + "' triggers both polarities of fluent " +
                                        std::to_string(scratch_[i] >> 1));
        }
      }
    }
    for (auto l : scratch_) {
      const std::uint32_t f = l >> 1;
      const std::uint64_t b = std::uint64_t{1} << (f & 63);
      if (l & 1U) {
        out[f >> 6] |= b;
      } else {
        out[f >> 6] &= ~b;
      }
    }
  }

  [[nodiscard]] std::int64_t goal_count(const std::uint64_t* s) const {
    return std::count_if(goal_.begin(), goal_.end(), [&](auto l) { return !holds(s, l); });
  }

  // Additive heuristic over the literal-level delete relaxation. Each
  // conditional effect C ▷ E becomes a unit-cost operator with precondition
  // pre(a) ∪ C adding E.
  [[nodiscard]] std::int64_t h_add(const std::uint64_t* s) const {
    const std::size_t nodes = 2 * num_fluents_;
    cost_.assign(nodes, kInfiniteCost);
    remaining_.resize(rops_.size());
    acc_.assign(rops_.size(), 0);
    for (std::size_t o = 0; o < rops_.size(); ++o) remaining_[o] = rops_[o].num_pre;
    using Entry = std::pair<std::int64_t, std::uint32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
    for (std::uint32_t f = 0; f < num_fluents_; ++f) {
      const std::uint32_t n = (f << 1) | (bit(s, f) ? 1U : 0U);
      cost_[n] = 0;
      pq.emplace(0, n);
    }
    auto fire = [&](std::uint32_t o) {
      const std::int64_t c = acc_[o] + 1;
      const auto& r = rops_[o];
      for (auto i = r.add_begin; i < r.add_end; ++i) {
        const auto n = radds_[i];
        if (c < cost_[n]) {
          cost_[n] = c;
          pq.emplace(c, n);
        }
      }
    };
    for (auto o : rops_no_pre_) fire(o);
    std::size_t goals_left = goal_.size();
    for (auto g : goal_) goal_mark_[g] = 1;
    while (!pq.empty() && goals_left > 0) {
      auto [c, n] = pq.top();
      pq.pop();
      if (c != cost_[n] || settled_epoch_[n] == epoch_ + 1) continue;
      settled_epoch_[n] = epoch_ + 1;
      if (goal_mark_[n]) --goals_left;
      for (auto i = pre_of_begin_[n]; i < pre_of_begin_[n + 1]; ++i) {
        const auto o = pre_of_[i];
        acc_[o] = std::min(acc_[o] + c, kInfiniteCost);
        if (--remaining_[o] == 0) fire(o);
      }
    }
    ++epoch_;
    std::int64_t h = 0;
    for (auto g : goal_) goal_mark_[g] = 0;
    for (auto g : goal_) {
      if (cost_[g] >= kInfiniteCost) return kInfiniteCost;
      h += cost_[g];
    }
    return h;
  }

  [[nodiscard]] const std::string& name(ActionId a) const { return names_[a]; }

 private:
  struct Op {
    std::uint32_t pre_begin, pre_end, eff_begin, eff_end;
  };
  struct Eff {
    std::uint32_t cond_begin, cond_end, eff_end;
  };
  struct RelaxedOp {
    std::uint32_t num_pre;
    std::uint32_t add_begin, add_end;
  };

  void build_index(const Frame& frame) {
    std::vector<std::size_t> freq(num_fluents_, 0);
    for (const auto& a : frame.actions()) {
      for (auto l : a.pre) {
        if (l.positive) ++freq[l.fluent];
      }
    }
    keyed_.resize(num_fluents_);
    key_mask_.assign(words_, 0);
    for (ActionId a = 0; a < frame.num_actions(); ++a) {
      std::optional<FluentId> best;
      for (auto l : frame.action(a).pre) {
        if (l.positive && (!best || freq[l.fluent] < freq[*best])) best = l.fluent;
      }
      if (!best) {
        unkeyed_.push_back(a);
        continue;
      }
      keyed_[*best].push_back(a);
      key_mask_[*best >> 6] |= std::uint64_t{1} << (*best & 63);
    }
  }

  void build_relaxation(const Frame& frame) {
    std::vector<std::vector<std::uint32_t>> pre_lists;
    for (const auto& act : frame.actions()) {
      // Unconditional effects collapse into one relaxed operator.
      std::vector<std::uint32_t> uncond;
      auto push = [&](const LiteralSet& cond, std::vector<std::uint32_t> adds) {
        LiteralSet pre = act.pre;
        try {
          pre.merge(cond);
        } catch (const ModelError&) {
          return;  // pre(a) ∪ C inconsistent: never fires
        }
        RelaxedOp r{};
        r.num_pre = static_cast<std::uint32_t>(pre.size());
        r.add_begin = static_cast<std::uint32_t>(radds_.size());
        for (auto n : adds) radds_.push_back(n);
        r.add_end = static_cast<std::uint32_t>(radds_.size());
        std::vector<std::uint32_t> pl;
        for (auto l : pre) pl.push_back(node(l));
        pre_lists.push_back(std::move(pl));
        rops_.push_back(r);
      };
      for (const auto& ce : act.effects) {
        std::vector<std::uint32_t> adds;
        for (auto l : ce.effect) adds.push_back(node(l));
        if (ce.condition.empty()) {
          uncond.insert(uncond.end(), adds.begin(), adds.end());
        } else {
          push(ce.condition, std::move(adds));
        }
      }
      if (!uncond.empty()) push({}, std::move(uncond));
    }
    const std::size_t nodes = 2 * num_fluents_;
    std::vector<std::uint32_t> counts(nodes + 1, 0);
    for (const auto& pl : pre_lists) {
      for (auto n : pl) ++counts[n];
    }
    pre_of_begin_.assign(nodes + 1, 0);
    for (std::size_t n = 0; n < nodes; ++n) pre_of_begin_[n + 1] = pre_of_begin_[n] + counts[n];
    pre_of_.resize(pre_of_begin_[nodes]);
    std::vector<std::uint32_t> fill(pre_of_begin_.begin(), pre_of_begin_.end() - 1);
    for (std::uint32_t o = 0; o < pre_lists.size(); ++o) {
      if (pre_lists[o].empty()) rops_no_pre_.push_back(o);
      for (auto n : pre_lists[o]) pre_of_[fill[n]++] = o;
    }
    goal_mark_.assign(nodes, 0);
    settled_epoch_.assign(nodes, 0);
  }

  std::size_t num_fluents_;
  std::size_t words_;
  std::vector<std::uint32_t> lits_;
  std::vector<Op> ops_;
  std::vector<Eff> effects_;
  std::vector<std::string> names_;
  std::vector<std::uint32_t> goal_;
  std::vector<ActionId> unkeyed_;
  std::vector<std::vector<ActionId>> keyed_;
  std::vector<std::uint64_t> key_mask_;

  std::vector<RelaxedOp> rops_;
  std::vector<std::uint32_t> radds_;
  std::vector<std::uint32_t> rops_no_pre_;
  std::vector<std::uint32_t> pre_of_begin_;
  std::vector<std::uint32_t> pre_of_;

  mutable std::vector<std::uint32_t> scratch_;
  mutable std::vector<std::int64_t> cost_;
  mutable std::vector<std::uint32_t> remaining_;
  mutable std::vector<std::int64_t> acc_;
  mutable std::vector<std::uint8_t> goal_mark_;
  mutable std::vector<std::uint64_t> settled_epoch_;
  mutable std::uint64_t epoch_ = 0;
};

// Interned states in one flat word array.
class StateRegistry {
 public:
  explicit StateRegistry(std::size_t words) : words_(words), set_(1024, Hash{this}, Eq{this}) {}

  // Returns (id, inserted).
  std::pair<std::uint32_t, bool> insert(const std::uint64_t* s) {
    const auto id = static_cast<std::uint32_t>(size());
    data_.insert(data_.end(), s, s + words_);
    auto [it, fresh] = set_.insert(id);
    if (!fresh) data_.resize(data_.size() - words_);
    return {*it, fresh};
  }

  [[nodiscard]] const std::uint64_t* get(std::uint32_t id) const { return data_.data() + std::size_t{id} * words_; }
  [[nodiscard]] std::size_t size() const { return words_ == 0 ? set_.size() : data_.size() / words_; }

 private:
  struct Hash {
    const StateRegistry* r;
    std::size_t operator()(std::uint32_t id) const {
      const auto* p = r->get(id);
      std::uint64_t h = 0xcbf29ce484222325ULL;
      for (std::size_t i = 0; i < r->words_; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
        h ^= h >> 29;
      }
      return static_cast<std::size_t>(h);
    }
  };
  struct Eq {
    const StateRegistry* r;
    bool operator()(std::uint32_t a, std::uint32_t b) const {
      return std::equal(r->get(a), r->get(a) + r->words_, r->get(b));
    }
  };

  std::size_t words_;
  std::vector<std::uint64_t> data_;
  std::unordered_set<std::uint32_t, Hash, Eq> set_;
};

}  // namespace detail

inline SolveResult solve(const Frame& frame, const State& init, const LiteralSet& goal, const SearchConfig& cfg) {
  cfg.validate();
  if (init.size() != frame.num_fluents()) throw ModelError("initial state width does not match frame");
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  detail::GroundTask task(frame, goal);
  detail::StateRegistry reg(task.words());
  struct Node {
    std::uint32_t parent;
    ActionId action;
  };
  std::vector<Node> nodes;
  SolveResult res;

  auto extract = [&](std::uint32_t id) {
    Plan plan;
    while (id != 0) {
      plan.actions.push_back(nodes[id].action);
      id = nodes[id].parent;
    }
    std::reverse(plan.actions.begin(), plan.actions.end());
    return plan;
  };
  auto finish = [&](SolveResult::Status st, std::optional<std::uint32_t> goal_id) {
    res.status = st;
    res.stats.elapsed_seconds = elapsed();
    res.stats.stored = reg.size();
    if (goal_id) {
      res.plan = extract(*goal_id);
      res.plan->stats = res.stats;
    }
    return res;
  };

  auto evaluate = [&](const std::uint64_t* s) -> std::int64_t {
    ++res.stats.evaluated;
    switch (cfg.heuristic) {
      case Heuristic::HAdd: return task.h_add(s);
      case Heuristic::GoalCount: return task.goal_count(s);
      case Heuristic::Blind: return 0;
    }
    return 0;
  };

  std::vector<std::uint64_t> buf(init.words().begin(), init.words().end());
  reg.insert(buf.data());
  nodes.push_back({0, 0});
  if (task.is_goal(reg.get(0))) return finish(SolveResult::Status::Solved, 0);

  const bool gbfs = cfg.strategy == Strategy::GBFS;
  // GBFS: one FIFO bucket per heuristic value. BFS: a single FIFO.
  std::vector<std::deque<std::uint32_t>> buckets;
  std::size_t lowest = 0;
  std::size_t open_size = 0;
  auto push = [&](std::uint32_t id, std::int64_t h) {
    const auto b = gbfs ? static_cast<std::size_t>(h) : 0;
    if (b >= buckets.size()) buckets.resize(b + 1);
    buckets[b].push_back(id);
    lowest = std::min(lowest, b);
    ++open_size;
  };
  auto pop = [&] {
    while (buckets[lowest].empty()) ++lowest;
    auto id = buckets[lowest].front();
    buckets[lowest].pop_front();
    --open_size;
    return id;
  };

  {
    const auto h0 = gbfs ? evaluate(reg.get(0)) : 0;
    if (h0 >= kInfiniteCost) return finish(SolveResult::Status::ProvedUnsolvable, std::nullopt);
    push(0, h0);
  }

  std::vector<std::uint64_t> child(task.words());
  std::vector<ActionId> applicable;
  while (open_size > 0) {
    if (cfg.max_expansions && res.stats.expansions >= *cfg.max_expansions) {
      return finish(SolveResult::Status::ResourceExhausted, std::nullopt);
    }
    if (cfg.max_seconds && (res.stats.expansions & 255) == 0 && elapsed() > *cfg.max_seconds) {
      return finish(SolveResult::Status::ResourceExhausted, std::nullopt);
    }
    const auto id = pop();
    ++res.stats.expansions;
    applicable.clear();
    task.for_each_applicable(reg.get(id), [&](ActionId a) { applicable.push_back(a); });
    std::sort(applicable.begin(), applicable.end());
    for (auto a : applicable) {
      task.apply(reg.get(id), a, child.data());
      ++res.stats.generated;
      auto [cid, fresh] = reg.insert(child.data());
      if (!fresh) continue;
      nodes.push_back({id, a});
      if (task.is_goal(reg.get(cid))) return finish(SolveResult::Status::Solved, cid);
      if (cfg.max_states && reg.size() > *cfg.max_states) {
        return finish(SolveResult::Status::ResourceExhausted, std::nullopt);
      }
      const auto h = gbfs ? evaluate(reg.get(cid)) : 0;
      if (h >= kInfiniteCost) continue;
      push(cid, h);
    }
  }
  return finish(SolveResult::Status::ProvedUnsolvable, std::nullopt);
}

inline SolveResult solve(const ClassicalInstance& p, const SearchConfig& cfg) {
  auto res = solve(*p.frame, p.init, p.goal, cfg);
  if (res.plan && !validate_sequential_plan(p, res.plan->actions)) {
    throw Error("internal error: planner returned a plan that does not validate");
  }
  return res;
}

inline SolveResult solve(const CompiledInstance& ci, const SearchConfig& cfg) { return solve(ci.as_instance(), cfg); }

inline std::int64_t h_add(const State& s, const ClassicalInstance& p) {
  detail::GroundTask task(*p.frame, p.goal);
  return task.h_add(s.words().data());
}

// Exhaustive solvability check (BFS), e.g. for confirming that a negative
// example's goal is reachable.
inline SolveResult check_reachable(const ClassicalInstance& p, std::optional<std::size_t> max_states = {}) {
  SearchConfig cfg;
  cfg.strategy = Strategy::BFS;
  cfg.heuristic = Heuristic::Blind;
  cfg.max_states = max_states;
  return solve(p, cfg);
}

}  // namespace gpsyn
