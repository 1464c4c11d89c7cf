#pragma once

// Propositional planning model with conditional effects: fluents, literals,
// literal sets, total states, actions, frames and labeled instances.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gpsyn {

using FluentId = std::uint32_t;
using ActionId = std::uint32_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed model: unknown fluent, duplicate name, inconsistent literal set.
class ModelError : public Error {
 public:
  using Error::Error;
};

// Two simultaneously triggered effects assert opposite values of one fluent.
class ConflictingEffectsError : public ModelError {
 public:
  using ModelError::ModelError;
};

class ApplicabilityError : public Error {
 public:
  using Error::Error;
};

struct Literal {
  FluentId fluent = 0;
  bool positive = true;

  [[nodiscard]] Literal negated() const { return {fluent, !positive}; }
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

inline Literal pos(FluentId f) { return {f, true}; }
inline Literal neg(FluentId f) { return {f, false}; }

// Total assignment over a fixed number of fluents, stored as a bit vector.
class State {
 public:
  State() = default;
  explicit State(std::size_t num_fluents)
      : size_(num_fluents), words_((num_fluents + 63) / 64, 0) {}

  [[nodiscard]] std::size_t size() const { return size_; }

  [[nodiscard]] bool get(FluentId f) const {
    check(f);
    return (words_[f >> 6] >> (f & 63)) & 1U;
  }
  void set(FluentId f, bool value) {
    check(f);
    const std::uint64_t bit = std::uint64_t{1} << (f & 63);
    if (value) {
      words_[f >> 6] |= bit;
    } else {
      words_[f >> 6] &= ~bit;
    }
  }

  [[nodiscard]] bool holds(Literal l) const { return get(l.fluent) == l.positive; }

  [[nodiscard]] std::size_t count_true() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  [[nodiscard]] std::span<const std::uint64_t> words() const { return words_; }
  [[nodiscard]] std::span<std::uint64_t> words() { return words_; }

  [[nodiscard]] std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ size_;
    for (auto w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

  friend bool operator==(const State&, const State&) = default;

 private:
  void check(FluentId f) const {
    if (f >= size_) {
      throw ModelError("fluent id " + std::to_string(f) + " out of range for state of size " +
                       std::to_string(size_));
    }
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct StateHash {
  std::size_t operator()(const State& s) const { return s.hash(); }
};

// Partial assignment: sorted by fluent id, at most one literal per fluent.
class LiteralSet {
 public:
  LiteralSet() = default;
  LiteralSet(std::initializer_list<Literal> lits) : LiteralSet(std::vector<Literal>(lits)) {}
  explicit LiteralSet(std::vector<Literal> lits) {
    for (auto l : lits) insert(l);
  }

  // Throws ModelError when l conflicts with an existing literal.
  void insert(Literal l) {
    auto it = std::lower_bound(lits_.begin(), lits_.end(), l.fluent,
                               [](Literal a, FluentId f) { return a.fluent < f; });
    if (it != lits_.end() && it->fluent == l.fluent) {
      if (it->positive != l.positive) {
        throw ModelError("conflicting literals on fluent " + std::to_string(l.fluent));
      }
      return;
    }
    lits_.insert(it, l);
  }

  // Union that reports conflicts instead of silently overwriting.
  void merge(const LiteralSet& other) {
    for (auto l : other.lits_) insert(l);
  }

  [[nodiscard]] std::optional<bool> value(FluentId f) const {
    auto it = std::lower_bound(lits_.begin(), lits_.end(), f,
                               [](Literal a, FluentId g) { return a.fluent < g; });
    if (it != lits_.end() && it->fluent == f) return it->positive;
    return std::nullopt;
  }
  [[nodiscard]] bool contains(Literal l) const { return value(l.fluent) == l.positive; }

  [[nodiscard]] LiteralSet negate() const {
    LiteralSet out;
    out.lits_.reserve(lits_.size());
    for (auto l : lits_) out.lits_.push_back(l.negated());
    return out;
  }

  // L ⊆ s
  [[nodiscard]] bool holds_in(const State& s) const {
    return std::all_of(lits_.begin(), lits_.end(), [&](Literal l) { return s.holds(l); });
  }

  [[nodiscard]] bool empty() const { return lits_.empty(); }
  [[nodiscard]] std::size_t size() const { return lits_.size(); }
  [[nodiscard]] auto begin() const { return lits_.begin(); }
  [[nodiscard]] auto end() const { return lits_.end(); }
  [[nodiscard]] const std::vector<Literal>& literals() const { return lits_; }

  friend bool operator==(const LiteralSet&, const LiteralSet&) = default;

 private:
  std::vector<Literal> lits_;
};

struct ConditionalEffect {
  LiteralSet condition;
  LiteralSet effect;
  friend bool operator==(const ConditionalEffect&, const ConditionalEffect&) = default;
};

struct Action {
  std::string name;
  LiteralSet pre;
  std::vector<ConditionalEffect> effects;
  friend bool operator==(const Action&, const Action&) = default;
};

// Φ = ⟨F, A⟩. Fluent ids are dense; names are unique for fluents and actions.
// `conditions` optionally lists the fluents that goto instructions may test
// (empty means every fluent).
class Frame {
 public:
  FluentId add_fluent(std::string name) {
    if (name.empty()) throw ModelError("empty fluent name");
    if (fluent_index_.contains(name)) throw ModelError("duplicate fluent '" + name + "'");
    const auto id = static_cast<FluentId>(fluents_.size());
    fluent_index_.emplace(name, id);
    fluents_.push_back(std::move(name));
    return id;
  }

  ActionId add_action(Action a) {
    if (a.name.empty()) throw ModelError("empty action name");
    if (action_index_.contains(a.name)) throw ModelError("duplicate action '" + a.name + "'");
    check_literals(a.pre, a.name);
    for (const auto& ce : a.effects) {
      check_literals(ce.condition, a.name);
      check_literals(ce.effect, a.name);
      if (ce.effect.empty()) throw ModelError("action '" + a.name + "' has an empty effect");
    }
    const auto id = static_cast<ActionId>(actions_.size());
    action_index_.emplace(a.name, id);
    actions_.push_back(std::move(a));
    return id;
  }

  void set_conditions(std::vector<FluentId> fs) {
    for (auto f : fs) {
      if (f >= fluents_.size()) throw ModelError("condition fluent out of range");
    }
    conditions_ = std::move(fs);
  }

  [[nodiscard]] std::size_t num_fluents() const { return fluents_.size(); }
  [[nodiscard]] std::size_t num_actions() const { return actions_.size(); }
  [[nodiscard]] const std::string& fluent_name(FluentId f) const { return fluents_.at(f); }
  [[nodiscard]] const std::vector<std::string>& fluent_names() const { return fluents_; }
  [[nodiscard]] const Action& action(ActionId a) const { return actions_.at(a); }
  [[nodiscard]] const std::vector<Action>& actions() const { return actions_; }
  [[nodiscard]] const std::vector<FluentId>& declared_conditions() const { return conditions_; }

  // Goto-testable fluents, defaulting to all of F.
  [[nodiscard]] std::vector<FluentId> condition_fluents() const {
    if (!conditions_.empty()) return conditions_;
    std::vector<FluentId> all(fluents_.size());
    for (FluentId f = 0; f < all.size(); ++f) all[f] = f;
    return all;
  }

  [[nodiscard]] std::optional<FluentId> find_fluent(std::string_view name) const {
    auto it = fluent_index_.find(std::string(name));
    if (it == fluent_index_.end()) return std::nullopt;
    return it->second;
  }
  [[nodiscard]] FluentId fluent(std::string_view name) const {
    if (auto f = find_fluent(name)) return *f;
    throw ModelError("unknown fluent '" + std::string(name) + "'");
  }
  [[nodiscard]] std::optional<ActionId> find_action(std::string_view name) const {
    auto it = action_index_.find(std::string(name));
    if (it == action_index_.end()) return std::nullopt;
    return it->second;
  }
  [[nodiscard]] ActionId action_id(std::string_view name) const {
    if (auto a = find_action(name)) return *a;
    throw ModelError("unknown action '" + std::string(name) + "'");
  }

  // Builds a state whose true fluents are exactly `true_fluents`.
  [[nodiscard]] State make_state(std::span<const FluentId> true_fluents) const {
    State s(num_fluents());
    for (auto f : true_fluents) s.set(f, true);
    return s;
  }
  [[nodiscard]] State make_state(std::initializer_list<std::string_view> true_names) const {
    State s(num_fluents());
    for (auto n : true_names) s.set(fluent(n), true);
    return s;
  }

  friend bool operator==(const Frame& a, const Frame& b) {
    return a.fluents_ == b.fluents_ && a.actions_ == b.actions_ && a.conditions_ == b.conditions_;
  }

 private:
  void check_literals(const LiteralSet& ls, const std::string& owner) const {
    for (auto l : ls) {
      if (l.fluent >= fluents_.size()) {
        throw ModelError("action '" + owner + "' references unknown fluent id " +
                         std::to_string(l.fluent));
      }
    }
  }

  std::vector<std::string> fluents_;
  std::unordered_map<std::string, FluentId> fluent_index_;
  std::vector<Action> actions_;
  std::unordered_map<std::string, ActionId> action_index_;
  std::vector<FluentId> conditions_;
};

using FramePtr = std::shared_ptr<const Frame>;

enum class Label { Positive, Negative };

inline std::string_view to_string(Label l) { return l == Label::Positive ? "positive" : "negative"; }

struct ClassicalInstance {
  FramePtr frame;
  State init;
  LiteralSet goal;
  Label label = Label::Positive;
  std::string name;
};

// A finite set of labeled classical instances over one shared frame.
class GeneralizedProblem {
 public:
  GeneralizedProblem() = default;
  GeneralizedProblem(FramePtr frame, std::vector<ClassicalInstance> instances)
      : frame_(std::move(frame)), instances_(std::move(instances)) {
    if (!frame_) throw ModelError("generalized problem without a frame");
    for (const auto& p : instances_) check_instance(p);
  }

  void add(ClassicalInstance p) {
    check_instance(p);
    instances_.push_back(std::move(p));
  }

  [[nodiscard]] const FramePtr& frame_ptr() const { return frame_; }
  [[nodiscard]] const Frame& frame() const { return *frame_; }
  [[nodiscard]] const std::vector<ClassicalInstance>& instances() const { return instances_; }
  [[nodiscard]] std::size_t size() const { return instances_.size(); }
  [[nodiscard]] std::size_t num_positive() const {
    return static_cast<std::size_t>(std::count_if(instances_.begin(), instances_.end(),
                                                  [](const auto& p) { return p.label == Label::Positive; }));
  }
  [[nodiscard]] std::size_t num_negative() const { return size() - num_positive(); }

 private:
  void check_instance(const ClassicalInstance& p) const {
    if (p.frame.get() != frame_.get() && !(p.frame && *p.frame == *frame_)) {
      throw ModelError("instance '" + p.name + "' does not share the problem frame");
    }
    if (p.init.size() != frame_->num_fluents()) {
      throw ModelError("instance '" + p.name + "' has an initial state of the wrong width");
    }
    for (auto l : p.goal) {
      if (l.fluent >= frame_->num_fluents()) throw ModelError("goal references unknown fluent");
    }
  }

  FramePtr frame_;
  std::vector<ClassicalInstance> instances_;
};

// pre(a) ⊆ s
inline bool is_applicable(const State& s, const Action& a) { return a.pre.holds_in(s); }

// eff(s, a): union of E over all C ▷ E with C ⊆ s.
inline LiteralSet triggered_effects(const State& s, const Action& a) {
  LiteralSet out;
  for (const auto& ce : a.effects) {
    if (!ce.condition.holds_in(s)) continue;
    for (auto l : ce.effect) {
      auto v = out.value(l.fluent);
      if (v && *v != l.positive) {
        throw ConflictingEffectsError("action '" + a.name + "' triggers both polarities of fluent " +
                                      std::to_string(l.fluent));
      }
      out.insert(l);
    }
  }
  return out;
}

// θ(s, a) = (s \ ¬eff(s, a)) ∪ eff(s, a)
inline State successor(const State& s, const Action& a) {
  if (!is_applicable(s, a)) throw ApplicabilityError("action '" + a.name + "' is not applicable");
  State next = s;
  for (auto l : triggered_effects(s, a)) next.set(l.fluent, l.positive);
  return next;
}

inline bool validate_sequential_plan(const ClassicalInstance& p, std::span<const ActionId> plan) {
  State s = p.init;
  for (auto id : plan) {
    if (id >= p.frame->num_actions()) return false;
    const auto& a = p.frame->action(id);
    if (!is_applicable(s, a)) return false;
    s = successor(s, a);
  }
  return p.goal.holds_in(s);
}

}  // namespace gpsyn
