#pragma once

// Coverage of a program over a labeled test set: confusion counts and
// precision / recall / accuracy as exact rationals.
//
//   p   positives solved         n   negatives unsolved
//   p⁻  negatives solved (FP)    n⁻  positives unsolved (FN)
//
//   pr = p / (p + p⁻)   re = p / (p + n⁻)   ac = (p + n) / (p + n + p⁻ + n⁻)

#include <cstdint>
#include <numeric>

#include "gpsyn/interpreter.hpp"

namespace gpsyn {

class Rational {
 public:
  Rational(std::int64_t num = 0, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw ModelError("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const auto g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  [[nodiscard]] std::int64_t num() const { return num_; }
  [[nodiscard]] std::int64_t den() const { return den_; }
  [[nodiscard]] double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend auto operator<=>(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
  }

  // Percentage with two decimals, rounded half up: 3/4 -> "75.00".
  [[nodiscard]] std::string percent() const {
    if (num_ < 0) throw ModelError("negative rate");
    const auto scaled = static_cast<__int128>(num_) * 10000;
    const auto hundredths = static_cast<std::int64_t>((2 * scaled + den_) / (2 * den_));
    auto frac = std::to_string(hundredths % 100);
    if (frac.size() < 2) frac.insert(0, "0");
    return std::to_string(hundredths / 100) + "." + frac;
  }

  [[nodiscard]] std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  std::int64_t num_;
  std::int64_t den_;
};

enum class Outcome { TP, FP, TN, FN };

inline std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::TP: return "TP";
    case Outcome::FP: return "FP";
    case Outcome::TN: return "TN";
    case Outcome::FN: return "FN";
  }
  return {};
}

struct ConfusionCounts {
  std::int64_t p = 0;
  std::int64_t n = 0;
  std::int64_t p_minus = 0;
  std::int64_t n_minus = 0;

  [[nodiscard]] std::int64_t positives() const { return p + n_minus; }
  [[nodiscard]] std::int64_t negatives() const { return n + p_minus; }
  [[nodiscard]] std::int64_t total() const { return p + n + p_minus + n_minus; }

  void add(Outcome o) {
    switch (o) {
      case Outcome::TP: ++p; break;
      case Outcome::TN: ++n; break;
      case Outcome::FP: ++p_minus; break;
      case Outcome::FN: ++n_minus; break;
    }
  }

  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

struct Metrics {
  std::optional<Rational> precision;
  std::optional<Rational> recall;
  std::optional<Rational> accuracy;
};

// Undefined rates print as "-", never as 0.
inline std::string render_rate(const std::optional<Rational>& r) { return r ? r->percent() : std::string("-"); }

inline Metrics compute_metrics(const ConfusionCounts& c) {
  if (c.p < 0 || c.n < 0 || c.p_minus < 0 || c.n_minus < 0) throw ModelError("negative confusion count");
  auto ratio = [](std::int64_t num, std::int64_t den) -> std::optional<Rational> {
    if (den == 0) return std::nullopt;
    return Rational(num, den);
  };
  return {ratio(c.p, c.p + c.p_minus), ratio(c.p, c.p + c.n_minus), ratio(c.p + c.n, c.total())};
}

inline Outcome classify(const ExecutionOutcome& o, Label label) {
  if (label == Label::Positive) return o.solved ? Outcome::TP : Outcome::FN;
  return o.solved ? Outcome::FP : Outcome::TN;
}

inline Outcome classify(const Program& prog, const ClassicalInstance& p, const ExecuteOptions& opts = {}) {
  return classify(execute(prog, p, opts), p.label);
}

struct InstanceEvaluation {
  std::string name;
  Label label = Label::Positive;
  ExecutionOutcome outcome;
  Outcome result = Outcome::TP;
};

struct Evaluation {
  ConfusionCounts counts;
  Metrics metrics;
  std::vector<InstanceEvaluation> instances;
};

inline Evaluation evaluate_test_set(const Program& prog, const GeneralizedProblem& test, const ExecuteOptions& opts = {}) {
  Evaluation ev;
  for (const auto& p : test.instances()) {
    auto o = execute(prog, p, opts);
    auto r = classify(o, p.label);
    ev.counts.add(r);
    ev.instances.push_back({p.name, p.label, std::move(o), r});
  }
  ev.metrics = compute_metrics(ev.counts);
  return ev;
}

}  // namespace gpsyn
