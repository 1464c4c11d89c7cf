#pragma once

// Planning programs: indexed sequences of action / goto / end instructions,
// plus the line-oriented text format
//
//   0. paint
//   1. goto(0,!at_end)
//   2. end
//
// `#` starts a comment that runs to the end of the line.

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gpsyn/core.hpp"

namespace gpsyn {

class ParseError : public Error {
 public:
  using Error::Error;
};

struct Instruction {
  enum class Kind { Act, Goto, End };

  Kind kind = Kind::End;
  ActionId action = 0;     // Act
  std::size_t target = 0;  // Goto: i'
  FluentId fluent = 0;     // Goto: f in goto(i', !f)

  static Instruction act(ActionId a) { return {Kind::Act, a, 0, 0}; }
  static Instruction go(std::size_t target, FluentId f) { return {Kind::Goto, 0, target, f}; }
  static Instruction end() { return {}; }

  [[nodiscard]] bool is_act() const { return kind == Kind::Act; }
  [[nodiscard]] bool is_goto() const { return kind == Kind::Goto; }
  [[nodiscard]] bool is_end() const { return kind == Kind::End; }

  friend bool operator==(const Instruction& a, const Instruction& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case Kind::Act: return a.action == b.action;
      case Kind::Goto: return a.target == b.target && a.fluent == b.fluent;
      case Kind::End: return true;
    }
    return false;
  }
};

inline std::string to_string(const Instruction& w, const Frame& frame) {
  switch (w.kind) {
    case Instruction::Kind::Act: return frame.action(w.action).name;
    case Instruction::Kind::Goto:
      return "goto(" + std::to_string(w.target) + ",!" + frame.fluent_name(w.fluent) + ")";
    case Instruction::Kind::End: return "end";
  }
  return {};
}

// Π = ⟨w_0, ..., w_n⟩ with w_n = end.
class Program {
 public:
  Program(FramePtr frame, std::vector<Instruction> lines)
      : frame_(std::move(frame)), lines_(std::move(lines)) {
    if (!frame_) throw ModelError("program without a frame");
    if (lines_.empty()) throw ModelError("program has no lines");
    if (!lines_.back().is_end()) throw ModelError("the last program line must be end");
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      const auto& w = lines_[i];
      if (w.is_act() && w.action >= frame_->num_actions()) {
        throw ModelError("line " + std::to_string(i) + ": unknown action id");
      }
      if (w.is_goto()) {
        if (w.target > max_line()) {
          throw ModelError("line " + std::to_string(i) + ": goto target beyond line " +
                           std::to_string(max_line()));
        }
        if (w.fluent >= frame_->num_fluents()) {
          throw ModelError("line " + std::to_string(i) + ": unknown goto fluent id");
        }
      }
    }
  }

  [[nodiscard]] const FramePtr& frame_ptr() const { return frame_; }
  [[nodiscard]] const Frame& frame() const { return *frame_; }
  [[nodiscard]] std::size_t max_line() const { return lines_.size() - 1; }
  [[nodiscard]] std::size_t num_lines() const { return lines_.size(); }
  [[nodiscard]] const Instruction& line(std::size_t i) const { return lines_.at(i); }
  [[nodiscard]] const std::vector<Instruction>& lines() const { return lines_; }

  [[nodiscard]] std::string to_text() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      out << i << ". " << to_string(lines_[i], *frame_) << '\n';
    }
    return out.str();
  }

  friend bool operator==(const Program& a, const Program& b) {
    return a.lines_ == b.lines_ && (a.frame_ == b.frame_ || *a.frame_ == *b.frame_);
  }

 private:
  FramePtr frame_;
  std::vector<Instruction> lines_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::optional<std::size_t> parse_index(std::string_view s) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace detail

inline Instruction parse_instruction(std::string_view text, const Frame& frame) {
  text = detail::trim(text);
  if (text == "end") return Instruction::end();
  if (text.starts_with("goto(")) {
    if (!text.ends_with(")")) throw ParseError("malformed goto '" + std::string(text) + "'");
    auto body = text.substr(5, text.size() - 6);
    auto comma = body.find(',');
    if (comma == std::string_view::npos) throw ParseError("goto without condition");
    auto target = detail::parse_index(detail::trim(body.substr(0, comma)));
    auto cond = detail::trim(body.substr(comma + 1));
    if (!target) throw ParseError("goto with a non-numeric target");
    if (!cond.starts_with("!")) throw ParseError("goto condition must have the form !<fluent>");
    auto f = frame.find_fluent(detail::trim(cond.substr(1)));
    if (!f) throw ParseError("goto on unknown fluent '" + std::string(cond.substr(1)) + "'");
    return Instruction::go(*target, *f);
  }
  auto a = frame.find_action(text);
  if (!a) throw ParseError("unknown instruction '" + std::string(text) + "'");
  return Instruction::act(*a);
}

inline Program parse_program(std::string_view text, FramePtr frame) {
  std::vector<Instruction> lines;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    raw = detail::trim(raw);
    if (raw.empty()) continue;
    auto dot = raw.find('.');
    if (dot == std::string_view::npos) {
      throw ParseError("line " + std::to_string(lineno) + ": expected '<index>. <instruction>'");
    }
    auto idx = detail::parse_index(detail::trim(raw.substr(0, dot)));
    if (!idx || *idx != lines.size()) {
      throw ParseError("line " + std::to_string(lineno) + ": expected index " +
                       std::to_string(lines.size()));
    }
    try {
      lines.push_back(parse_instruction(raw.substr(dot + 1), *frame));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (lines.empty()) throw ParseError("empty program");
  if (!lines.back().is_end()) throw ParseError("the last program line must be end");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].is_goto() && lines[i].target >= lines.size()) {
      throw ParseError("line " + std::to_string(i) + ": goto target " +
                       std::to_string(lines[i].target) + " beyond the last line");
    }
  }
  return Program(std::move(frame), std::move(lines));
}

// Re-resolves a program's names against another frame of the same family.
inline Program rebind(const Program& p, FramePtr frame) { return parse_program(p.to_text(), std::move(frame)); }

}  // namespace gpsyn
