#pragma once

// Serialization: the JSON problem format and ground PDDL export / import.
//
// JSON problem:
//   {"frame": {"fluents": [names], "conditions": [names]?,
//              "actions": [{"name", "pre": [±name], "effects": [{"when": [±name], "then": [±name]}]}]},
//    "instances": [{"name", "label": "positive"|"negative", "init": [true names], "goal": [±name]}]}
//
// A literal "-f" is the negation of f. "conditions" optionally restricts the
// fluents goto instructions may test.
//
// PDDL is ground: every fluent is a 0-ary predicate and every action has no
// parameters. Labels and goto conditions, which PDDL cannot express, travel
// in `; gpsyn-label:` and `; gpsyn-conditions:` comments.

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "gpsyn/core.hpp"
#include "gpsyn/program.hpp"

namespace gpsyn {

using json = nlohmann::ordered_json;

// ----------------------------------------------------------------------- JSON

namespace detail {

inline json literals_to_json(const LiteralSet& ls, const Frame& f) {
  json out = json::array();
  for (auto l : ls) out.push_back((l.positive ? "" : "-") + f.fluent_name(l.fluent));
  return out;
}

inline LiteralSet literals_from_json(const json& j, const Frame& f, std::string_view where) {
  if (!j.is_array()) throw ParseError(std::string(where) + ": expected a list of literals");
  LiteralSet out;
  for (const auto& item : j) {
    if (!item.is_string()) throw ParseError(std::string(where) + ": literal must be a string");
    auto s = item.get<std::string>();
    const bool negative = s.starts_with("-");
    auto name = negative ? s.substr(1) : s;
    auto id = f.find_fluent(name);
    if (!id) throw ParseError(std::string(where) + ": unknown fluent '" + name + "'");
    try {
      out.insert({*id, !negative});
    } catch (const ModelError& e) {
      throw ParseError(std::string(where) + ": " + e.what());
    }
  }
  return out;
}

inline const json& field(const json& j, const char* key, std::string_view where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string(where) + ": missing '" + key + "'");
  return j.at(key);
}

inline std::string string_field(const json& j, const char* key, std::string_view where) {
  const auto& v = field(j, key, where);
  if (!v.is_string()) throw ParseError(std::string(where) + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace detail

inline json frame_to_json(const Frame& f) {
  json j;
  j["fluents"] = f.fluent_names();
  if (!f.declared_conditions().empty()) {
    json c = json::array();
    for (auto id : f.declared_conditions()) c.push_back(f.fluent_name(id));
    j["conditions"] = c;
  }
  json actions = json::array();
  for (const auto& a : f.actions()) {
    json effects = json::array();
    for (const auto& ce : a.effects) {
      effects.push_back({{"when", detail::literals_to_json(ce.condition, f)}, {"then", detail::literals_to_json(ce.effect, f)}});
    }
    actions.push_back({{"name", a.name}, {"pre", detail::literals_to_json(a.pre, f)}, {"effects", effects}});
  }
  j["actions"] = actions;
  return j;
}

inline FramePtr frame_from_json(const json& j) {
  auto f = std::make_shared<Frame>();
  try {
    const auto& fluents = detail::field(j, "fluents", "frame");
    if (!fluents.is_array()) throw ParseError("frame: 'fluents' must be a list");
    for (const auto& name : fluents) {
      if (!name.is_string()) throw ParseError("frame: fluent names must be strings");
      f->add_fluent(name.get<std::string>());
    }
    const auto& actions = detail::field(j, "actions", "frame");
    if (!actions.is_array()) throw ParseError("frame: 'actions' must be a list");
    for (const auto& ja : actions) {
      Action a;
      a.name = detail::string_field(ja, "name", "action");
      const std::string where = "action '" + a.name + "'";
      if (ja.contains("pre")) a.pre = detail::literals_from_json(ja.at("pre"), *f, where);
      const auto& effects = detail::field(ja, "effects", where);
      if (!effects.is_array()) throw ParseError(where + ": 'effects' must be a list");
      for (const auto& je : effects) {
        ConditionalEffect ce;
        if (je.contains("when")) ce.condition = detail::literals_from_json(je.at("when"), *f, where);
        ce.effect = detail::literals_from_json(detail::field(je, "then", where), *f, where);
        a.effects.push_back(std::move(ce));
      }
      f->add_action(std::move(a));
    }
    if (j.contains("conditions")) {
      std::vector<FluentId> cond;
      for (const auto& name : j.at("conditions")) {
        if (!name.is_string()) throw ParseError("frame: condition names must be strings");
        auto id = f->find_fluent(name.get<std::string>());
        if (!id) throw ParseError("frame: unknown condition fluent '" + name.get<std::string>() + "'");
        cond.push_back(*id);
      }
      f->set_conditions(std::move(cond));
    }
  } catch (const ModelError& e) {
    throw ParseError(std::string("frame: ") + e.what());
  }
  return f;
}

inline json instance_to_json(const ClassicalInstance& p) {
  json init = json::array();
  for (FluentId id = 0; id < p.frame->num_fluents(); ++id) {
    if (p.init.get(id)) init.push_back(p.frame->fluent_name(id));
  }
  return {{"name", p.name},
          {"label", std::string(to_string(p.label))},
          {"init", init},
          {"goal", detail::literals_to_json(p.goal, *p.frame)}};
}

inline ClassicalInstance instance_from_json(const json& j, const FramePtr& frame) {
  ClassicalInstance p{frame, State(frame->num_fluents()), {}, Label::Positive, ""};
  p.name = detail::string_field(j, "name", "instance");
  const std::string where = "instance '" + p.name + "'";
  const auto label = j.contains("label") ? detail::string_field(j, "label", where) : std::string("positive");
  if (label == "negative") {
    p.label = Label::Negative;
  } else if (label != "positive") {
    throw ParseError(where + ": label must be 'positive' or 'negative'");
  }
  const auto& init = detail::field(j, "init", where);
  if (!init.is_array()) throw ParseError(where + ": 'init' must be a list");
  for (const auto& name : init) {
    if (!name.is_string()) throw ParseError(where + ": init entries must be fluent names");
    auto id = frame->find_fluent(name.get<std::string>());
    if (!id) throw ParseError(where + ": unknown fluent '" + name.get<std::string>() + "'");
    p.init.set(*id, true);
  }
  p.goal = detail::literals_from_json(detail::field(j, "goal", where), *frame, where);
  return p;
}

inline json problem_to_json(const GeneralizedProblem& gp) {
  json instances = json::array();
  for (const auto& p : gp.instances()) instances.push_back(instance_to_json(p));
  return {{"frame", frame_to_json(gp.frame())}, {"instances", instances}};
}

inline GeneralizedProblem problem_from_json(const json& j) {
  auto frame = frame_from_json(detail::field(j, "frame", "problem"));
  GeneralizedProblem gp(frame, {});
  const auto& instances = detail::field(j, "instances", "problem");
  if (!instances.is_array()) throw ParseError("problem: 'instances' must be a list");
  for (const auto& ji : instances) gp.add(instance_from_json(ji, frame));
  return gp;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

inline GeneralizedProblem parse_problem(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  try {
    return problem_from_json(j);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed problem: ") + e.what());
  }
}

inline GeneralizedProblem load_problem(const std::string& path) { return parse_problem(read_file(path)); }

// ----------------------------------------------------------------------- PDDL

namespace detail {

inline bool pddl_name_ok(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (std::isalnum(static_cast<unsigned char>(c)) && !std::isupper(static_cast<unsigned char>(c))) || c == '_' ||
           c == '-';
  });
}

inline void require_pddl_name(std::string_view s, std::string_view what) {
  if (!pddl_name_ok(s)) {
    throw ModelError("cannot export " + std::string(what) + " '" + std::string(s) +
                     "' to PDDL: names must be lowercase letters, digits, '_' or '-', starting with a letter");
  }
}

inline void pddl_literal(std::ostream& out, const Frame& f, Literal l) {
  if (l.positive) {
    out << '(' << f.fluent_name(l.fluent) << ')';
  } else {
    out << "(not (" << f.fluent_name(l.fluent) << "))";
  }
}

inline void pddl_conjunction(std::ostream& out, const Frame& f, const LiteralSet& ls) {
  out << "(and";
  for (auto l : ls) {
    out << ' ';
    pddl_literal(out, f, l);
  }
  out << ')';
}

}  // namespace detail

inline std::string to_pddl_domain(const Frame& f, std::string_view domain = "gpsyn") {
  detail::require_pddl_name(domain, "domain name");
  for (const auto& name : f.fluent_names()) detail::require_pddl_name(name, "fluent");
  std::ostringstream out;
  out << "(define (domain " << domain << ")\n";
  out << "  (:requirements :strips :negative-preconditions :conditional-effects)\n";
  if (!f.declared_conditions().empty()) {
    out << "  ; gpsyn-conditions:";
    for (auto id : f.declared_conditions()) out << ' ' << f.fluent_name(id);
    out << '\n';
  }
  out << "  (:predicates";
  for (const auto& name : f.fluent_names()) out << "\n    (" << name << ')';
  out << ")\n";
  for (const auto& a : f.actions()) {
    detail::require_pddl_name(a.name, "action");
    out << "  (:action " << a.name << "\n    :parameters ()\n    :precondition ";
    detail::pddl_conjunction(out, f, a.pre);
    out << "\n    :effect (and";
    for (const auto& ce : a.effects) {
      out << "\n      (when ";
      detail::pddl_conjunction(out, f, ce.condition);
      out << ' ';
      detail::pddl_conjunction(out, f, ce.effect);
      out << ')';
    }
    out << "))\n";
  }
  out << ")\n";
  return out.str();
}

inline std::string to_pddl_problem(const ClassicalInstance& p, std::string_view domain = "gpsyn") {
  const auto& f = *p.frame;
  auto name = p.name.empty() ? std::string("instance") : p.name;
  detail::require_pddl_name(name, "instance");
  std::ostringstream out;
  out << "(define (problem " << name << ")\n";
  out << "  (:domain " << domain << ")\n";
  out << "  ; gpsyn-label: " << to_string(p.label) << '\n';
  out << "  (:init";
  for (FluentId id = 0; id < f.num_fluents(); ++id) {
    if (p.init.get(id)) out << "\n    (" << f.fluent_name(id) << ')';
  }
  out << ")\n  (:goal ";
  detail::pddl_conjunction(out, f, p.goal);
  out << "))\n";
  return out.str();
}

namespace detail {

struct SExpr {
  std::string atom;  // non-empty for atoms
  std::vector<SExpr> items;
  [[nodiscard]] bool is_atom() const { return !atom.empty(); }
  [[nodiscard]] bool head_is(std::string_view s) const {
    return !is_atom() && !items.empty() && items.front().is_atom() && items.front().atom == s;
  }
};

// Tokenizes PDDL, collecting `; gpsyn-<key>: values` comments on the side.
class PddlReader {
 public:
  explicit PddlReader(std::string_view text) : text_(text) {}

  SExpr parse() {
    skip();
    auto e = expr();
    skip();
    if (pos_ != text_.size()) throw ParseError("PDDL: trailing text after the definition");
    return e;
  }

  [[nodiscard]] const std::map<std::string, std::string>& annotations() const { return notes_; }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == ';') {
        auto nl = text_.find('\n', pos_);
        auto line = text_.substr(pos_ + 1, nl == std::string_view::npos ? std::string_view::npos : nl - pos_ - 1);
        line = trim(line);
        if (line.starts_with("gpsyn-")) {
          auto colon = line.find(':');
          if (colon != std::string_view::npos) {
            notes_[std::string(line.substr(0, colon))] = std::string(trim(line.substr(colon + 1)));
          }
        }
        pos_ = nl == std::string_view::npos ? text_.size() : nl + 1;
      } else {
        break;
      }
    }
  }

  SExpr expr() {
    if (pos_ >= text_.size()) throw ParseError("PDDL: unexpected end of input");
    if (text_[pos_] == ')') throw ParseError("PDDL: unexpected ')'");
    if (text_[pos_] == '(') {
      ++pos_;
      SExpr list;
      for (;;) {
        skip();
        if (pos_ >= text_.size()) throw ParseError("PDDL: unbalanced parentheses");
        if (text_[pos_] == ')') {
          ++pos_;
          return list;
        }
        list.items.push_back(expr());
      }
    }
    const auto start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')' && text_[pos_] != ';') {
      ++pos_;
    }
    SExpr atom;
    atom.atom = std::string(text_.substr(start, pos_ - start));
    std::transform(atom.atom.begin(), atom.atom.end(), atom.atom.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return atom;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::map<std::string, std::string> notes_;
};

inline const SExpr* section(const SExpr& def, std::string_view key) {
  for (const auto& item : def.items) {
    if (item.head_is(key)) return &item;
  }
  return nullptr;
}

inline void literals_into(const SExpr& e, const Frame& f, LiteralSet& out) {
  if (e.head_is("and")) {
    for (std::size_t i = 1; i < e.items.size(); ++i) literals_into(e.items[i], f, out);
    return;
  }
  bool positive = true;
  const SExpr* atom = &e;
  if (e.head_is("not")) {
    if (e.items.size() != 2) throw ParseError("PDDL: malformed (not ...)");
    positive = false;
    atom = &e.items[1];
  }
  if (atom->is_atom() || atom->items.size() != 1 || !atom->items.front().is_atom()) {
    throw ParseError("PDDL: unsupported construct (only ground 0-ary literals, and, not, when)");
  }
  auto id = f.find_fluent(atom->items.front().atom);
  if (!id) throw ParseError("PDDL: unknown predicate '" + atom->items.front().atom + "'");
  try {
    out.insert({*id, positive});
  } catch (const ModelError& err) {
    throw ParseError(std::string("PDDL: ") + err.what());
  }
}

inline LiteralSet literals(const SExpr& e, const Frame& f) {
  LiteralSet out;
  literals_into(e, f, out);
  return out;
}

inline std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace detail

inline FramePtr parse_pddl_domain(std::string_view text) {
  detail::PddlReader reader(text);
  auto def = reader.parse();
  if (!def.head_is("define")) throw ParseError("PDDL: expected (define (domain ...))");
  auto f = std::make_shared<Frame>();
  try {
    if (const auto* preds = detail::section(def, ":predicates")) {
      for (std::size_t i = 1; i < preds->items.size(); ++i) {
        const auto& p = preds->items[i];
        if (p.is_atom() || p.items.size() != 1) throw ParseError("PDDL: only 0-ary predicates are supported");
        f->add_fluent(p.items.front().atom);
      }
    }
    for (const auto& item : def.items) {
      if (!item.head_is(":action")) continue;
      if (item.items.size() < 2 || !item.items[1].is_atom()) throw ParseError("PDDL: action without a name");
      Action a;
      a.name = item.items[1].atom;
      LiteralSet unconditional;
      for (std::size_t i = 2; i + 1 < item.items.size(); i += 2) {
        const auto& key = item.items[i].atom;
        const auto& val = item.items[i + 1];
        if (key == ":parameters") {
          if (!val.items.empty()) throw ParseError("PDDL: action '" + a.name + "' has parameters; only ground actions are supported");
        } else if (key == ":precondition") {
          a.pre = detail::literals(val, *f);
        } else if (key == ":effect") {
          std::vector<const detail::SExpr*> parts;
          if (val.head_is("and")) {
            for (std::size_t k = 1; k < val.items.size(); ++k) parts.push_back(&val.items[k]);
          } else {
            parts.push_back(&val);
          }
          for (const auto* part : parts) {
            if (part->head_is("when")) {
              if (part->items.size() != 3) throw ParseError("PDDL: malformed (when ...)");
              ConditionalEffect ce{detail::literals(part->items[1], *f), detail::literals(part->items[2], *f)};
              if (!ce.effect.empty()) a.effects.push_back(std::move(ce));
            } else {
              detail::literals_into(*part, *f, unconditional);
            }
          }
        } else {
          throw ParseError("PDDL: unsupported action field '" + key + "'");
        }
      }
      if (!unconditional.empty()) a.effects.insert(a.effects.begin(), ConditionalEffect{{}, unconditional});
      f->add_action(std::move(a));
    }
    if (auto it = reader.annotations().find("gpsyn-conditions"); it != reader.annotations().end()) {
      std::vector<FluentId> cond;
      for (const auto& w : detail::words(it->second)) cond.push_back(f->fluent(w));
      f->set_conditions(std::move(cond));
    }
  } catch (const ModelError& e) {
    throw ParseError(std::string("PDDL domain: ") + e.what());
  }
  return f;
}

inline ClassicalInstance parse_pddl_problem(std::string_view text, const FramePtr& frame) {
  detail::PddlReader reader(text);
  auto def = reader.parse();
  if (!def.head_is("define")) throw ParseError("PDDL: expected (define (problem ...))");
  ClassicalInstance p{frame, State(frame->num_fluents()), {}, Label::Positive, ""};
  if (const auto* name = detail::section(def, "problem"); name && name->items.size() == 2) p.name = name->items[1].atom;
  if (const auto* init = detail::section(def, ":init")) {
    for (std::size_t i = 1; i < init->items.size(); ++i) {
      auto lits = detail::literals(init->items[i], *frame);
      for (auto l : lits) {
        if (!l.positive) throw ParseError("PDDL: negative literal in :init");
        p.init.set(l.fluent, true);
      }
    }
  }
  const auto* goal = detail::section(def, ":goal");
  if (!goal || goal->items.size() != 2) throw ParseError("PDDL: problem without a goal");
  p.goal = detail::literals(goal->items[1], *frame);
  if (auto it = reader.annotations().find("gpsyn-label"); it != reader.annotations().end()) {
    if (it->second == "negative") {
      p.label = Label::Negative;
    } else if (it->second != "positive") {
      throw ParseError("PDDL: bad gpsyn-label '" + it->second + "'");
    }
  }
  return p;
}

}  // namespace gpsyn
