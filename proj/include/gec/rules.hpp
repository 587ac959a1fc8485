// SPDX-License-Identifier: Apache-2.0
#ifndef GEC_RULES_HPP
#define GEC_RULES_HPP

#include "gec/diagnostic.hpp"
#include "gec/distance.hpp"
#include "gec/error.hpp"
#include "gec/text.hpp"
#include "gec/utf8.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

// Rule pack format (line oriented, UTF-8, '#' starts a comment line):
//
//   class <name> = <word> <word> ...
//   <id> | <severity>[:<kind>] | <pattern> | <condition> | <fix> | <description>
//
// severity: error | suggestion. kind: grammar (default) | logical.
// A literal '|' inside a field is written "\|".
//
// Pattern atoms, separated by spaces, each matching one non-whitespace token:
//   word       literal, compared case-insensitively
//   @name      token is in class <name>; builtins @word @punct @any
//   %name      token contains one of the strings of class <name>
//   /regex/    ECMAScript regex matched against the whole token (on UTF-8 bytes)
//   _          gap of 0 to 3 tokens (not allowed first or last)
//   \word      literal, for words starting with one of the sigils above
// Atoms are numbered $1..$n left to right, gaps included.
//
// Condition: "-" or clauses joined by " and ":
//   absent <word|@class> in $N      present <word|@class> in $N
//
// Fix: "-" (flag only) or actions joined by ";":
//   insert-after $N <text>   insert-before $N <text>   replace $N <text>
//   delete $N                sub $N /regex/format/

namespace gec {

class RulePack;

namespace rules {

enum class Severity { Error, Suggestion };

inline const char *to_string(Severity s) noexcept {
  return s == Severity::Error ? "error" : "suggestion";
}

struct Atom {
  enum class Kind { Literal, Class, Contains, Regex, Gap };
  Kind kind = Kind::Literal;
  std::string text; // folded literal or class name
  std::regex re;
};

struct Clause {
  bool absent = true;
  std::string word; // folded, or "@class"
  std::size_t capture = 0; // 0-based atom index
};

struct Action {
  enum class Kind { InsertAfter, InsertBefore, Replace, Delete, Substitute };
  Kind kind = Kind::Replace;
  std::size_t capture = 0;
  std::string text;
  std::regex re;
};

/// Half-open range of unit indices captured by each atom.
using Captures = std::vector<std::pair<std::size_t, std::size_t>>;

inline constexpr std::size_t max_gap = 3;

} // namespace rules

struct GrammarRule {
  std::string id;
  std::string description;
  rules::Severity severity = rules::Severity::Error;
  DiagnosticKind kind = DiagnosticKind::GrammarRule;
  std::vector<rules::Atom> pattern;
  std::vector<rules::Clause> condition;
  std::vector<rules::Action> fix;
  std::size_t line = 0;
};

class RulePack {
public:
  static RulePack parse(std::istream &in);
  static RulePack parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse(in);
  }

  const std::vector<GrammarRule> &rules() const noexcept { return rules_; }
  bool empty() const noexcept { return rules_.empty(); }

  bool in_class(std::string_view cls, std::string_view folded_word) const {
    auto it = classes_.find(std::string(cls));
    return it != classes_.end() && it->second.count(std::string(folded_word)) != 0;
  }

  const std::set<std::string> *class_words(std::string_view cls) const {
    auto it = classes_.find(std::string(cls));
    return it == classes_.end() ? nullptr : &it->second;
  }

private:
  std::vector<GrammarRule> rules_;
  std::map<std::string, std::set<std::string>> classes_;
};

namespace rules::detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w)
    out.push_back(w);
  return out;
}

inline std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out(1);
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '\\' && i + 1 < line.size() && line[i + 1] == '|') {
      out.back().push_back('|');
      ++i;
    } else if (line[i] == '|') {
      out.emplace_back();
    } else {
      out.back().push_back(line[i]);
    }
  }
  for (auto &f : out)
    f = trim(f);
  return out;
}

inline std::regex compile(const std::string &re, std::size_t line) {
  try {
    return std::regex(re, std::regex::ECMAScript);
  } catch (const std::regex_error &e) {
    throw ParseError("bad regex /" + re + "/: " + e.what(), line);
  }
}

inline std::size_t parse_capture(std::string_view s, std::size_t atoms, std::size_t line) {
  if (s.size() < 2 || s[0] != '$')
    throw ParseError("expected capture reference $N, got '" + std::string(s) + "'", line);
  std::size_t n = 0;
  for (char c : s.substr(1)) {
    if (c < '0' || c > '9')
      throw ParseError("bad capture reference '" + std::string(s) + "'", line);
    n = n * 10 + static_cast<std::size_t>(c - '0');
  }
  if (n == 0 || n > atoms)
    throw ParseError("capture " + std::string(s) + " out of range", line);
  return n - 1;
}

// Splits "/a/b/" into {"a", "b"}; "\/" escapes a slash.
inline std::pair<std::string, std::string> split_substitution(std::string_view s, std::size_t line) {
  std::vector<std::string> parts(1);
  if (s.empty() || s.front() != '/')
    throw ParseError("sub expects /regex/format/", line);
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size() && s[i + 1] == '/') {
      parts.back().push_back('/');
      ++i;
    } else if (s[i] == '/') {
      parts.emplace_back();
    } else {
      parts.back().push_back(s[i]);
    }
  }
  if (parts.size() != 3 || !parts[2].empty() || s.back() != '/')
    throw ParseError("sub expects /regex/format/", line);
  return {parts[0], parts[1]};
}

} // namespace rules::detail

inline RulePack RulePack::parse(std::istream &in) {
  using namespace rules;
  using namespace rules::detail;
  RulePack pack;
  std::set<std::string> ids;
  std::string raw;
  std::size_t lineno = 0;
  struct Pending {
    std::vector<std::string> fields;
    std::size_t line;
  };
  std::vector<Pending> pending;

  while (std::getline(in, raw)) {
    ++lineno;
    if (!utf8::is_valid(raw))
      throw ParseError("rule pack line is not valid UTF-8", lineno);
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#')
      continue;
    if (line.rfind("class ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ParseError("class definition needs '='", lineno);
      const std::string name = trim(std::string_view(line).substr(6, eq - 6));
      if (name.empty() || name.find(' ') != std::string::npos)
        throw ParseError("bad class name '" + name + "'", lineno);
      if (name == "word" || name == "punct" || name == "any")
        throw ParseError("class name '" + name + "' is reserved", lineno);
      auto &words = pack.classes_[name];
      for (const auto &w : split_ws(std::string_view(line).substr(eq + 1)))
        words.insert(utf8::fold_case(w));
      continue;
    }
    auto fields = split_fields(line);
    if (fields.size() != 6)
      throw ParseError("rule needs 6 '|'-separated fields, found " + std::to_string(fields.size()),
                       lineno);
    pending.push_back({std::move(fields), lineno});
  }

  // Rules are compiled after all classes are known.
  for (auto &[f, line] : pending) {
    GrammarRule rule;
    rule.line = line;
    rule.id = f[0];
    if (rule.id.empty() || rule.id.find(' ') != std::string::npos)
      throw ParseError("bad rule id '" + rule.id + "'", line);
    if (!ids.insert(rule.id).second)
      throw ParseError("duplicate rule id '" + rule.id + "'", line);

    std::string sev = f[1];
    std::string kind = "grammar";
    if (auto colon = sev.find(':'); colon != std::string::npos) {
      kind = sev.substr(colon + 1);
      sev = sev.substr(0, colon);
    }
    if (sev == "error")
      rule.severity = Severity::Error;
    else if (sev == "suggestion")
      rule.severity = Severity::Suggestion;
    else
      throw ParseError("unknown severity '" + sev + "'", line);
    if (kind == "grammar")
      rule.kind = DiagnosticKind::GrammarRule;
    else if (kind == "logical")
      rule.kind = DiagnosticKind::Logical;
    else
      throw ParseError("unknown rule kind '" + kind + "'", line);

    for (const auto &a : split_ws(f[2])) {
      Atom atom;
      if (a == "_") {
        atom.kind = Atom::Kind::Gap;
      } else if (a[0] == '\\' && a.size() > 1) {
        atom.text = utf8::fold_case(std::string_view(a).substr(1));
      } else if (a[0] == '@' || a[0] == '%') {
        atom.kind = a[0] == '@' ? Atom::Kind::Class : Atom::Kind::Contains;
        atom.text = a.substr(1);
        const bool builtin = atom.kind == Atom::Kind::Class &&
                             (atom.text == "word" || atom.text == "punct" || atom.text == "any");
        if (!builtin && !pack.classes_.count(atom.text))
          throw ParseError("unknown class '" + atom.text + "'", line);
      } else if (a.size() >= 3 && a.front() == '/' && a.back() == '/') {
        atom.kind = Atom::Kind::Regex;
        atom.re = compile(a.substr(1, a.size() - 2), line);
      } else {
        atom.text = utf8::fold_case(a);
      }
      rule.pattern.push_back(std::move(atom));
    }
    if (rule.pattern.empty())
      throw ParseError("empty pattern", line);
    if (rule.pattern.front().kind == Atom::Kind::Gap || rule.pattern.back().kind == Atom::Kind::Gap)
      throw ParseError("pattern may not start or end with a gap", line);
    const std::size_t n = rule.pattern.size();

    if (f[3] != "-") {
      std::string rest = f[3];
      std::vector<std::string> clauses;
      for (std::size_t pos; (pos = rest.find(" and ")) != std::string::npos;) {
        clauses.push_back(rest.substr(0, pos));
        rest = rest.substr(pos + 5);
      }
      clauses.push_back(rest);
      for (const auto &c : clauses) {
        const auto w = split_ws(c);
        if (w.size() != 4 || (w[0] != "absent" && w[0] != "present") || w[2] != "in")
          throw ParseError("bad condition '" + trim(c) + "'", line);
        Clause cl;
        cl.absent = w[0] == "absent";
        cl.word = w[1][0] == '@' ? w[1] : utf8::fold_case(w[1]);
        if (w[1][0] == '@' && !pack.classes_.count(w[1].substr(1)))
          throw ParseError("unknown class '" + w[1].substr(1) + "'", line);
        cl.capture = parse_capture(w[3], n, line);
        rule.condition.push_back(std::move(cl));
      }
    }

    if (f[4] != "-") {
      std::set<std::size_t> rewritten;
      std::stringstream actions(f[4]);
      std::string act;
      while (std::getline(actions, act, ';')) {
        act = trim(act);
        const auto sp1 = act.find(' ');
        if (sp1 == std::string::npos)
          throw ParseError("bad fix action '" + act + "'", line);
        const std::string verb = act.substr(0, sp1);
        std::string tail = trim(std::string_view(act).substr(sp1 + 1));
        const auto sp2 = tail.find(' ');
        const std::string cap = tail.substr(0, sp2);
        const std::string arg = sp2 == std::string::npos ? "" : trim(std::string_view(tail).substr(sp2 + 1));
        Action action;
        action.capture = parse_capture(cap, n, line);
        if (rule.pattern[action.capture].kind == Atom::Kind::Gap)
          throw ParseError("fix cannot target a gap", line);
        if (verb == "insert-after" || verb == "insert-before") {
          action.kind = verb == "insert-after" ? Action::Kind::InsertAfter : Action::Kind::InsertBefore;
          if (arg.empty())
            throw ParseError(verb + " needs text", line);
          action.text = arg;
        } else if (verb == "replace" || verb == "delete" || verb == "sub") {
          if (!rewritten.insert(action.capture).second)
            throw ParseError("capture rewritten twice", line);
          if (verb == "replace") {
            if (arg.empty())
              throw ParseError("replace needs text", line);
            action.kind = Action::Kind::Replace;
            action.text = arg;
          } else if (verb == "delete") {
            if (!arg.empty())
              throw ParseError("delete takes no text", line);
            action.kind = Action::Kind::Delete;
          } else {
            auto [re, fmt] = split_substitution(arg, line);
            action.kind = Action::Kind::Substitute;
            action.re = compile(re, line);
            action.text = fmt;
          }
        } else {
          throw ParseError("unknown fix action '" + verb + "'", line);
        }
        rule.fix.push_back(std::move(action));
      }
    }
    rule.description = f[5];
    pack.rules_.push_back(std::move(rule));
  }
  return pack;
}

namespace rules::detail {

/// Non-whitespace tokens of a sentence, with their folded text.
struct Unit {
  std::size_t token;
  std::string folded;
};

inline bool atom_matches(const RulePack &pack, const Atom &atom, const Token &tok,
                         const std::string &folded) {
  switch (atom.kind) {
  case Atom::Kind::Literal:
    return folded == atom.text;
  case Atom::Kind::Class:
    if (atom.text == "any")
      return true;
    if (atom.text == "word")
      return tok.kind == TokenKind::Word;
    if (atom.text == "punct")
      return tok.kind == TokenKind::Punctuation;
    return pack.in_class(atom.text, folded);
  case Atom::Kind::Contains:
    if (const auto *words = pack.class_words(atom.text))
      return std::any_of(words->begin(), words->end(), [&](const std::string &w) {
        return !w.empty() && folded.find(w) != std::string::npos;
      });
    return false;
  case Atom::Kind::Regex:
    return std::regex_match(tok.text, atom.re);
  case Atom::Kind::Gap:
    return true;
  }
  return false;
}

inline bool condition_holds(const RulePack &pack, const GrammarRule &rule,
                            const std::vector<Unit> &units, const Captures &caps) {
  for (const auto &cl : rule.condition) {
    const auto [b, e] = caps[cl.capture];
    bool found = false;
    for (std::size_t u = b; u < e && !found; ++u) {
      if (cl.word[0] == '@')
        found = pack.in_class(std::string_view(cl.word).substr(1), units[u].folded);
      else
        found = units[u].folded == cl.word;
    }
    if (found == cl.absent)
      return false;
  }
  return true;
}

inline bool match_from(const RulePack &pack, const GrammarRule &rule, const Sentence &s,
                       const std::vector<Unit> &units, std::size_t atom, std::size_t unit,
                       Captures &caps) {
  if (atom == rule.pattern.size())
    return condition_holds(pack, rule, units, caps);
  const auto &a = rule.pattern[atom];
  if (a.kind == Atom::Kind::Gap) {
    for (std::size_t len = 0; len <= max_gap && unit + len <= units.size(); ++len) {
      caps[atom] = {unit, unit + len};
      if (match_from(pack, rule, s, units, atom + 1, unit + len, caps))
        return true;
    }
    return false;
  }
  if (unit >= units.size())
    return false;
  if (!atom_matches(pack, a, s.tokens[units[unit].token], units[unit].folded))
    return false;
  caps[atom] = {unit, unit + 1};
  return match_from(pack, rule, s, units, atom + 1, unit + 1, caps);
}

/// Rewrites tokens [first, last] of the sentence according to the fix.
inline std::string render_fix(const GrammarRule &rule, const Sentence &s,
                              const std::vector<Unit> &units, const Captures &caps,
                              std::size_t first, std::size_t last) {
  std::map<std::size_t, std::vector<const Action *>> by_token;
  for (const auto &act : rule.fix)
    by_token[units[caps[act.capture].first].token].push_back(&act);

  std::string out;
  std::size_t trailing_ws = 0; // bytes of whitespace just emitted
  bool skip_ws = false;
  for (std::size_t t = first; t <= last; ++t) {
    const Token &tok = s.tokens[t];
    if (tok.kind == TokenKind::Whitespace) {
      if (skip_ws) {
        skip_ws = false;
        continue;
      }
      out += tok.text;
      trailing_ws = tok.text.size();
      continue;
    }
    skip_ws = false;
    auto it = by_token.find(t);
    if (it == by_token.end()) {
      out += tok.text;
      trailing_ws = 0;
      continue;
    }
    std::string body = tok.text;
    bool deleted = false;
    std::string before, after;
    for (const Action *act : it->second) {
      switch (act->kind) {
      case Action::Kind::InsertBefore: before += act->text + " "; break;
      case Action::Kind::InsertAfter: after += " " + act->text; break;
      case Action::Kind::Replace: body = act->text; break;
      case Action::Kind::Substitute: body = std::regex_replace(tok.text, act->re, act->text); break;
      case Action::Kind::Delete: deleted = true; break;
      }
    }
    if (deleted && before.empty() && after.empty()) {
      if (t + 1 <= last && s.tokens[t + 1].kind == TokenKind::Whitespace)
        skip_ws = true;
      else if (trailing_ws)
        out.resize(out.size() - trailing_ws);
      trailing_ws = 0;
      continue;
    }
    out += before;
    if (!deleted)
      out += body;
    out += after;
    trailing_ws = 0;
  }
  return out;
}

} // namespace rules::detail

/// Runs every rule of the pack over one sentence. Each rule reports
/// non-overlapping matches left to right; a match is the first assignment
/// (shortest gaps first) satisfying both the pattern and the condition.
/// Spans are offsets into the parent text (sentence.offset applied).
inline std::vector<Diagnostic> grammatical_check(const RulePack &pack, const Sentence &sentence) {
  using namespace rules;
  using namespace rules::detail;
  std::vector<Unit> units;
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i)
    if (sentence.tokens[i].kind != TokenKind::Whitespace)
      units.push_back({i, utf8::fold_case(sentence.tokens[i].text)});

  std::vector<Diagnostic> out;
  for (const auto &rule : pack.rules()) {
    Captures caps(rule.pattern.size());
    for (std::size_t start = 0; start < units.size();) {
      if (!match_from(pack, rule, sentence, units, 0, start, caps)) {
        ++start;
        continue;
      }
      const std::size_t first = units[caps.front().first].token;
      const std::size_t last = units[caps.back().second - 1].token;
      const Span local{sentence.tokens[first].span.start, sentence.tokens[last].span.end};
      Diagnostic d;
      d.span = {local.start + sentence.offset, local.end + sentence.offset};
      d.observed = sentence.source.substr(local.start, local.size());
      d.kind = rule.kind;
      d.rule_id = rule.id;
      d.message = rule.description;
      if (!rule.fix.empty()) {
        std::string fixed = render_fix(rule, sentence, units, caps, first, last);
        if (fixed != d.observed) {
          const auto dist = levenshtein(d.observed, fixed);
          d.suggestions.push_back({std::move(fixed), dist, 1.0});
        }
      }
      out.push_back(std::move(d));
      start = caps.back().second;
    }
  }
  sort_diagnostics(out);
  return out;
}

/// Illustrative Zarma pack: future marker after "souba", vowel length and
/// consonant clusters. Word lists are samples, not a grammar of the language.
inline constexpr std::string_view default_zarma_rules = R"(# Zarma demonstration rule pack
class subject = ay ni a iri araŋ i
class verb = koy kaa dira kani ci di ne hima
class forbidden_cluster = bk db dk gb gk kd kg pd pk td tk tp

future-after-souba | error:logical | souba _ @subject _ @verb | absent ga in $4 | insert-after $3 ga | "souba" (tomorrow) needs the future marker "ga" after the subject
vowel-length | suggestion | /.*([aeiouAEIOU])\1\1.*/ | - | sub $1 /([aeiouAEIOU])\1\1+/$1$1/ | a vowel is written at most twice
consonant-cluster | suggestion | %forbidden_cluster | - | - | consonant cluster not used in standard spelling
)";

} // namespace gec

#endif // GEC_RULES_HPP
