// SPDX-License-Identifier: Apache-2.0
#ifndef GEC_DIAGNOSTIC_HPP
#define GEC_DIAGNOSTIC_HPP

#include "gec/text.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace gec {

enum class DiagnosticKind { NonWord, GrammarRule, Logical };

inline const char *to_string(DiagnosticKind k) noexcept {
  switch (k) {
  case DiagnosticKind::NonWord: return "non_word";
  case DiagnosticKind::GrammarRule: return "grammar_rule";
  case DiagnosticKind::Logical: return "logical";
  }
  return "?";
}

inline std::optional<DiagnosticKind> parse_diagnostic_kind(std::string_view s) {
  if (s == "non_word") return DiagnosticKind::NonWord;
  if (s == "grammar_rule") return DiagnosticKind::GrammarRule;
  if (s == "logical") return DiagnosticKind::Logical;
  return std::nullopt;
}

struct Suggestion {
  std::string replacement;
  std::size_t distance = 0;
  double score = 0.0;

  friend bool operator==(const Suggestion &, const Suggestion &) = default;
};

/// Ascending distance, then descending score, then bytewise replacement.
inline bool suggestion_before(const Suggestion &a, const Suggestion &b) noexcept {
  if (a.distance != b.distance)
    return a.distance < b.distance;
  if (a.score != b.score)
    return a.score > b.score;
  return a.replacement < b.replacement;
}

/// A detected error. `span` is a byte range of the checked text;
/// `rule_id` is set iff kind != NonWord.
struct Diagnostic {
  Span span;
  std::string observed;
  DiagnosticKind kind = DiagnosticKind::NonWord;
  std::vector<Suggestion> suggestions;
  std::optional<std::string> rule_id;
  std::string message;

  friend bool operator==(const Diagnostic &, const Diagnostic &) = default;
};

inline bool diagnostic_before(const Diagnostic &a, const Diagnostic &b) {
  return std::tie(a.span, a.kind, a.rule_id) < std::tie(b.span, b.kind, b.rule_id);
}

inline void sort_diagnostics(std::vector<Diagnostic> &diags) {
  std::stable_sort(diags.begin(), diags.end(), diagnostic_before);
}

} // namespace gec

#endif // GEC_DIAGNOSTIC_HPP
