// SPDX-License-Identifier: Apache-2.0
#ifndef GEC_CORRECTOR_HPP
#define GEC_CORRECTOR_HPP

#include "gec/diagnostic.hpp"
#include "gec/distance.hpp"
#include "gec/error.hpp"
#include "gec/lexicon.hpp"
#include "gec/rules.hpp"
#include "gec/text.hpp"
#include "gec/utf8.hpp"

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

namespace gec {

struct SuggestLimits {
  std::size_t max_distance = 2;
  std::size_t top_n = 5;
  EditMetric metric = EditMetric::Levenshtein;
};

struct CheckOptions {
  SuggestLimits limits;
  bool rules_enabled = true;
  /// Accept a word whose exact form is missing when its case-folded form
  /// matches a folded entry.
  bool case_fallback = false;
};

/// Per-call counters describing which branch of the decision each word took.
struct CheckTrace {
  std::size_t words_checked = 0;
  std::size_t bloom_negative = 0;
  std::size_t bloom_false_positive = 0;
  std::size_t confirmed = 0;
  std::size_t case_fallback_hits = 0;
};

/// Ranked corrections for `w`: entries within max_distance ordered by
/// distance, descending corpus count, then bytes; at most top_n.
inline std::vector<Suggestion> lev_suggest(const Lexicon &lex, std::string_view w,
                                           const SuggestLimits &limits = {}) {
  if (w.empty())
    throw ParameterError("cannot suggest for an empty word");
  if (limits.max_distance < 1 || limits.top_n < 1)
    throw ParameterError("d_max and top_n must be >= 1");
  std::vector<Suggestion> out;
  for (auto &m : lex.words_within_distance(w, limits.max_distance, limits.metric))
    out.push_back({std::move(m.word), m.distance, static_cast<double>(m.count)});
  std::sort(out.begin(), out.end(), suggestion_before);
  if (out.size() > limits.top_n)
    out.resize(limits.top_n);
  return out;
}

/// True for word tokens the dictionary check applies to: at least one
/// letter and no digit. Single letters are checked like any other word.
inline bool is_checkable_word(std::string_view w) {
  bool letter = false;
  for (std::size_t pos = 0; pos < w.size();) {
    const auto d = utf8::decode(w, pos);
    const auto cls = utf8::classify(d.scalar);
    if (cls == utf8::CharClass::Digit)
      return false;
    letter = letter || cls == utf8::CharClass::Letter;
    pos += d.length;
  }
  return letter;
}

/// The correction pipeline. Each checkable word goes through the Bloom
/// filter first; a negative answer goes straight to correction. A positive
/// answer is confirmed against the trie, so Bloom false positives are still
/// reported. Grammar rules then run per sentence; a rule finding that
/// overlaps a non-word finding is dropped. Output is sorted by span.
inline std::vector<Diagnostic> check_text(const Lexicon &lex, const RulePack &rules,
                                          std::string_view text, const CheckOptions &opts = {},
                                          CheckTrace *trace = nullptr) {
  CheckTrace local;
  CheckTrace &tr = trace ? *trace : local;
  std::vector<Diagnostic> out;
  for (const auto &sentence : split_sentences(text)) {
    std::vector<Diagnostic> nonwords;
    for (const auto &tok : sentence.tokens) {
      if (tok.kind != TokenKind::Word || !is_checkable_word(tok.text))
        continue;
      ++tr.words_checked;
      bool known;
      if (!lex.bloom_query(tok.text)) {
        ++tr.bloom_negative;
        known = false;
      } else if (!lex.contains(tok.text)) {
        ++tr.bloom_false_positive;
        known = false;
      } else {
        ++tr.confirmed;
        known = true;
      }
      if (!known && opts.case_fallback && lex.contains_folded(tok.text)) {
        ++tr.case_fallback_hits;
        known = true;
      }
      if (known)
        continue;
      Diagnostic d;
      d.span = {tok.span.start + sentence.offset, tok.span.end + sentence.offset};
      d.observed = tok.text;
      d.kind = DiagnosticKind::NonWord;
      d.suggestions = lev_suggest(lex, tok.text, opts.limits);
      d.message = "word not in lexicon";
      nonwords.push_back(std::move(d));
    }
    if (opts.rules_enabled && !rules.empty()) {
      for (auto &d : grammatical_check(rules, sentence)) {
        const bool shadowed = std::any_of(nonwords.begin(), nonwords.end(),
                                          [&](const Diagnostic &n) { return n.span.overlaps(d.span); });
        if (!shadowed)
          out.push_back(std::move(d));
      }
    }
    for (auto &d : nonwords)
      out.push_back(std::move(d));
  }
  sort_diagnostics(out);
  return out;
}

struct Edit {
  Span span;
  std::string replacement;

  friend bool operator==(const Edit &, const Edit &) = default;
};

using EditScript = std::vector<Edit>;

namespace detail {

inline bool on_boundary(std::string_view text, std::size_t pos) {
  return pos == text.size() || (static_cast<unsigned char>(text[pos]) & 0xC0) != 0x80;
}

} // namespace detail

/// Applies all edits or none. Edits may be given in any order; after
/// sorting they must be in bounds, on scalar boundaries and non-overlapping
/// (two insertions at the same offset count as overlapping).
inline std::string apply_edits(std::string_view text, EditScript script) {
  std::stable_sort(script.begin(), script.end(),
                   [](const Edit &a, const Edit &b) { return a.span < b.span; });
  for (std::size_t i = 0; i < script.size(); ++i) {
    const auto &e = script[i];
    if (e.span.start > e.span.end || e.span.end > text.size())
      throw EditError("edit [" + std::to_string(e.span.start) + ", " + std::to_string(e.span.end) +
                      ") is out of bounds");
    if (!detail::on_boundary(text, e.span.start) || !detail::on_boundary(text, e.span.end))
      throw EditError("edit splits a UTF-8 sequence");
    if (i > 0) {
      const auto &p = script[i - 1].span;
      if (p.end > e.span.start || (p == e.span && p.size() == 0))
        throw EditError("edits overlap");
    }
  }
  std::string out(text);
  for (auto it = script.rbegin(); it != script.rend(); ++it)
    out.replace(it->span.start, it->span.size(), it->replacement);
  return out;
}

/// Top suggestion of every diagnostic that has one, skipping diagnostics
/// overlapping an earlier accepted one.
inline EditScript top_suggestion_edits(const std::vector<Diagnostic> &diags) {
  EditScript out;
  for (const auto &d : diags) {
    if (d.suggestions.empty())
      continue;
    if (!out.empty() && out.back().span.end > d.span.start)
      continue;
    out.push_back({d.span, d.suggestions.front().replacement});
  }
  return out;
}

} // namespace gec

#endif // GEC_CORRECTOR_HPP
