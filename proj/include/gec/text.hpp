// SPDX-License-Identifier: Apache-2.0
#ifndef GEC_TEXT_HPP
#define GEC_TEXT_HPP

#include "gec/utf8.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace gec {

/// Half-open byte range [start, end).
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - start; }
  bool contains(const Span &o) const noexcept { return start <= o.start && o.end <= end; }
  bool overlaps(const Span &o) const noexcept { return start < o.end && o.start < end; }

  friend bool operator==(const Span &, const Span &) = default;
  friend auto operator<=>(const Span &, const Span &) = default;
};

enum class TokenKind { Word, Punctuation, Whitespace };

inline const char *to_string(TokenKind k) noexcept {
  switch (k) {
  case TokenKind::Word: return "word";
  case TokenKind::Punctuation: return "punct";
  case TokenKind::Whitespace: return "ws";
  }
  return "?";
}

struct Token {
  std::string text;
  TokenKind kind = TokenKind::Word;
  Span span;

  friend bool operator==(const Token &, const Token &) = default;
};

/// A sentence-sized slice of a larger text. Token spans are relative to
/// `source`; `offset` locates `source` inside the parent text.
struct Sentence {
  std::string source;
  std::vector<Token> tokens;
  std::size_t offset = 0;
};

namespace detail {

inline TokenKind token_kind_of(char32_t c) noexcept {
  switch (utf8::classify(c)) {
  case utf8::CharClass::Whitespace: return TokenKind::Whitespace;
  case utf8::CharClass::Punctuation: return TokenKind::Punctuation;
  default: return TokenKind::Word;
  }
}

} // namespace detail

/// Lossless segmentation into maximal word runs, maximal whitespace runs and
/// single punctuation scalars. Throws Utf8Error on malformed input.
inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto first = utf8::decode(text, pos);
    const TokenKind kind = detail::token_kind_of(first.scalar);
    std::size_t end = pos + first.length;
    if (kind != TokenKind::Punctuation) {
      while (end < text.size()) {
        const auto next = utf8::decode(text, end);
        if (detail::token_kind_of(next.scalar) != kind)
          break;
        end += next.length;
      }
    }
    out.push_back(Token{std::string(text.substr(pos, end - pos)), kind, {pos, end}});
    pos = end;
  }
  return out;
}

inline std::string detokenize(const std::vector<Token> &tokens) {
  std::string out;
  for (const auto &t : tokens)
    out += t.text;
  return out;
}

/// Splits after '.', '?' or '!' when followed by whitespace or end of input.
/// Trailing whitespace stays with the preceding sentence, so the sources of
/// the returned sentences concatenate back to `text`.
inline std::vector<Sentence> split_sentences(std::string_view text) {
  const auto tokens = tokenize(text);
  std::vector<Sentence> out;
  std::size_t begin = 0;
  auto flush = [&](std::size_t end_index) {
    if (begin >= end_index)
      return;
    Sentence s;
    s.offset = tokens[begin].span.start;
    for (std::size_t i = begin; i < end_index; ++i) {
      Token t = tokens[i];
      t.span.start -= s.offset;
      t.span.end -= s.offset;
      s.source += t.text;
      s.tokens.push_back(std::move(t));
    }
    out.push_back(std::move(s));
    begin = end_index;
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto &t = tokens[i];
    const bool terminal = t.kind == TokenKind::Punctuation &&
                          (t.text == "." || t.text == "?" || t.text == "!");
    if (!terminal)
      continue;
    if (i + 1 == tokens.size()) {
      flush(i + 1);
    } else if (tokens[i + 1].kind == TokenKind::Whitespace) {
      flush(i + 2);
      ++i;
    }
  }
  flush(tokens.size());
  return out;
}

/// Indices into `tokens` of the Word tokens, in order.
inline std::vector<std::size_t> word_indices(const std::vector<Token> &tokens) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tokens.size(); ++i)
    if (tokens[i].kind == TokenKind::Word)
      out.push_back(i);
  return out;
}

/// Word and punctuation texts, whitespace dropped. Used by the scorers.
inline std::vector<std::string> scoring_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (auto &t : tokenize(text))
    if (t.kind != TokenKind::Whitespace)
      out.push_back(std::move(t.text));
  return out;
}

} // namespace gec

#endif // GEC_TEXT_HPP
