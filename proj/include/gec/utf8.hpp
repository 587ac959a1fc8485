// SPDX-License-Identifier: Apache-2.0
#ifndef GEC_UTF8_HPP
#define GEC_UTF8_HPP

#include "gec/error.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace gec::utf8 {

struct Decoded {
  char32_t scalar;
  std::size_t length; // bytes consumed
};

/// Decodes one scalar starting at `pos`. Rejects overlong forms, surrogates
/// and values above U+10FFFF.
inline Decoded decode(std::string_view s, std::size_t pos) {
  auto byte = [&](std::size_t i) -> unsigned {
    return static_cast<unsigned char>(s[i]);
  };
  const unsigned b0 = byte(pos);
  if (b0 < 0x80)
    return {b0, 1};

  std::size_t len;
  char32_t cp;
  char32_t min;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
    min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
    min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
    min = 0x10000;
  } else {
    throw Utf8Error(pos);
  }
  if (pos + len > s.size())
    throw Utf8Error(pos);
  for (std::size_t i = 1; i < len; ++i) {
    const unsigned b = byte(pos + i);
    if ((b & 0xC0) != 0x80)
      throw Utf8Error(pos);
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
    throw Utf8Error(pos);
  return {cp, len};
}

inline void validate(std::string_view s) {
  for (std::size_t pos = 0; pos < s.size();)
    pos += decode(s, pos).length;
}

inline bool is_valid(std::string_view s) noexcept {
  try {
    validate(s);
    return true;
  } catch (const Utf8Error &) {
    return false;
  }
}

inline void append(std::string &out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::u32string to_scalars(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  for (std::size_t pos = 0; pos < s.size();) {
    const auto d = decode(s, pos);
    out.push_back(d.scalar);
    pos += d.length;
  }
  return out;
}

inline std::string from_scalars(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t cp : s)
    append(out, cp);
  return out;
}

inline std::size_t scalar_count(std::string_view s) {
  std::size_t n = 0;
  for (std::size_t pos = 0; pos < s.size(); ++n)
    pos += decode(s, pos).length;
  return n;
}

// Character classes. No Unicode database is linked; the tables cover the
// whitespace, punctuation and combining-mark blocks that show up in Latin,
// Greek, Cyrillic and West-African orthographies. Anything unlisted above
// U+007F is a letter.

enum class CharClass : std::uint8_t { Letter, Mark, Digit, Apostrophe, Punctuation, Whitespace };

inline bool is_whitespace(char32_t c) noexcept {
  switch (c) {
  case U'\t': case U'\n': case U'\v': case U'\f': case U'\r': case U' ':
  case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
  case 0x202F: case 0x205F: case 0x3000:
    return true;
  default:
    return c >= 0x2000 && c <= 0x200A;
  }
}

inline bool is_mark(char32_t c) noexcept {
  return (c >= 0x0300 && c <= 0x036F) || (c >= 0x0483 && c <= 0x0489) ||
         (c >= 0x1AB0 && c <= 0x1AFF) || (c >= 0x1DC0 && c <= 0x1DFF) ||
         (c >= 0x20D0 && c <= 0x20FF) || (c >= 0xFE20 && c <= 0xFE2F);
}

inline bool is_apostrophe(char32_t c) noexcept {
  return c == U'\'' || c == 0x2019 || c == 0x02BC;
}

inline bool is_punctuation(char32_t c) noexcept {
  if (c < 0x80)
    return c < 0x20 || c == 0x7F ||
           (c > 0x20 && c < 0x30 && c != U'\'') || (c >= 0x3A && c <= 0x40) ||
           (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E);
  if (is_apostrophe(c))
    return false;
  return (c >= 0x80 && c <= 0x9F && c != 0x85) ||
         (c >= 0xA1 && c <= 0xBF && c != 0xAA && c != 0xB5 && c != 0xBA) ||
         c == 0xD7 || c == 0xF7 || (c >= 0x2010 && c <= 0x2027) ||
         (c >= 0x2030 && c <= 0x205E) || (c >= 0x20A0 && c <= 0x20CF) ||
         (c >= 0x2190 && c <= 0x2BFF) || (c >= 0x3001 && c <= 0x3003) ||
         (c >= 0x3008 && c <= 0x3011) || (c >= 0x3014 && c <= 0x301F) ||
         (c >= 0xFF01 && c <= 0xFF0F) || (c >= 0xFF1A && c <= 0xFF20) ||
         (c >= 0xFF3B && c <= 0xFF40) || (c >= 0xFF5B && c <= 0xFF65) ||
         c == 0xFEFF || (c >= 0x1F000 && c <= 0x1FAFF);
}

inline CharClass classify(char32_t c) noexcept {
  if (is_whitespace(c))
    return CharClass::Whitespace;
  if (c >= U'0' && c <= U'9')
    return CharClass::Digit;
  if (is_apostrophe(c))
    return CharClass::Apostrophe;
  if (is_punctuation(c))
    return CharClass::Punctuation;
  if (is_mark(c))
    return CharClass::Mark;
  return CharClass::Letter;
}

inline bool is_word_char(char32_t c) noexcept {
  const auto k = classify(c);
  return k != CharClass::Punctuation && k != CharClass::Whitespace;
}

/// Simple (1:1) lowercase mapping for ASCII, Latin-1, Latin Extended-A, the
/// African letters of Latin Extended-B, Greek and Cyrillic.
inline char32_t fold_case(char32_t c) noexcept {
  if (c < 0x80)
    return (c >= U'A' && c <= U'Z') ? c + 0x20 : c;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7)
    return c + 0x20;
  if (c >= 0x0100 && c <= 0x017F) {
    if (c == 0x0130 || c == 0x0131 || c == 0x0138 || c == 0x0149 || c == 0x017F)
      return c == 0x0130 ? U'i' : c;
    const bool odd_upper = (c >= 0x0139 && c <= 0x0148) || (c >= 0x0179 && c <= 0x017E);
    if (c == 0x0178)
      return 0xFF;
    if (odd_upper)
      return (c % 2 == 1) ? c + 1 : c;
    return (c % 2 == 0) ? c + 1 : c;
  }
  switch (c) {
  case 0x0181: return 0x0253; // Ɓ
  case 0x0186: return 0x0254; // Ɔ
  case 0x0189: return 0x0256; // Ɖ
  case 0x018A: return 0x0257; // Ɗ
  case 0x018E: return 0x01DD; // Ǝ
  case 0x0190: return 0x025B; // Ɛ
  case 0x0194: return 0x0263; // Ɣ
  case 0x0198: return 0x0199; // Ƙ
  case 0x019D: return 0x0272; // Ɲ
  case 0x01B3: return 0x01B4; // Ƴ
  case 0x01B7: return 0x0292; // Ʒ
  default: break;
  }
  if ((c >= 0x0391 && c <= 0x03A9 && c != 0x03A2) || (c >= 0x0410 && c <= 0x042F))
    return c + 0x20;
  if (c >= 0x0400 && c <= 0x040F)
    return c + 0x50;
  return c;
}

inline std::string fold_case(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t pos = 0; pos < s.size();) {
    const auto d = decode(s, pos);
    append(out, fold_case(d.scalar));
    pos += d.length;
  }
  return out;
}

} // namespace gec::utf8

#endif // GEC_UTF8_HPP
