// SPDX-License-Identifier: Apache-2.0
// Shared fixtures and independent oracles for the test programs.
#ifndef GEC_TESTS_SUPPORT_HPP
#define GEC_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace gec::test {

/// Plain recursive edit distance with no memoization.
inline std::size_t naive_distance(const std::u32string &a, std::size_t i, const std::u32string &b,
                                  std::size_t j) {
  if (i == 0)
    return j;
  if (j == 0)
    return i;
  const std::size_t sub = naive_distance(a, i - 1, b, j - 1) + (a[i - 1] == b[j - 1] ? 0 : 1);
  const std::size_t del = naive_distance(a, i - 1, b, j) + 1;
  const std::size_t ins = naive_distance(a, i, b, j - 1) + 1;
  return std::min({sub, del, ins});
}

inline std::size_t naive_distance(const std::u32string &a, const std::u32string &b) {
  return naive_distance(a, a.size(), b, b.size());
}

/// Textbook full-matrix Levenshtein, used where the recursion is too slow.
inline std::size_t matrix_distance(const std::u32string &a, const std::u32string &b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i)
    d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j)
    d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
  return d[a.size()][b.size()];
}

/// Full-matrix optimal string alignment distance.
inline std::size_t matrix_osa(const std::u32string &a, const std::u32string &b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i)
    d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j)
    d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1])
        d[i][j] = std::min(d[i][j], d[i - 2][j - 2] + 1);
    }
  return d[a.size()][b.size()];
}

/// Every string over `alphabet` of length 0..max_len.
inline std::vector<std::u32string> all_strings(const std::u32string &alphabet, std::size_t max_len) {
  std::vector<std::u32string> out{U""};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (char32_t c : alphabet)
        out.push_back(out[i] + c);
    begin = end;
  }
  return out;
}

inline std::u32string random_scalars(std::mt19937_64 &rng, const std::u32string &alphabet, std::size_t min_len,
                                     std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len), pick(0, alphabet.size() - 1);
  std::u32string s;
  for (std::size_t i = len(rng); i > 0; --i)
    s += alphabet[pick(rng)];
  return s;
}

inline std::string to_utf8(const std::u32string &s) {
  std::string out;
  for (char32_t c : s) {
    if (c < 0x80) {
      out += static_cast<char>(c);
    } else if (c < 0x800) {
      out += static_cast<char>(0xC0 | (c >> 6));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else if (c < 0x10000) {
      out += static_cast<char>(0xE0 | (c >> 12));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (c >> 18));
      out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    }
  }
  return out;
}

/// Distinct random words over a letter alphabet that includes non-ASCII.
inline std::vector<std::string> random_words(std::uint64_t seed, std::size_t n, std::size_t min_len,
                                             std::size_t max_len) {
  std::mt19937_64 rng(seed);
  const std::u32string alphabet = U"abdefgikmnorstuyɛɔŋɲ";
  std::set<std::string> seen;
  std::vector<std::string> out;
  while (out.size() < n) {
    auto w = to_utf8(random_scalars(rng, alphabet, min_len, max_len));
    if (seen.insert(w).second)
      out.push_back(w);
  }
  return out;
}

inline std::string slurp(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::string> lines_of(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line))
    out.push_back(line);
  return out;
}

} // namespace gec::test

#endif // GEC_TESTS_SUPPORT_HPP
