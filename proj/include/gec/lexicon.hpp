// SPDX-License-Identifier: Apache-2.0
#ifndef GEC_LEXICON_HPP
#define GEC_LEXICON_HPP

#include "gec/bloom.hpp"
#include "gec/distance.hpp"
#include "gec/error.hpp"
#include "gec/text.hpp"
#include "gec/utf8.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace gec {

/// One wordlist line. `line` is 0 when the entry did not come from a file.
struct WordEntry {
  std::string word;
  std::uint64_t count = 1;
  std::size_t line = 0;
};

struct LexiconParams {
  std::uint64_t bits = 0; // 0: bits_per_entry * distinct entries
  std::uint32_t bits_per_entry = 10;
  std::uint32_t hashes = 7;
  std::uint64_t hash_seed = 0x5A524D41ULL;
};

struct WordMatch {
  std::string word;
  std::size_t distance = 0;
  std::uint64_t count = 0;

  friend bool operator==(const WordMatch &, const WordMatch &) = default;
};

/// Prefix tree over Unicode scalars. Children are kept sorted so traversal
/// order is deterministic.
class Trie {
public:
  static constexpr std::uint32_t npos = 0xFFFFFFFFu;

  struct Node {
    std::vector<std::pair<char32_t, std::uint32_t>> children;
    std::uint32_t entry = npos;
  };

  Trie() : nodes_(1) {}

  void insert(std::u32string_view key, std::uint32_t entry) {
    std::uint32_t cur = 0;
    for (char32_t c : key) {
      auto &kids = nodes_[cur].children;
      auto it = std::lower_bound(kids.begin(), kids.end(), c,
                                 [](const auto &p, char32_t v) { return p.first < v; });
      if (it != kids.end() && it->first == c) {
        cur = it->second;
      } else {
        const auto next = static_cast<std::uint32_t>(nodes_.size());
        kids.insert(it, {c, next});
        nodes_.emplace_back();
        cur = next;
      }
    }
    nodes_[cur].entry = entry;
  }

  std::uint32_t find(std::u32string_view key) const {
    std::uint32_t cur = 0;
    for (char32_t c : key) {
      const auto &kids = nodes_[cur].children;
      auto it = std::lower_bound(kids.begin(), kids.end(), c,
                                 [](const auto &p, char32_t v) { return p.first < v; });
      if (it == kids.end() || it->first != c)
        return npos;
      cur = it->second;
    }
    return nodes_[cur].entry;
  }

  const std::vector<Node> &nodes() const noexcept { return nodes_; }

  std::size_t terminal_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(
        nodes_.begin(), nodes_.end(), [](const Node &n) { return n.entry != npos; }));
  }

private:
  std::vector<Node> nodes_;
};

namespace detail {

inline void check_word(std::string_view w, std::size_t line) {
  if (w.empty())
    throw ParseError("empty word", line);
  if (!utf8::is_valid(w))
    throw ParseError("word is not valid UTF-8", line);
  for (std::size_t pos = 0; pos < w.size();) {
    const auto d = utf8::decode(w, pos);
    if (utf8::is_whitespace(d.scalar))
      throw ParseError("word contains whitespace", line);
    pos += d.length;
  }
}

} // namespace detail

/// Exact dictionary (trie) behind a Bloom-filter pre-check. Immutable once
/// built; safe to share between threads.
class Lexicon {
public:
  static Lexicon build(std::vector<WordEntry> entries, const LexiconParams &params = {},
                       std::string language_tag = "und") {
    if (params.hashes == 0)
      throw ParameterError("k (hash count) must be >= 1");
    if (params.bits == 0 && params.bits_per_entry == 0)
      throw ParameterError("m (bloom bits) must be > 0");
    std::map<std::string, std::uint64_t> merged;
    for (auto &e : entries) {
      detail::check_word(e.word, e.line);
      merged[std::move(e.word)] += e.count;
    }
    std::vector<std::string> words;
    std::vector<std::uint64_t> counts;
    words.reserve(merged.size());
    counts.reserve(merged.size());
    for (auto &[w, c] : merged) {
      words.push_back(w);
      counts.push_back(c);
    }
    std::uint64_t bits = params.bits;
    if (bits == 0)
      bits = std::max<std::uint64_t>(64, std::uint64_t{params.bits_per_entry} * words.size());
    BloomFilter bloom({bits, params.hashes, params.hash_seed});
    for (const auto &w : words)
      bloom.insert(w);
    return Lexicon(std::move(language_tag), std::move(words), std::move(counts), std::move(bloom));
  }

  /// Exact membership.
  bool contains(std::string_view w) const {
    if (w.empty() || !utf8::is_valid(w))
      return false;
    return trie_.find(utf8::to_scalars(w)) != Trie::npos;
  }

  /// Membership of the case-folded form against case-folded entries.
  bool contains_folded(std::string_view w) const {
    if (w.empty() || !utf8::is_valid(w))
      return false;
    return folded_.count(utf8::fold_case(w)) != 0;
  }

  bool bloom_query(std::string_view w) const noexcept { return bloom_.query(w); }

  std::optional<std::uint64_t> count(std::string_view w) const {
    if (w.empty() || !utf8::is_valid(w))
      return std::nullopt;
    const auto e = trie_.find(utf8::to_scalars(w));
    if (e == Trie::npos)
      return std::nullopt;
    return counts_[e];
  }

  /// Every entry v with distance(w, v) <= max_distance, found by a
  /// depth-first walk of the trie that carries one DP row per depth and
  /// prunes subtrees whose row minimum already exceeds the bound.
  std::vector<WordMatch> words_within_distance(std::string_view w, std::size_t max_distance,
                                               EditMetric metric = EditMetric::Levenshtein) const {
    if (max_distance < 1)
      throw ParameterError("d_max must be >= 1");
    const std::u32string query = utf8::to_scalars(w);
    std::vector<WordMatch> out;
    std::vector<std::size_t> root_row(query.size() + 1);
    for (std::size_t j = 0; j <= query.size(); ++j)
      root_row[j] = j;
    if (trie_.nodes()[0].entry != Trie::npos && root_row.back() <= max_distance)
      out.push_back({words_[trie_.nodes()[0].entry], root_row.back(), counts_[trie_.nodes()[0].entry]});
    for (const auto &[c, child] : trie_.nodes()[0].children)
      search(child, c, 0, root_row, {}, query, max_distance, metric, out);
    return out;
  }

  std::size_t size() const noexcept { return words_.size(); }
  const std::vector<std::string> &words() const noexcept { return words_; }
  const std::vector<std::uint64_t> &counts() const noexcept { return counts_; }
  const BloomFilter &bloom() const noexcept { return bloom_; }
  const Trie &trie() const noexcept { return trie_; }
  const std::string &language_tag() const noexcept { return language_tag_; }

  /// Restores a lexicon whose bloom bits were stored alongside the words.
  static Lexicon restore(std::string language_tag, std::vector<std::string> words,
                         std::vector<std::uint64_t> counts, BloomFilter bloom) {
    if (!std::is_sorted(words.begin(), words.end()) ||
        std::adjacent_find(words.begin(), words.end()) != words.end())
      throw FormatError("lexicon entries are not sorted and unique");
    for (const auto &w : words) {
      try {
        detail::check_word(w, 0);
      } catch (const ParseError &e) {
        throw FormatError(std::string("bad lexicon entry: ") + e.what());
      }
    }
    return Lexicon(std::move(language_tag), std::move(words), std::move(counts), std::move(bloom));
  }

private:
  Lexicon(std::string tag, std::vector<std::string> words, std::vector<std::uint64_t> counts,
          BloomFilter bloom)
      : language_tag_(std::move(tag)), words_(std::move(words)), counts_(std::move(counts)),
        bloom_(std::move(bloom)) {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      trie_.insert(utf8::to_scalars(words_[i]), static_cast<std::uint32_t>(i));
      folded_.insert(utf8::fold_case(words_[i]));
    }
  }

  void search(std::uint32_t node, char32_t c, char32_t parent_char,
              const std::vector<std::size_t> &prev, const std::vector<std::size_t> &prev2,
              const std::u32string &query, std::size_t max_distance, EditMetric metric,
              std::vector<WordMatch> &out) const {
    const std::size_t n = query.size();
    std::vector<std::size_t> row(n + 1);
    row[0] = prev[0] + 1;
    std::size_t best = row[0];
    for (std::size_t j = 1; j <= n; ++j) {
      const std::size_t cost = query[j - 1] == c ? 0 : 1;
      row[j] = std::min({prev[j] + 1, row[j - 1] + 1, prev[j - 1] + cost});
      if (metric == EditMetric::OptimalStringAlignment && !prev2.empty() && j > 1 &&
          query[j - 1] == parent_char && query[j - 2] == c)
        row[j] = std::min(row[j], prev2[j - 2] + 1);
      best = std::min(best, row[j]);
    }
    const auto &nd = trie_.nodes()[node];
    if (nd.entry != Trie::npos && row[n] <= max_distance)
      out.push_back({words_[nd.entry], row[n], counts_[nd.entry]});
    // Once a row minimum exceeds the bound no descendant can get back under
    // it; this holds for OSA transpositions too since row[j] <= prev[j] + 1.
    if (best > max_distance)
      return;
    for (const auto &[cc, child] : nd.children)
      search(child, cc, c, row, prev, query, max_distance, metric, out);
  }

  std::string language_tag_;
  std::vector<std::string> words_; // sorted by bytes, unique
  std::vector<std::uint64_t> counts_;
  BloomFilter bloom_;
  Trie trie_;
  std::unordered_set<std::string> folded_;
};

/// Parses a wordlist: one entry per line, "word" or "word<TAB>count".
/// Blank lines and lines starting with '#' are skipped.
inline std::vector<WordEntry> read_wordlist(std::istream &in) {
  std::vector<WordEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty() || line[0] == '#')
      continue;
    WordEntry e;
    e.line = lineno;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      e.word = line;
    } else {
      e.word = line.substr(0, tab);
      const std::string_view num = std::string_view(line).substr(tab + 1);
      const auto res = std::from_chars(num.data(), num.data() + num.size(), e.count);
      if (num.empty() || res.ec != std::errc() || res.ptr != num.data() + num.size())
        throw ParseError("bad count '" + std::string(num) + "'", lineno);
    }
    detail::check_word(e.word, lineno);
    out.push_back(std::move(e));
  }
  return out;
}

/// Word frequencies of a one-sentence-per-line corpus. Tokens containing a
/// digit are left out since the checker never flags them.
inline std::vector<WordEntry> count_corpus_words(const std::vector<std::string> &lines) {
  std::map<std::string, std::uint64_t> counts;
  for (const auto &line : lines)
    for (auto &t : tokenize(line)) {
      if (t.kind != TokenKind::Word)
        continue;
      if (std::any_of(t.text.begin(), t.text.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
        continue;
      ++counts[t.text];
    }
  std::vector<WordEntry> out;
  out.reserve(counts.size());
  for (auto &[w, c] : counts)
    out.push_back({w, c, 0});
  return out;
}

// Binary container, little-endian:
//   "GECLEX" u16 version
//   str language_tag
//   u64 m, u32 k, u64 hash_seed, u64 n_inserted
//   u64 entries, then per entry: str word, u64 count
//   u64 bloom words, then that many u64
//   u64 FNV-1a checksum of everything before it
// where str is u32 length + bytes.

inline constexpr std::uint16_t lexicon_format_version = 1;

namespace detail {

class Writer {
public:
  void u16(std::uint16_t v) { le(v, 2); }
  void u32(std::uint32_t v) { le(v, 4); }
  void u64(std::uint64_t v) { le(v, 8); }
  void bytes(std::string_view s) { buf_.append(s); }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    bytes(s);
  }
  std::string &buffer() { return buf_; }

private:
  void le(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i)
      buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  std::string buf_;
};

class Reader {
public:
  explicit Reader(std::string_view data) : data_(data) {}

  std::uint16_t u16() { return static_cast<std::uint16_t>(le(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(le(4)); }
  std::uint64_t u64() { return le(8); }
  std::string_view bytes(std::size_t n) {
    need(n);
    auto out = data_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  std::string str() { return std::string(bytes(u32())); }
  std::size_t remaining() const { return data_.size() - pos_; }
  std::size_t position() const { return pos_; }

private:
  void need(std::size_t n) const {
    if (n > data_.size() - pos_)
      throw FormatError("lexicon file is truncated");
  }
  std::uint64_t le(int n) {
    need(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i)
      v |= std::uint64_t(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    pos_ += static_cast<std::size_t>(n);
    return v;
  }
  std::string_view data_;
  std::size_t pos_ = 0;
};

} // namespace detail

inline std::string serialize_lexicon(const Lexicon &lex) {
  detail::Writer w;
  w.bytes("GECLEX");
  w.u16(lexicon_format_version);
  w.str(lex.language_tag());
  const auto &bp = lex.bloom().params();
  w.u64(bp.bits);
  w.u32(bp.hashes);
  w.u64(bp.seed);
  w.u64(lex.bloom().inserted());
  w.u64(lex.size());
  for (std::size_t i = 0; i < lex.size(); ++i) {
    w.str(lex.words()[i]);
    w.u64(lex.counts()[i]);
  }
  w.u64(lex.bloom().words().size());
  for (auto word : lex.bloom().words())
    w.u64(word);
  const auto sum = hash::fnv1a(w.buffer());
  w.u64(sum);
  return std::move(w.buffer());
}

inline Lexicon deserialize_lexicon(std::string_view data) {
  detail::Reader r(data);
  if (r.bytes(6) != "GECLEX")
    throw FormatError("not a lexicon file (bad magic)");
  const auto version = r.u16();
  if (version != lexicon_format_version)
    throw FormatError("unsupported lexicon format version " + std::to_string(version));
  if (data.size() < 8)
    throw FormatError("lexicon file is truncated");
  const auto body = data.substr(0, data.size() - 8);
  detail::Reader tail(data.substr(data.size() - 8));
  if (hash::fnv1a(body) != tail.u64())
    throw FormatError("lexicon checksum mismatch");

  std::string tag = r.str();
  BloomParams bp;
  bp.bits = r.u64();
  bp.hashes = r.u32();
  bp.seed = r.u64();
  const auto inserted = r.u64();
  const auto n = r.u64();
  if (n > r.remaining())
    throw FormatError("lexicon entry count exceeds file size");
  std::vector<std::string> words;
  std::vector<std::uint64_t> counts;
  words.reserve(n);
  counts.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    words.push_back(r.str());
    counts.push_back(r.u64());
  }
  const auto nwords = r.u64();
  if (nwords > r.remaining() / 8)
    throw FormatError("bloom array exceeds file size");
  std::vector<std::uint64_t> bits(nwords);
  for (auto &b : bits)
    b = r.u64();
  if (r.remaining() != 8)
    throw FormatError("trailing bytes in lexicon file");
  try {
    return Lexicon::restore(std::move(tag), std::move(words), std::move(counts),
                            BloomFilter(bp, std::move(bits), inserted));
  } catch (const ParameterError &e) {
    throw FormatError(std::string("bad bloom parameters: ") + e.what());
  }
}

} // namespace gec

#endif // GEC_LEXICON_HPP
