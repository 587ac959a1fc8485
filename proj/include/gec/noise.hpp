// SPDX-License-Identifier: Apache-2.0
#ifndef GEC_NOISE_HPP
#define GEC_NOISE_HPP

#include "gec/bloom.hpp"
#include "gec/corrector.hpp"
#include "gec/error.hpp"
#include "gec/lexicon.hpp"
#include "gec/text.hpp"
#include "gec/utf8.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace gec {

enum class NoiseOpKind { Delete, Insert, Substitute, Transpose };

inline const char *to_string(NoiseOpKind k) noexcept {
  switch (k) {
  case NoiseOpKind::Delete: return "delete";
  case NoiseOpKind::Insert: return "insert";
  case NoiseOpKind::Substitute: return "substitute";
  case NoiseOpKind::Transpose: return "transpose";
  }
  return "?";
}

inline std::optional<NoiseOpKind> parse_noise_op_kind(std::string_view s) {
  if (s == "delete") return NoiseOpKind::Delete;
  if (s == "insert") return NoiseOpKind::Insert;
  if (s == "substitute") return NoiseOpKind::Substitute;
  if (s == "transpose") return NoiseOpKind::Transpose;
  return std::nullopt;
}

/// One edit on a word. `word` indexes the Word tokens of the sentence;
/// `offset` and `length` count scalars within that word as it stands when
/// the op is applied. Delete: length 1. Insert: length 0, payload one
/// scalar. Substitute: length 1 with a one-scalar payload, or the whole word
/// for a word swap. Transpose: length 2, swaps the two scalars.
struct NoiseOp {
  NoiseOpKind kind = NoiseOpKind::Substitute;
  std::size_t word = 0;
  std::size_t offset = 0;
  std::size_t length = 1;
  std::string payload;

  friend bool operator==(const NoiseOp &, const NoiseOp &) = default;
};

enum class ErrorKindHint { Typographic, WordSwap };

inline const char *to_string(ErrorKindHint h) noexcept {
  return h == ErrorKindHint::Typographic ? "typographic" : "word_swap";
}

struct CorruptionRecord {
  std::string original;
  std::string corrupted;
  std::vector<NoiseOp> ops;
  std::size_t variant = 1; // 1-based
  std::uint64_t seed = 0;
  ErrorKindHint hint = ErrorKindHint::Typographic;
  std::size_t line = 0; // 1-based line of the source corpus, 0 if unknown

  friend bool operator==(const CorruptionRecord &, const CorruptionRecord &) = default;
};

struct NoiseConfig {
  std::size_t ops_per_sentence = 1;
  std::size_t variants_per_sentence = 4;
  /// delete, insert, substitute, transpose
  std::array<double, 4> op_weights{0.25, 0.25, 0.25, 0.25};
  /// Insertion/substitution alphabet; empty means "letters seen in the corpus".
  std::u32string charset;
  std::map<std::string, std::vector<std::string>> word_swaps{{"go", {"ga"}}};
  /// Chance that an op is a word swap when a swappable word is present.
  double word_swap_probability = 0.0;
  bool nonword_only = false;
  std::uint64_t seed = 0;
  std::size_t max_retries = 64;

  void validate() const {
    if (ops_per_sentence < 1)
      throw ParameterError("ops_per_sentence must be >= 1");
    if (variants_per_sentence < 1)
      throw ParameterError("variants_per_sentence must be >= 1");
    double sum = 0;
    for (double w : op_weights) {
      if (!(w >= 0))
        throw ParameterError("op weights must be non-negative");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw ParameterError("op weights must sum to 1");
    if (!(word_swap_probability >= 0 && word_swap_probability <= 1))
      throw ParameterError("word_swap_probability must be in [0, 1]");
    for (char32_t c : charset)
      if (utf8::classify(c) != utf8::CharClass::Letter)
        throw ParameterError("charset may contain letters only");
  }
};

namespace noise {

/// mt19937_64 with bounded draws done by rejection, so streams are identical
/// across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  /// Uniform in [0, 1) with 53 bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
  std::mt19937_64 engine_;
};

inline std::uint64_t line_seed(std::uint64_t global, std::size_t line) {
  return hash::splitmix64(global ^ hash::splitmix64(static_cast<std::uint64_t>(line)));
}

inline std::uint64_t variant_seed(std::uint64_t line_seed, std::size_t variant) {
  return hash::splitmix64(line_seed + static_cast<std::uint64_t>(variant));
}

struct WordSlots {
  std::vector<Token> tokens;
  std::vector<std::size_t> words; // token index of each word
};

inline WordSlots slots_of(std::string_view s) {
  WordSlots w;
  w.tokens = tokenize(s);
  w.words = word_indices(w.tokens);
  return w;
}

inline void apply_op(std::u32string &word, const NoiseOp &op) {
  const auto bad = [&] { throw ParameterError("noise op does not fit its target word"); };
  switch (op.kind) {
  case NoiseOpKind::Delete:
    if (op.length != 1 || op.offset >= word.size()) bad();
    word.erase(op.offset, 1);
    break;
  case NoiseOpKind::Insert: {
    const auto p = utf8::to_scalars(op.payload);
    if (op.length != 0 || op.offset > word.size() || p.size() != 1) bad();
    word.insert(op.offset, p);
    break;
  }
  case NoiseOpKind::Substitute: {
    const auto p = utf8::to_scalars(op.payload);
    if (op.length == 0 || op.offset + op.length > word.size() || p.empty()) bad();
    word.replace(op.offset, op.length, p);
    break;
  }
  case NoiseOpKind::Transpose:
    if (op.length != 2 || op.offset + 1 >= word.size()) bad();
    std::swap(word[op.offset], word[op.offset + 1]);
    break;
  }
}

} // namespace noise

/// Re-applies `ops` to `original`. Throws ParameterError when an op does not
/// fit the sentence.
inline std::string replay_ops(std::string_view original, const std::vector<NoiseOp> &ops) {
  auto slots = noise::slots_of(original);
  for (const auto &op : ops) {
    if (op.word >= slots.words.size())
      throw ParameterError("noise op targets a missing word");
    auto &tok = slots.tokens[slots.words[op.word]];
    auto scalars = utf8::to_scalars(tok.text);
    noise::apply_op(scalars, op);
    tok.text = utf8::from_scalars(scalars);
  }
  return detokenize(slots.tokens);
}

/// Sorted letters (own case-fold) appearing in Word tokens of the corpus.
inline std::u32string charset_inventory(const std::vector<std::string> &lines) {
  std::set<char32_t> seen;
  for (const auto &line : lines)
    for (const auto &t : tokenize(line)) {
      if (t.kind != TokenKind::Word)
        continue;
      for (char32_t c : utf8::to_scalars(t.text))
        if (utf8::classify(c) == utf8::CharClass::Letter && utf8::fold_case(c) == c)
          seen.insert(c);
    }
  return std::u32string(seen.begin(), seen.end());
}

struct SentenceCorruption {
  std::vector<CorruptionRecord> records;
  bool skipped = false;      // no corruptible word
  std::size_t excluded = 0;  // variants abandoned after max_retries
};

namespace noise::detail {

inline bool corruptible(const std::u32string &w) {
  if (w.size() < 2)
    return false;
  bool letter = false;
  for (char32_t c : w) {
    const auto cls = utf8::classify(c);
    if (cls == utf8::CharClass::Digit)
      return false;
    letter = letter || cls == utf8::CharClass::Letter;
  }
  return letter;
}

// One attempt at a variant; returns the ops applied to `words`.
inline std::vector<NoiseOp> draw_ops(std::vector<std::u32string> &words, const NoiseConfig &cfg,
                                     const std::u32string &charset,
                                     const std::vector<bool> &eligible, Rng &rng,
                                     ErrorKindHint &hint) {
  std::vector<NoiseOp> ops;
  for (std::size_t n = 0; n < cfg.ops_per_sentence; ++n) {
    if (cfg.word_swap_probability > 0 && !cfg.nonword_only) {
      std::vector<std::size_t> swappable;
      for (std::size_t i = 0; i < words.size(); ++i) {
        auto it = cfg.word_swaps.find(utf8::from_scalars(words[i]));
        if (it != cfg.word_swaps.end() && !it->second.empty())
          swappable.push_back(i);
      }
      if (!swappable.empty() && rng.unit() < cfg.word_swap_probability) {
        const std::size_t wi = swappable[rng.below(swappable.size())];
        const auto &targets = cfg.word_swaps.at(utf8::from_scalars(words[wi]));
        NoiseOp op{NoiseOpKind::Substitute, wi, 0, words[wi].size(),
                   targets[rng.below(targets.size())]};
        apply_op(words[wi], op);
        ops.push_back(std::move(op));
        hint = ErrorKindHint::WordSwap;
        continue;
      }
    }

    // Candidate words per op kind.
    std::array<std::vector<std::size_t>, 4> feasible;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (!eligible[i])
        continue;
      const auto &w = words[i];
      if (w.size() >= 2)
        feasible[0].push_back(i);
      if (!w.empty() && !charset.empty())
        feasible[1].push_back(i);
      if (!w.empty() && (charset.size() >= 2 || (charset.size() == 1 &&
                                                  std::any_of(w.begin(), w.end(), [&](char32_t c) { return c != charset[0]; }))))
        feasible[2].push_back(i);
      for (std::size_t k = 0; k + 1 < w.size(); ++k)
        if (w[k] != w[k + 1]) {
          feasible[3].push_back(i);
          break;
        }
    }
    double total = 0;
    for (int k = 0; k < 4; ++k)
      if (!feasible[k].empty())
        total += cfg.op_weights[k];
    if (total <= 0)
      return {};
    double pick = rng.unit() * total;
    int kind = -1;
    for (int k = 0; k < 4; ++k) {
      if (feasible[k].empty() || cfg.op_weights[k] <= 0)
        continue;
      kind = k;
      if (pick < cfg.op_weights[k])
        break;
      pick -= cfg.op_weights[k];
    }
    const auto &cands = feasible[kind];
    const std::size_t wi = cands[rng.below(cands.size())];
    auto &w = words[wi];
    NoiseOp op;
    op.word = wi;
    switch (kind) {
    case 0:
      op.kind = NoiseOpKind::Delete;
      op.offset = rng.below(w.size());
      op.length = 1;
      break;
    case 1:
      op.kind = NoiseOpKind::Insert;
      op.offset = rng.below(w.size() + 1);
      op.length = 0;
      op.payload = utf8::from_scalars(std::u32string(1, charset[rng.below(charset.size())]));
      break;
    case 2: {
      op.kind = NoiseOpKind::Substitute;
      std::vector<std::size_t> positions;
      for (std::size_t k = 0; k < w.size(); ++k)
        if (charset.size() >= 2 || w[k] != charset[0])
          positions.push_back(k);
      op.offset = positions[rng.below(positions.size())];
      op.length = 1;
      char32_t c;
      do {
        c = charset[rng.below(charset.size())];
      } while (c == w[op.offset]);
      op.payload = utf8::from_scalars(std::u32string(1, c));
      break;
    }
    default: {
      op.kind = NoiseOpKind::Transpose;
      std::vector<std::size_t> positions;
      for (std::size_t k = 0; k + 1 < w.size(); ++k)
        if (w[k] != w[k + 1])
          positions.push_back(k);
      op.offset = positions[rng.below(positions.size())];
      op.length = 2;
      break;
    }
    }
    apply_op(w, op);
    ops.push_back(std::move(op));
  }
  return ops;
}

} // namespace noise::detail

/// Produces cfg.variants_per_sentence corrupted copies of `sentence`.
/// `line_seed` fixes every random choice. With nonword_only, each modified
/// word must be absent from `lex`; variants that cannot satisfy this within
/// max_retries are dropped and counted in `excluded`.
inline SentenceCorruption corrupt_sentence(std::string_view sentence, const NoiseConfig &cfg,
                                           std::uint64_t line_seed, const Lexicon *lex = nullptr,
                                           std::u32string charset = {}) {
  cfg.validate();
  if (cfg.nonword_only && !lex)
    throw ParameterError("nonword_only needs a lexicon");
  if (charset.empty())
    charset = cfg.charset;
  if (charset.empty())
    charset = charset_inventory({std::string(sentence)});

  SentenceCorruption out;
  const auto base = noise::slots_of(sentence);
  std::vector<std::u32string> original_words;
  std::vector<bool> eligible;
  for (auto ti : base.words) {
    original_words.push_back(utf8::to_scalars(base.tokens[ti].text));
    eligible.push_back(noise::detail::corruptible(original_words.back()));
  }
  if (std::none_of(eligible.begin(), eligible.end(), [](bool b) { return b; })) {
    out.skipped = true;
    return out;
  }

  for (std::size_t v = 1; v <= cfg.variants_per_sentence; ++v) {
    const std::uint64_t seed = noise::variant_seed(line_seed, v);
    noise::Rng rng(seed);
    bool done = false;
    for (std::size_t attempt = 0; attempt < cfg.max_retries && !done; ++attempt) {
      auto words = original_words;
      ErrorKindHint hint = ErrorKindHint::Typographic;
      auto ops = noise::detail::draw_ops(words, cfg, charset, eligible, rng, hint);
      if (ops.size() != cfg.ops_per_sentence)
        continue;
      auto tokens = base.tokens;
      for (std::size_t i = 0; i < words.size(); ++i)
        tokens[base.words[i]].text = utf8::from_scalars(words[i]);
      std::string corrupted = detokenize(tokens);
      if (corrupted == sentence)
        continue;
      // The corrupted sentence must segment into the same words.
      const auto check = noise::slots_of(corrupted);
      if (check.words.size() != words.size())
        continue;
      bool ok = true;
      std::set<std::size_t> touched;
      for (const auto &op : ops)
        touched.insert(op.word);
      for (auto wi : touched) {
        const auto &text = check.tokens[check.words[wi]].text;
        if (text != tokens[base.words[wi]].text)
          ok = false;
        else if (cfg.nonword_only && (lex->contains(text) || text == utf8::from_scalars(original_words[wi])))
          ok = false;
      }
      if (!ok)
        continue;
      CorruptionRecord rec;
      rec.original = std::string(sentence);
      rec.corrupted = std::move(corrupted);
      rec.ops = std::move(ops);
      rec.variant = v;
      rec.seed = seed;
      rec.hint = hint;
      out.records.push_back(std::move(rec));
      done = true;
    }
    if (!done)
      ++out.excluded;
  }
  return out;
}

struct CorpusCorruption {
  std::vector<CorruptionRecord> records;
  std::size_t sentences = 0;
  std::size_t skipped = 0;
  std::size_t excluded = 0;
};

/// Corrupts every line. Each line's seed derives from cfg.seed and its line
/// number, so the output does not depend on `threads`.
inline CorpusCorruption corrupt_corpus(const std::vector<std::string> &lines, const NoiseConfig &cfg,
                                       const Lexicon *lex = nullptr, unsigned threads = 1) {
  cfg.validate();
  const std::u32string charset = cfg.charset.empty() ? charset_inventory(lines) : cfg.charset;
  std::vector<SentenceCorruption> per_line(lines.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      per_line[i] = corrupt_sentence(lines[i], cfg, noise::line_seed(cfg.seed, i + 1), lex, charset);
      for (auto &r : per_line[i].records)
        r.line = i + 1;
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(lines.size() ? lines.size() : 1)));
  if (threads == 1) {
    work(0, lines.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (lines.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t b = std::min(lines.size(), t * chunk);
      const std::size_t e = std::min(lines.size(), b + chunk);
      pool.emplace_back(work, b, e);
    }
    for (auto &th : pool)
      th.join();
  }
  CorpusCorruption out;
  out.sentences = lines.size();
  for (auto &pl : per_line) {
    out.skipped += pl.skipped ? 1 : 0;
    out.excluded += pl.excluded;
    for (auto &r : pl.records)
      out.records.push_back(std::move(r));
  }
  return out;
}

/// Human-readable account of the ops, e.g.
/// `substitute "y" -> "g" in "Irikoy" (word 3)`.
inline std::string describe_ops(const CorruptionRecord &rec) {
  auto slots = noise::slots_of(rec.original);
  std::string out;
  for (const auto &op : rec.ops) {
    auto &tok = slots.tokens[slots.words.at(op.word)];
    auto before = utf8::to_scalars(tok.text);
    std::string what;
    switch (op.kind) {
    case NoiseOpKind::Delete:
      what = "delete \"" + utf8::from_scalars(before.substr(op.offset, 1)) + "\"";
      break;
    case NoiseOpKind::Insert:
      what = "insert \"" + op.payload + "\"";
      break;
    case NoiseOpKind::Substitute:
      what = "substitute \"" + utf8::from_scalars(before.substr(op.offset, op.length)) + "\" -> \"" +
             op.payload + "\"";
      break;
    case NoiseOpKind::Transpose:
      what = "transpose \"" + utf8::from_scalars(before.substr(op.offset, 2)) + "\"";
      break;
    }
    noise::apply_op(before, op);
    if (!out.empty())
      out += "; ";
    out += what + " in \"" + tok.text + "\" (word " + std::to_string(op.word + 1) + ")";
    tok.text = utf8::from_scalars(before);
  }
  return out;
}

inline nlohmann::json to_json(const NoiseOp &op) {
  return {{"kind", to_string(op.kind)}, {"word", op.word}, {"offset", op.offset},
          {"length", op.length}, {"payload", op.payload}};
}

inline NoiseOp noise_op_from_json(const nlohmann::json &j) {
  NoiseOp op;
  const auto kind = parse_noise_op_kind(j.at("kind").get<std::string>());
  if (!kind)
    throw ParseError("unknown noise op kind", 0);
  op.kind = *kind;
  op.word = j.at("word").get<std::size_t>();
  op.offset = j.at("offset").get<std::size_t>();
  op.length = j.at("length").get<std::size_t>();
  op.payload = j.at("payload").get<std::string>();
  return op;
}

/// Structured record: {"src","tgt","ops","variant","seed","kind","line","explanation"}.
/// src is the corrupted sentence, tgt the original.
inline nlohmann::json to_json(const CorruptionRecord &r) {
  nlohmann::json ops = nlohmann::json::array();
  for (const auto &op : r.ops)
    ops.push_back(to_json(op));
  return {{"src", r.corrupted}, {"tgt", r.original}, {"ops", ops},
          {"variant", r.variant}, {"seed", r.seed}, {"kind", to_string(r.hint)},
          {"line", r.line}, {"explanation", describe_ops(r)}};
}

inline CorruptionRecord record_from_json(const nlohmann::json &j) {
  CorruptionRecord r;
  r.corrupted = j.at("src").get<std::string>();
  r.original = j.at("tgt").get<std::string>();
  for (const auto &op : j.at("ops"))
    r.ops.push_back(noise_op_from_json(op));
  r.variant = j.at("variant").get<std::size_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "typographic")
    r.hint = ErrorKindHint::Typographic;
  else if (kind == "word_swap")
    r.hint = ErrorKindHint::WordSwap;
  else
    throw ParseError("unknown record kind '" + kind + "'", 0);
  r.line = j.value("line", std::size_t{0});
  return r;
}

/// Reads line-delimited structured records. Errors cite the line number.
inline std::vector<CorruptionRecord> read_records(std::istream &in) {
  std::vector<CorruptionRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty())
      continue;
    try {
      out.push_back(record_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(std::string("bad record: ") + e.what(), lineno);
    } catch (const ParseError &e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return out;
}

enum class ParallelFormat { TwoFile, Structured, Prompt };

inline ParallelFormat parse_parallel_format(std::string_view tag) {
  if (tag == "two-file") return ParallelFormat::TwoFile;
  if (tag == "jsonl") return ParallelFormat::Structured;
  if (tag == "prompt") return ParallelFormat::Prompt;
  throw ParameterError("unknown parallel format '" + std::string(tag) +
                       "' (expected two-file, jsonl or prompt)");
}

/// "<Language> sentence: <incorrect>, Correct the <language> sentence:
/// <correct>, Error Causes: <cause>."
inline std::string prompt_line(const CorruptionRecord &r, std::string_view language = "Zarma") {
  std::string lower(language);
  if (!lower.empty())
    lower = utf8::fold_case(lower);
  return std::string(language) + " sentence: " + r.corrupted + ", Correct the " + lower +
         " sentence: " + r.original + ", Error Causes: " + describe_ops(r) + ".";
}

inline void write_structured(const std::vector<CorruptionRecord> &records, std::ostream &out) {
  for (const auto &r : records)
    out << to_json(r).dump() << '\n';
}

inline void write_two_file(const std::vector<CorruptionRecord> &records, std::ostream &src,
                           std::ostream &tgt) {
  for (const auto &r : records) {
    src << r.corrupted << '\n';
    tgt << r.original << '\n';
  }
}

inline void write_prompts(const std::vector<CorruptionRecord> &records, std::ostream &out,
                          std::string_view language = "Zarma") {
  for (const auto &r : records)
    out << prompt_line(r, language) << '\n';
}

/// Writes `records` next to `prefix`: prefix.src + prefix.tgt (two-file),
/// prefix.jsonl (structured) or prefix.prompt.txt (prompt). Returns the
/// paths written.
inline std::vector<std::filesystem::path> emit_parallel(const std::vector<CorruptionRecord> &records,
                                                        ParallelFormat format,
                                                        const std::filesystem::path &prefix,
                                                        std::string_view language = "Zarma") {
  auto open = [](const std::filesystem::path &p) {
    std::ofstream f(p, std::ios::binary);
    if (!f)
      throw Error("cannot write " + p.string());
    return f;
  };
  const std::string base = prefix.string();
  switch (format) {
  case ParallelFormat::TwoFile: {
    std::filesystem::path s = base + ".src", t = base + ".tgt";
    auto fs = open(s);
    auto ft = open(t);
    write_two_file(records, fs, ft);
    return {s, t};
  }
  case ParallelFormat::Structured: {
    std::filesystem::path p = base + ".jsonl";
    auto f = open(p);
    write_structured(records, f);
    return {p};
  }
  case ParallelFormat::Prompt: {
    std::filesystem::path p = base + ".prompt.txt";
    auto f = open(p);
    write_prompts(records, f, language);
    return {p};
  }
  }
  return {};
}

/// key = value lines; '#' comments. Keys: ops_per_sentence,
/// variants_per_sentence, weight_delete, weight_insert, weight_substitute,
/// weight_transpose, charset, swap (repeatable: "swap = go ga"),
/// clear_swaps, word_swap_probability, nonword_only, seed, max_retries.
inline NoiseConfig parse_noise_config(std::istream &in, NoiseConfig cfg = {}) {
  std::string line;
  std::size_t lineno = 0;
  bool swaps_reset = false;
  auto number = [&](const std::string &v) {
    try {
      std::size_t used = 0;
      const double d = std::stod(v, &used);
      if (used != v.size())
        throw std::invalid_argument(v);
      return d;
    } catch (const std::exception &) {
      throw ParseError("bad number '" + v + "'", lineno);
    }
  };
  auto integer = [&](const std::string &v) {
    try {
      std::size_t used = 0;
      const auto n = std::stoull(v, &used);
      if (used != v.size())
        throw std::invalid_argument(v);
      return static_cast<std::uint64_t>(n);
    } catch (const std::exception &) {
      throw ParseError("bad integer '" + v + "'", lineno);
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto key_end = line.find('=');
    const std::string trimmed = rules::detail::trim(line);
    if (trimmed.empty() || trimmed[0] == '#')
      continue;
    if (key_end == std::string::npos)
      throw ParseError("expected key = value", lineno);
    const std::string key = rules::detail::trim(std::string_view(line).substr(0, key_end));
    const std::string value = rules::detail::trim(std::string_view(line).substr(key_end + 1));
    if (key == "ops_per_sentence") cfg.ops_per_sentence = integer(value);
    else if (key == "variants_per_sentence") cfg.variants_per_sentence = integer(value);
    else if (key == "weight_delete") cfg.op_weights[0] = number(value);
    else if (key == "weight_insert") cfg.op_weights[1] = number(value);
    else if (key == "weight_substitute") cfg.op_weights[2] = number(value);
    else if (key == "weight_transpose") cfg.op_weights[3] = number(value);
    else if (key == "charset") cfg.charset = utf8::to_scalars(value);
    else if (key == "word_swap_probability") cfg.word_swap_probability = number(value);
    else if (key == "nonword_only") cfg.nonword_only = value == "true" || value == "1";
    else if (key == "seed") cfg.seed = integer(value);
    else if (key == "max_retries") cfg.max_retries = integer(value);
    else if (key == "clear_swaps") cfg.word_swaps.clear();
    else if (key == "swap") {
      const auto parts = rules::detail::split_ws(value);
      if (parts.size() != 2)
        throw ParseError("swap expects two words", lineno);
      if (!swaps_reset) {
        cfg.word_swaps.clear();
        swaps_reset = true;
      }
      cfg.word_swaps[parts[0]].push_back(parts[1]);
    } else {
      throw ParseError("unknown key '" + key + "'", lineno);
    }
  }
  return cfg;
}

} // namespace gec

#endif // GEC_NOISE_HPP
