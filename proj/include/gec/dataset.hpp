// SPDX-License-Identifier: Apache-2.0
#ifndef GEC_DATASET_HPP
#define GEC_DATASET_HPP

#include "gec/error.hpp"
#include "gec/noise.hpp"
#include "gec/utf8.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace gec {

enum class Origin { Synthetic, HumanAnnotated };

inline const char *to_string(Origin o) noexcept {
  return o == Origin::Synthetic ? "synthetic" : "gold";
}

struct ParallelExample {
  std::string incorrect;
  std::string correct;
  std::optional<std::string> explanation;
  Origin origin = Origin::Synthetic;

  friend bool operator==(const ParallelExample &, const ParallelExample &) = default;
};

inline ParallelExample to_example(const CorruptionRecord &r) {
  return {r.corrupted, r.original, std::nullopt, Origin::Synthetic};
}

// Gold file: one record per line, three TAB-separated fields
//   incorrect <TAB> correct <TAB> explanation
// Inside a field "\t", "\n" and "\\" stand for TAB, newline and backslash.
// Blank lines and lines starting with '#' are skipped. An empty
// explanation field means "no explanation".

namespace dataset::detail {

inline std::string escape_field(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '\t': out += "\\t"; break;
    case '\n': out += "\\n"; break;
    case '\\': out += "\\\\"; break;
    default: out.push_back(c);
    }
  }
  return out;
}

inline std::vector<std::string> split_escaped(std::string_view line, std::size_t lineno) {
  std::vector<std::string> fields(1);
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '\t') {
      fields.emplace_back();
    } else if (c == '\\') {
      if (i + 1 >= line.size())
        throw ParseError("dangling escape", lineno);
      switch (line[++i]) {
      case 't': fields.back().push_back('\t'); break;
      case 'n': fields.back().push_back('\n'); break;
      case '\\': fields.back().push_back('\\'); break;
      default: throw ParseError("unknown escape", lineno);
      }
    } else {
      fields.back().push_back(c);
    }
  }
  return fields;
}

} // namespace dataset::detail

/// Parses the human-annotated gold format. Errors cite the record number
/// (1-based count of non-comment records) and line.
inline std::vector<ParallelExample> ingest_gold(std::istream &in) {
  std::vector<ParallelExample> out;
  std::string line;
  std::size_t lineno = 0;
  std::size_t record = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty() || line[0] == '#')
      continue;
    ++record;
    const std::string where = "record " + std::to_string(record) + ": ";
    if (!utf8::is_valid(line))
      throw ParseError(where + "not valid UTF-8", lineno);
    auto f = dataset::detail::split_escaped(line, lineno);
    if (f.size() != 3)
      throw ParseError(where + "expected 3 fields (incorrect, correct, explanation), found " +
                           std::to_string(f.size()),
                       lineno);
    if (f[0].empty() || f[1].empty())
      throw ParseError(where + "missing sentence field", lineno);
    if (f[0] == f[1])
      throw ParseError(where + "incorrect and correct sentences are identical", lineno);
    ParallelExample ex;
    ex.incorrect = std::move(f[0]);
    ex.correct = std::move(f[1]);
    if (!f[2].empty())
      ex.explanation = std::move(f[2]);
    ex.origin = Origin::HumanAnnotated;
    out.push_back(std::move(ex));
  }
  return out;
}

inline void write_gold(const std::vector<ParallelExample> &examples, std::ostream &out) {
  using dataset::detail::escape_field;
  for (const auto &e : examples)
    out << escape_field(e.incorrect) << '\t' << escape_field(e.correct) << '\t'
        << escape_field(e.explanation.value_or("")) << '\n';
}

struct MergeReport {
  std::size_t synthetic = 0;
  std::size_t gold = 0;
  std::size_t duplicates = 0;
  std::size_t total = 0;
};

/// Synthetic examples first, then gold, dropping later exact duplicates of
/// an (incorrect, correct) pair.
inline std::vector<ParallelExample> merge_datasets(const std::vector<ParallelExample> &synthetic,
                                                   const std::vector<ParallelExample> &gold,
                                                   MergeReport *report = nullptr) {
  std::vector<ParallelExample> out;
  std::set<std::pair<std::string, std::string>> seen;
  MergeReport rep;
  rep.synthetic = synthetic.size();
  rep.gold = gold.size();
  for (const auto *part : {&synthetic, &gold})
    for (const auto &e : *part) {
      if (!seen.emplace(e.incorrect, e.correct).second) {
        ++rep.duplicates;
        continue;
      }
      out.push_back(e);
    }
  rep.total = out.size();
  if (report)
    *report = rep;
  return out;
}

enum class SplitUnit { Sentence, OriginalSentenceGroup };

struct SplitSpec {
  std::array<double, 3> fractions{0.8, 0.1, 0.1}; // train, validation, test
  std::uint64_t seed = 0;
  SplitUnit unit = SplitUnit::OriginalSentenceGroup;

  void validate() const {
    double sum = 0;
    for (double f : fractions) {
      if (!(f > 0))
        throw ParameterError("split fractions must be positive");
      sum += f;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw ParameterError("split fractions must sum to 1");
  }
};

struct Split {
  std::vector<ParallelExample> train, validation, test;
};

/// Seeded shuffle, then validation and test get floor(units * fraction)
/// units each and train the remainder. In group mode the unit is the set of
/// examples sharing a `correct` sentence, so variants of one original never
/// straddle two parts. Group order follows first appearance.
inline Split split(const std::vector<ParallelExample> &examples, const SplitSpec &spec) {
  spec.validate();
  if (examples.empty())
    throw ParameterError("cannot split an empty dataset");
  std::vector<std::vector<std::size_t>> units;
  if (spec.unit == SplitUnit::Sentence) {
    for (std::size_t i = 0; i < examples.size(); ++i)
      units.push_back({i});
  } else {
    std::map<std::string, std::size_t> group_of;
    for (std::size_t i = 0; i < examples.size(); ++i) {
      auto [it, fresh] = group_of.emplace(examples[i].correct, units.size());
      if (fresh)
        units.emplace_back();
      units[it->second].push_back(i);
    }
  }
  noise::Rng rng(hash::splitmix64(spec.seed));
  for (std::size_t i = units.size(); i > 1; --i)
    std::swap(units[i - 1], units[rng.below(i)]);

  const std::size_t n = units.size();
  const auto portion = [&](double f) {
    return static_cast<std::size_t>(std::floor(static_cast<double>(n) * f + 1e-9));
  };
  const std::size_t n_val = portion(spec.fractions[1]);
  const std::size_t n_test = portion(spec.fractions[2]);
  const std::size_t n_train = n - n_val - n_test;

  Split out;
  for (std::size_t u = 0; u < n; ++u) {
    auto &dst = u < n_train ? out.train : (u < n_train + n_val ? out.validation : out.test);
    for (auto i : units[u])
      dst.push_back(examples[i]);
  }
  return out;
}

inline nlohmann::json to_json(const ParallelExample &e) {
  nlohmann::json j = {{"src", e.incorrect}, {"tgt", e.correct}, {"origin", to_string(e.origin)}};
  if (e.explanation)
    j["explanation"] = *e.explanation;
  return j;
}

inline ParallelExample example_from_json(const nlohmann::json &j) {
  ParallelExample e;
  e.incorrect = j.at("src").get<std::string>();
  e.correct = j.at("tgt").get<std::string>();
  e.origin = j.value("origin", std::string("synthetic")) == "gold" ? Origin::HumanAnnotated
                                                                   : Origin::Synthetic;
  if (j.contains("explanation"))
    e.explanation = j.at("explanation").get<std::string>();
  return e;
}

inline nlohmann::json split_manifest(const Split &s, const SplitSpec &spec, const MergeReport &merge) {
  return {
      {"seed", spec.seed},
      {"fractions", {{"train", spec.fractions[0]}, {"validation", spec.fractions[1]}, {"test", spec.fractions[2]}}},
      {"unit", spec.unit == SplitUnit::Sentence ? "sentence" : "group"},
      {"counts", {{"train", s.train.size()}, {"validation", s.validation.size()}, {"test", s.test.size()}}},
      {"merge", {{"synthetic", merge.synthetic}, {"gold", merge.gold}, {"duplicates", merge.duplicates}, {"total", merge.total}}},
  };
}

} // namespace gec

#endif // GEC_DATASET_HPP
