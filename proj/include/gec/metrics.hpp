// SPDX-License-Identifier: Apache-2.0
#ifndef GEC_METRICS_HPP
#define GEC_METRICS_HPP

#include "gec/diagnostic.hpp"
#include "gec/error.hpp"
#include "gec/noise.hpp"
#include "gec/text.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace gec {

// ---------------------------------------------------------------------------
// Spelling metrics

struct SpellEvalOutcome {
  std::size_t records = 0;
  std::size_t errors_total = 0;
  std::size_t errors_detected = 0;
  std::size_t suggestions_correct = 0;  // top-1 equals the original word
  std::size_t suggestions_in_top_n = 0; // original word anywhere in the list
  std::size_t alignment_failures = 0;   // corrupted word could not be located
  double detection_rate = 0.0;
  double suggestion_accuracy = 0.0;

  void finalize() {
    detection_rate = errors_total ? static_cast<double>(errors_detected) / errors_total : 0.0;
    suggestion_accuracy =
        errors_detected ? static_cast<double>(suggestions_correct) / errors_detected : 0.0;
  }

  friend bool operator==(const SpellEvalOutcome &, const SpellEvalOutcome &) = default;
};

using Checker = std::function<std::vector<Diagnostic>(std::string_view)>;

/// Scores a checker against corruption records. Each distinct word touched
/// by a record's ops is one error. It is detected when some diagnostic span
/// contains the corrupted word, and corrected when that diagnostic's first
/// suggestion equals the original word. Words that cannot be located in
/// either sentence are counted as alignment failures and left out of the
/// totals.
inline SpellEvalOutcome spell_eval(const std::vector<CorruptionRecord> &records, const Checker &checker) {
  SpellEvalOutcome out;
  for (const auto &rec : records) {
    ++out.records;
    const auto orig = tokenize(rec.original);
    const auto corr = tokenize(rec.corrupted);
    const auto ow = word_indices(orig);
    const auto cw = word_indices(corr);
    std::set<std::size_t> touched;
    for (const auto &op : rec.ops)
      touched.insert(op.word);
    const auto diags = checker(rec.corrupted);
    for (auto wi : touched) {
      if (wi >= ow.size() || wi >= cw.size() || ow.size() != cw.size()) {
        ++out.alignment_failures;
        continue;
      }
      ++out.errors_total;
      const Token &bad = corr[cw[wi]];
      const std::string &gold = orig[ow[wi]].text;
      auto hit = std::find_if(diags.begin(), diags.end(),
                              [&](const Diagnostic &d) { return d.span.contains(bad.span); });
      if (hit == diags.end())
        continue;
      ++out.errors_detected;
      if (!hit->suggestions.empty() && hit->suggestions.front().replacement == gold)
        ++out.suggestions_correct;
      if (std::any_of(hit->suggestions.begin(), hit->suggestions.end(),
                      [&](const Suggestion &s) { return s.replacement == gold; }))
        ++out.suggestions_in_top_n;
    }
  }
  out.finalize();
  return out;
}

// ---------------------------------------------------------------------------
// GLEU (source-penalized n-gram precision with brevity penalty)

struct GleuConfig {
  std::size_t max_n = 4;
};

struct GleuStats {
  double hyp_len = 0;
  double ref_len = 0;
  std::vector<double> matched;  // per order, after the source penalty
  std::vector<double> possible; // per order

  GleuStats &operator+=(const GleuStats &o) {
    hyp_len += o.hyp_len;
    ref_len += o.ref_len;
    if (matched.size() < o.matched.size()) {
      matched.resize(o.matched.size());
      possible.resize(o.possible.size());
    }
    for (std::size_t i = 0; i < o.matched.size(); ++i) {
      matched[i] += o.matched[i];
      possible[i] += o.possible[i];
    }
    return *this;
  }
};

namespace metrics::detail {

using Tokens = std::vector<std::string>;

inline std::map<Tokens, std::size_t> ngrams(const Tokens &t, std::size_t n) {
  std::map<Tokens, std::size_t> out;
  for (std::size_t i = 0; i + n <= t.size(); ++i)
    ++out[Tokens(t.begin() + i, t.begin() + i + n)];
  return out;
}

inline std::size_t count_of(const std::map<Tokens, std::size_t> &m, const Tokens &k) {
  auto it = m.find(k);
  return it == m.end() ? 0 : it->second;
}

} // namespace metrics::detail

/// Per order n: matched = |H & R| - sum_g min(max(H-R, 0), max(S-R, 0)),
/// clipped at zero, where H, R and S are the hypothesis, reference and
/// source n-gram counts. Hypothesis n-grams the reference does not license
/// are penalized when they are carried over from the source.
inline GleuStats gleu_stats(const std::vector<std::string> &hyp, const std::vector<std::string> &src,
                            const std::vector<std::string> &ref, const GleuConfig &cfg = {}) {
  using namespace metrics::detail;
  GleuStats st;
  st.hyp_len = static_cast<double>(hyp.size());
  st.ref_len = static_cast<double>(ref.size());
  for (std::size_t n = 1; n <= cfg.max_n; ++n) {
    const auto h = ngrams(hyp, n);
    const auto r = ngrams(ref, n);
    const auto s = ngrams(src, n);
    double overlap = 0, penalty = 0;
    for (const auto &[g, hc] : h) {
      const std::size_t rc = count_of(r, g);
      const std::size_t sc = count_of(s, g);
      overlap += static_cast<double>(std::min(hc, rc));
      const std::size_t unlicensed = hc > rc ? hc - rc : 0;
      const std::size_t from_source = sc > rc ? sc - rc : 0;
      penalty += static_cast<double>(std::min(unlicensed, from_source));
    }
    st.matched.push_back(std::max(0.0, overlap - penalty));
    st.possible.push_back(hyp.size() + 1 > n ? static_cast<double>(hyp.size() + 1 - n) : 0.0);
  }
  return st;
}

/// Geometric mean of the per-order precisions over the orders the
/// hypothesis is long enough to have, times exp(min(0, 1 - r/c)).
/// Zero for an empty hypothesis or when any used order matches nothing.
inline double gleu_from_stats(const GleuStats &st) {
  if (st.hyp_len <= 0)
    return 0.0;
  double log_sum = 0;
  std::size_t orders = 0;
  for (std::size_t i = 0; i < st.matched.size(); ++i) {
    if (st.possible[i] <= 0)
      continue;
    if (st.matched[i] <= 0)
      return 0.0;
    log_sum += std::log(st.matched[i] / st.possible[i]);
    ++orders;
  }
  if (orders == 0)
    return 0.0;
  const double bp = std::exp(std::min(0.0, 1.0 - st.ref_len / st.hyp_len));
  return bp * std::exp(log_sum / static_cast<double>(orders));
}

/// Sentence GLEU on pre-tokenized input, averaged over references.
inline double gleu(const std::vector<std::string> &hyp, const std::vector<std::string> &src,
                   const std::vector<std::vector<std::string>> &refs, const GleuConfig &cfg = {}) {
  if (refs.empty())
    throw ParameterError("gleu needs at least one reference");
  std::vector<double> scores;
  for (const auto &r : refs)
    scores.push_back(gleu_from_stats(gleu_stats(hyp, src, r, cfg)));
  // Summing in sorted order makes the result independent of reference order.
  std::sort(scores.begin(), scores.end());
  double sum = 0;
  for (double s : scores)
    sum += s;
  return sum / static_cast<double>(refs.size());
}

inline double gleu(std::string_view hyp, std::string_view src, const std::vector<std::string> &refs,
                   const GleuConfig &cfg = {}) {
  std::vector<std::vector<std::string>> r;
  for (const auto &ref : refs)
    r.push_back(scoring_tokens(ref));
  return gleu(scoring_tokens(hyp), scoring_tokens(src), r, cfg);
}

/// Corpus GLEU: statistics are averaged over each sentence's references,
/// summed over sentences, then combined once.
inline double corpus_gleu(const std::vector<std::string> &hyps, const std::vector<std::string> &srcs,
                          const std::vector<std::vector<std::string>> &refs, const GleuConfig &cfg = {}) {
  if (hyps.size() != srcs.size() || hyps.size() != refs.size())
    throw ParameterError("gleu: hypothesis, source and reference counts differ");
  GleuStats total;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    if (refs[i].empty())
      throw ParameterError("gleu: sentence " + std::to_string(i + 1) + " has no reference");
    const auto h = scoring_tokens(hyps[i]);
    const auto s = scoring_tokens(srcs[i]);
    GleuStats avg;
    for (const auto &r : refs[i])
      avg += gleu_stats(h, s, scoring_tokens(r), cfg);
    const double k = static_cast<double>(refs[i].size());
    avg.hyp_len /= k;
    avg.ref_len /= k;
    for (auto &v : avg.matched) v /= k;
    for (auto &v : avg.possible) v /= k;
    total += avg;
  }
  return gleu_from_stats(total);
}

// ---------------------------------------------------------------------------
// M2 (MaxMatch)

struct M2Edit {
  std::size_t start = 0;
  std::size_t end = 0;
  std::vector<std::string> corrections; // alternatives, tokens joined by ' '
  std::string type;

  friend bool operator==(const M2Edit &, const M2Edit &) = default;
};

/// One annotator's edits for one source sentence.
struct M2Annotation {
  std::string source; // tokenized, space separated
  std::vector<M2Edit> edits;
  int annotator = 0;
};

/// All annotators' views of one sentence (at least one entry).
using M2Sentence = std::vector<M2Annotation>;

inline std::vector<std::string> split_spaces(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ')
      ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ')
      ++j;
    if (j > i)
      out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

namespace metrics::detail {

inline std::vector<std::string> split_on(std::string_view s, std::string_view sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      out.emplace_back(s.substr(pos));
      return out;
    }
    out.emplace_back(s.substr(pos, next - pos));
    pos = next + sep.size();
  }
}

inline std::string join_tokens(const std::vector<std::string> &t, std::size_t b, std::size_t e) {
  std::string out;
  for (std::size_t i = b; i < e; ++i) {
    if (i > b)
      out += ' ';
    out += t[i];
  }
  return out;
}

} // namespace metrics::detail

/// Parses the M2 exchange format:
///   S <tokenized source>
///   A <start> <end>|||<type>|||<correction>|||<required>|||<comment>|||<annotator>
/// Blocks are separated by blank lines. "-NONE-" as correction is the empty
/// string; "a||b" lists alternatives; start -1 marks an annotator with no
/// edits.
inline std::vector<M2Sentence> parse_m2(std::istream &in) {
  using metrics::detail::split_on;
  std::vector<M2Sentence> out;
  std::string line;
  std::size_t lineno = 0;
  std::string source;
  std::map<int, M2Annotation> annotators;
  bool open = false;
  auto flush = [&] {
    if (!open)
      return;
    M2Sentence s;
    if (annotators.empty())
      s.push_back({source, {}, 0});
    for (auto &[id, a] : annotators) {
      std::stable_sort(a.edits.begin(), a.edits.end(), [](const M2Edit &x, const M2Edit &y) {
        return std::tie(x.start, x.end) < std::tie(y.start, y.end);
      });
      s.push_back(std::move(a));
    }
    out.push_back(std::move(s));
    annotators.clear();
    open = false;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    if (line.rfind("S ", 0) == 0 || line == "S") {
      flush();
      source = line.size() > 2 ? line.substr(2) : "";
      open = true;
      continue;
    }
    if (line.rfind("A ", 0) != 0)
      throw ParseError("expected an 'S' or 'A' line", lineno);
    if (!open)
      throw ParseError("'A' line before any 'S' line", lineno);
    const auto fields = split_on(std::string_view(line).substr(2), "|||");
    if (fields.size() < 3)
      throw ParseError("'A' line needs span, type and correction", lineno);
    std::istringstream span(fields[0]);
    long long start = 0, end = 0;
    if (!(span >> start >> end))
      throw ParseError("bad edit span '" + fields[0] + "'", lineno);
    int annotator = 0;
    if (fields.size() >= 6) {
      try {
        annotator = std::stoi(fields[5]);
      } catch (const std::exception &) {
        throw ParseError("bad annotator id '" + fields[5] + "'", lineno);
      }
    }
    auto &ann = annotators[annotator];
    ann.source = source;
    ann.annotator = annotator;
    if (start < 0)
      continue;
    const auto ntok = split_spaces(source).size();
    if (end < start || static_cast<std::size_t>(end) > ntok)
      throw ParseError("edit span out of range", lineno);
    M2Edit e;
    e.start = static_cast<std::size_t>(start);
    e.end = static_cast<std::size_t>(end);
    e.type = fields[1];
    for (auto alt : split_on(fields[2], "||")) {
      if (alt == "-NONE-")
        alt.clear();
      e.corrections.push_back(metrics::detail::join_tokens(split_spaces(alt), 0, split_spaces(alt).size()));
    }
    ann.edits.push_back(std::move(e));
  }
  flush();
  return out;
}

/// Candidate edit between lattice nodes. Source span [src_start, src_end)
/// becomes the hypothesis tokens [hyp_start, hyp_end).
struct LatticeEdge {
  std::size_t from = 0, to = 0;
  std::size_t src_start = 0, src_end = 0;
  std::size_t hyp_start = 0, hyp_end = 0;
  std::string replacement;
  bool noop = false;
  std::size_t unchanged = 0; // unchanged tokens inside the merged edit
};

/// Graph of all minimum-cost token alignments between source and hypothesis,
/// closed under merging consecutive edges while the merged edge contains at
/// most max_unchanged_words unchanged tokens. Nodes are alignment points
/// (i, j), sorted so that every edge goes from a lower to a higher index.
struct EditLattice {
  std::vector<std::pair<std::size_t, std::size_t>> nodes;
  std::vector<LatticeEdge> edges;
  std::size_t start = 0, end = 0;
};

inline EditLattice build_edit_lattice(const std::vector<std::string> &src,
                                      const std::vector<std::string> &hyp,
                                      std::size_t max_unchanged_words = 2) {
  const std::size_t n = src.size(), m = hyp.size();
  auto idx = [m](std::size_t i, std::size_t j) { return i * (m + 1) + j; };
  std::vector<std::size_t> fwd((n + 1) * (m + 1)), bwd((n + 1) * (m + 1));
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= m; ++j) {
      if (i == 0 || j == 0) {
        fwd[idx(i, j)] = i + j;
        continue;
      }
      fwd[idx(i, j)] = std::min({fwd[idx(i - 1, j)] + 1, fwd[idx(i, j - 1)] + 1,
                                 fwd[idx(i - 1, j - 1)] + (src[i - 1] == hyp[j - 1] ? 0 : 1)});
    }
  for (std::size_t i = n + 1; i-- > 0;)
    for (std::size_t j = m + 1; j-- > 0;) {
      if (i == n || j == m) {
        bwd[idx(i, j)] = (n - i) + (m - j);
        continue;
      }
      bwd[idx(i, j)] = std::min({bwd[idx(i + 1, j)] + 1, bwd[idx(i, j + 1)] + 1,
                                 bwd[idx(i + 1, j + 1)] + (src[i] == hyp[j] ? 0 : 1)});
    }
  const std::size_t total = fwd[idx(n, m)];

  EditLattice lat;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> node_id;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= m; ++j)
      if (fwd[idx(i, j)] + bwd[idx(i, j)] == total) {
        node_id[{i, j}] = lat.nodes.size();
        lat.nodes.push_back({i, j});
      }
  lat.start = node_id.at({0, 0});
  lat.end = node_id.at({n, m});

  // Optimal single-step transitions.
  std::vector<std::vector<std::pair<std::size_t, bool>>> step(lat.nodes.size());
  for (std::size_t u = 0; u < lat.nodes.size(); ++u) {
    const auto [i, j] = lat.nodes[u];
    auto try_step = [&](std::size_t i2, std::size_t j2, std::size_t cost, bool noop) {
      if (i2 > n || j2 > m)
        return;
      if (fwd[idx(i, j)] + cost + bwd[idx(i2, j2)] != total)
        return;
      step[u].push_back({node_id.at({i2, j2}), noop});
    };
    if (i < n && j < m)
      try_step(i + 1, j + 1, src[i] == hyp[j] ? 0 : 1, src[i] == hyp[j]);
    try_step(i + 1, j, 1, false);
    try_step(i, j + 1, 1, false);
  }

  // Closure: from every node, walk forward tracking the fewest unchanged
  // tokens on any path to each reachable node.
  constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();
  for (std::size_t u = 0; u < lat.nodes.size(); ++u) {
    std::vector<std::size_t> best(lat.nodes.size(), inf);
    best[u] = 0;
    for (std::size_t v = u; v < lat.nodes.size(); ++v) {
      if (best[v] == inf)
        continue;
      for (const auto &[w, noop] : step[v]) {
        const std::size_t cand = best[v] + (noop ? 1 : 0);
        // Single steps always exist; merged edges respect the bound.
        if (v != u && cand > max_unchanged_words)
          continue;
        best[w] = std::min(best[w], cand);
      }
    }
    for (std::size_t w = u + 1; w < lat.nodes.size(); ++w) {
      if (best[w] == inf)
        continue;
      const auto [i1, j1] = lat.nodes[u];
      const auto [i2, j2] = lat.nodes[w];
      LatticeEdge e;
      e.from = u;
      e.to = w;
      e.src_start = i1;
      e.src_end = i2;
      e.hyp_start = j1;
      e.hyp_end = j2;
      e.replacement = metrics::detail::join_tokens(hyp, j1, j2);
      e.noop = metrics::detail::join_tokens(src, i1, i2) == e.replacement;
      e.unchanged = best[w];
      lat.edges.push_back(std::move(e));
    }
  }
  return lat;
}

inline bool matches_gold(const LatticeEdge &e, const std::vector<M2Edit> &gold) {
  return std::any_of(gold.begin(), gold.end(), [&](const M2Edit &g) {
    return g.start == e.src_start && g.end == e.src_end &&
           std::find(g.corrections.begin(), g.corrections.end(), e.replacement) != g.corrections.end();
  });
}

struct M2Counts {
  std::size_t correct = 0;  // proposed edits matching gold
  std::size_t proposed = 0; // non-noop edits on the chosen path
  std::size_t gold = 0;

  M2Counts &operator+=(const M2Counts &o) {
    correct += o.correct;
    proposed += o.proposed;
    gold += o.gold;
    return *this;
  }
  friend bool operator==(const M2Counts &, const M2Counts &) = default;
};

/// Picks the lattice path with the most gold matches and, among those, the
/// fewest other edits. Gold-matching edges weigh -(|E| + 1), other edits 1,
/// unchanged spans 0; the shortest path under these weights is the answer.
inline M2Counts select_edits(const EditLattice &lat, const std::vector<M2Edit> &gold,
                             std::vector<LatticeEdge> *chosen = nullptr) {
  const long long big = static_cast<long long>(lat.edges.size()) + 1;
  std::vector<std::vector<std::size_t>> out_edges(lat.nodes.size());
  for (std::size_t k = 0; k < lat.edges.size(); ++k)
    out_edges[lat.edges[k].from].push_back(k);
  constexpr long long inf = std::numeric_limits<long long>::max();
  std::vector<long long> dist(lat.nodes.size(), inf);
  std::vector<std::size_t> via(lat.nodes.size(), lat.edges.size());
  dist[lat.start] = 0;
  for (std::size_t v = lat.start; v < lat.nodes.size(); ++v) {
    if (dist[v] == inf)
      continue;
    for (auto k : out_edges[v]) {
      const auto &e = lat.edges[k];
      const long long wgt = e.noop ? 0 : (matches_gold(e, gold) ? -big : 1);
      if (dist[v] + wgt < dist[e.to]) {
        dist[e.to] = dist[v] + wgt;
        via[e.to] = k;
      }
    }
  }
  M2Counts c;
  c.gold = gold.size();
  for (std::size_t v = lat.end; v != lat.start;) {
    const auto &e = lat.edges[via[v]];
    if (!e.noop) {
      ++c.proposed;
      if (matches_gold(e, gold))
        ++c.correct;
      if (chosen)
        chosen->push_back(e);
    }
    v = e.from;
  }
  if (chosen)
    std::reverse(chosen->begin(), chosen->end());
  return c;
}

struct M2Config {
  double beta = 0.5;
  std::size_t max_unchanged_words = 2;
};

struct PrfScore {
  double precision = 1.0;
  double recall = 1.0;
  double f = 1.0;
};

/// Precision is 1 with no proposed edits, recall is 1 with no gold edits,
/// F is 0 when both P and R are 0.
inline PrfScore prf(const M2Counts &c, double beta) {
  PrfScore s;
  s.precision = c.proposed ? static_cast<double>(c.correct) / c.proposed : 1.0;
  s.recall = c.gold ? static_cast<double>(c.correct) / c.gold : 1.0;
  const double b2 = beta * beta;
  const double denom = b2 * s.precision + s.recall;
  s.f = denom > 0 ? (1 + b2) * s.precision * s.recall / denom : 0.0;
  return s;
}

struct M2Result {
  M2Counts counts;
  PrfScore score;
  std::vector<M2Counts> per_sentence;
  std::vector<int> chosen_annotator;
};

/// Corpus MaxMatch score. For each sentence the annotator whose edits give
/// the best running F is used (first wins ties).
inline M2Result m2_score(const std::vector<std::string> &hypotheses,
                         const std::vector<M2Sentence> &gold, const M2Config &cfg = {}) {
  if (hypotheses.size() != gold.size())
    throw ParameterError("m2: " + std::to_string(hypotheses.size()) + " hypotheses for " +
                         std::to_string(gold.size()) + " annotated sentences");
  M2Result res;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    if (gold[s].empty())
      throw ParameterError("m2: sentence " + std::to_string(s + 1) + " has no annotation");
    const auto hyp = scoring_tokens(hypotheses[s]);
    const auto src = split_spaces(gold[s].front().source);
    const auto lattice = build_edit_lattice(src, hyp, cfg.max_unchanged_words);
    M2Counts best;
    int best_ann = gold[s].front().annotator;
    double best_f = -1;
    for (const auto &ann : gold[s]) {
      const auto c = select_edits(lattice, ann.edits);
      M2Counts running = res.counts;
      running += c;
      const double f = prf(running, cfg.beta).f;
      if (f > best_f) {
        best_f = f;
        best = c;
        best_ann = ann.annotator;
      }
    }
    res.counts += best;
    res.per_sentence.push_back(best);
    res.chosen_annotator.push_back(best_ann);
  }
  res.score = prf(res.counts, cfg.beta);
  return res;
}

// ---------------------------------------------------------------------------
// Reports

struct ScoreReport {
  std::string method = "Rule-based";
  std::optional<double> gleu;
  std::optional<M2Result> m2;
  std::optional<SpellEvalOutcome> spell;
  nlohmann::json extra = nlohmann::json::object(); // free-form provenance
};

inline nlohmann::json to_json(const ScoreReport &r) {
  nlohmann::json j;
  j["method"] = r.method;
  j["gleu"] = r.gleu ? nlohmann::json(*r.gleu) : nlohmann::json(nullptr);
  if (r.m2) {
    nlohmann::json per = nlohmann::json::array();
    for (const auto &c : r.m2->per_sentence)
      per.push_back({{"correct", c.correct}, {"proposed", c.proposed}, {"gold", c.gold}});
    j["m2"] = {{"precision", r.m2->score.precision}, {"recall", r.m2->score.recall},
               {"f", r.m2->score.f}, {"correct", r.m2->counts.correct},
               {"proposed", r.m2->counts.proposed}, {"gold", r.m2->counts.gold},
               {"per_sentence", per}};
  } else {
    j["m2"] = nullptr;
  }
  if (r.spell) {
    const auto &s = *r.spell;
    j["spell"] = {{"records", s.records},
                  {"errors_total", s.errors_total},
                  {"errors_detected", s.errors_detected},
                  {"suggestions_correct", s.suggestions_correct},
                  {"suggestions_in_top_n", s.suggestions_in_top_n},
                  {"alignment_failures", s.alignment_failures},
                  {"detection_rate", s.detection_rate},
                  {"suggestion_accuracy", s.suggestion_accuracy}};
  } else {
    j["spell"] = nullptr;
  }
  j["extra"] = r.extra;
  return j;
}

inline ScoreReport report_from_json(const nlohmann::json &j) {
  ScoreReport r;
  r.method = j.at("method").get<std::string>();
  if (!j.at("gleu").is_null())
    r.gleu = j.at("gleu").get<double>();
  if (!j.at("m2").is_null()) {
    const auto &m = j.at("m2");
    M2Result res;
    res.score = {m.at("precision").get<double>(), m.at("recall").get<double>(), m.at("f").get<double>()};
    res.counts = {m.at("correct").get<std::size_t>(), m.at("proposed").get<std::size_t>(),
                  m.at("gold").get<std::size_t>()};
    for (const auto &p : m.at("per_sentence"))
      res.per_sentence.push_back({p.at("correct").get<std::size_t>(), p.at("proposed").get<std::size_t>(),
                                  p.at("gold").get<std::size_t>()});
    r.m2 = std::move(res);
  }
  if (!j.at("spell").is_null()) {
    const auto &s = j.at("spell");
    SpellEvalOutcome o;
    o.records = s.at("records").get<std::size_t>();
    o.errors_total = s.at("errors_total").get<std::size_t>();
    o.errors_detected = s.at("errors_detected").get<std::size_t>();
    o.suggestions_correct = s.at("suggestions_correct").get<std::size_t>();
    o.suggestions_in_top_n = s.at("suggestions_in_top_n").get<std::size_t>();
    o.alignment_failures = s.at("alignment_failures").get<std::size_t>();
    o.detection_rate = s.at("detection_rate").get<double>();
    o.suggestion_accuracy = s.at("suggestion_accuracy").get<double>();
    r.spell = o;
  }
  r.extra = j.value("extra", nlohmann::json::object());
  return r;
}

namespace metrics::detail {

inline std::string percent(double rate) {
  char buf[32];
  const double v = rate * 100.0;
  if (std::abs(v - std::round(v)) < 1e-9)
    std::snprintf(buf, sizeof buf, "%.0f%%", std::round(v));
  else
    std::snprintf(buf, sizeof buf, "%.2f%%", v);
  return buf;
}

inline std::string fixed(double v, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

} // namespace metrics::detail

/// "Method | GLEU | M² | Detection | Correction" with '-' for missing
/// metrics. M² shows F0.5.
inline std::string render_table(const std::vector<ScoreReport> &reports) {
  using namespace metrics::detail;
  std::string out = "Method | GLEU | M² | Detection | Correction\n";
  for (const auto &r : reports) {
    out += r.method + " | ";
    out += (r.gleu ? fixed(*r.gleu, 4) : "-") + " | ";
    out += (r.m2 ? fixed(r.m2->score.f, 3) : "-") + " | ";
    out += (r.spell ? percent(r.spell->detection_rate) : "-") + " | ";
    out += (r.spell ? percent(r.spell->suggestion_accuracy) : "-");
    out += '\n';
  }
  return out;
}

enum class ReportFormat { Structured, Table };

inline void emit_report(const ScoreReport &r, ReportFormat format, std::ostream &out) {
  if (format == ReportFormat::Structured)
    out << to_json(r).dump(2) << '\n';
  else
    out << render_table({r});
}

} // namespace gec

#endif // GEC_METRICS_HPP
