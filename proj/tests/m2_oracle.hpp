// SPDX-License-Identifier: Apache-2.0
// Exhaustive MaxMatch oracle and random annotated sentences.
#ifndef GEC_TESTS_M2_ORACLE_HPP
#define GEC_TESTS_M2_ORACLE_HPP

#include "gec/metrics.hpp"

#include <random>
#include <string>
#include <vector>

namespace gec::test {

// Enumerates every minimum-cost alignment path between source and hypothesis,
// then every grouping of each path's steps into edits, and keeps the grouping
// with the most gold matches and then the fewest other edits.

struct Step {
  std::size_t di, dj; // tokens consumed from source / hypothesis
  bool same;
};

using Tok = std::vector<std::string>;

inline std::size_t lev(const Tok &a, const Tok &b) {
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

inline void all_paths(const Tok &s, const Tok &h, std::size_t i, std::size_t j, std::size_t cost, std::size_t budget,
               std::vector<Step> &cur, std::vector<std::vector<Step>> &out) {
  if (cost > budget)
    return;
  if (i == s.size() && j == h.size()) {
    if (cost == budget)
      out.push_back(cur);
    return;
  }
  if (i < s.size() && j < h.size()) {
    const bool same = s[i] == h[j];
    cur.push_back({1, 1, same});
    all_paths(s, h, i + 1, j + 1, cost + (same ? 0 : 1), budget, cur, out);
    cur.pop_back();
  }
  if (i < s.size()) {
    cur.push_back({1, 0, false});
    all_paths(s, h, i + 1, j, cost + 1, budget, cur, out);
    cur.pop_back();
  }
  if (j < h.size()) {
    cur.push_back({0, 1, false});
    all_paths(s, h, i, j + 1, cost + 1, budget, cur, out);
    cur.pop_back();
  }
}

inline std::string join(const Tok &t, std::size_t b, std::size_t e) {
  std::string out;
  for (std::size_t k = b; k < e; ++k)
    out += (k > b ? " " : "") + t[k];
  return out;
}

inline M2Counts oracle_counts(const Tok &src, const Tok &hyp, const std::vector<M2Edit> &gold) {
  std::vector<std::vector<Step>> paths;
  std::vector<Step> cur;
  all_paths(src, hyp, 0, 0, 0, lev(src, hyp), cur, paths);
  M2Counts best;
  bool have = false;
  for (const auto &path : paths) {
    const std::size_t cuts = path.size() ? path.size() - 1 : 0;
    for (std::uint64_t mask = 0; mask < (1ull << cuts); ++mask) {
      M2Counts c;
      c.gold = gold.size();
      bool valid = true;
      std::size_t i = 0, j = 0, seg_start = 0;
      for (std::size_t k = 0; k < path.size() && valid; ++k) {
        if (k + 1 < path.size() && !(mask >> k & 1))
          continue; // segment continues
        std::size_t i2 = i, j2 = j, unchanged = 0;
        for (std::size_t t = seg_start; t <= k; ++t) {
          i2 += path[t].di;
          j2 += path[t].dj;
          unchanged += path[t].same ? 1 : 0;
        }
        if (k > seg_start && unchanged > 2)
          valid = false;
        const auto rep = join(hyp, j, j2);
        if (join(src, i, i2) != rep) {
          ++c.proposed;
          for (const auto &g : gold)
            if (g.start == i && g.end == i2 &&
                std::find(g.corrections.begin(), g.corrections.end(), rep) != g.corrections.end()) {
              ++c.correct;
              break;
            }
        }
        i = i2;
        j = j2;
        seg_start = k + 1;
      }
      if (!valid)
        continue;
      if (!have || c.correct > best.correct || (c.correct == best.correct && c.proposed < best.proposed)) {
        best = c;
        have = true;
      }
    }
  }
  if (!have)
    best.gold = gold.size();
  return best;
}

struct Synthetic {
  Tok src, hyp;
  std::vector<M2Edit> gold;
};

// Random source, gold edits on disjoint spans, and a hypothesis applying a
// random subset of them plus an occasional wrong edit.
inline Synthetic make_synthetic(std::mt19937_64 &rng) {
  const Tok vocab{"a", "go", "koy", "ga", "fuo", ","};
  std::uniform_int_distribution<std::size_t> len(2, 6), pick(0, vocab.size() - 1), coin(0, 2);
  Synthetic s;
  for (std::size_t i = len(rng); i > 0; --i)
    s.src.push_back(vocab[pick(rng)]);
  struct Change {
    std::size_t start, end;
    Tok rep;
    bool applied;
  };
  std::vector<Change> changes;
  std::size_t pos = 0;
  while (pos <= s.src.size()) {
    if (coin(rng) == 0) {
      const std::size_t kind = coin(rng); // 0 insert, 1 replace, 2 delete
      Change c{pos, pos, {}, coin(rng) != 0};
      if (kind == 0 || pos == s.src.size()) {
        c.rep = {vocab[pick(rng)]};
      } else {
        c.end = pos + 1;
        if (kind == 1)
          c.rep = {vocab[pick(rng)]};
      }
      changes.push_back(c);
      pos = c.end + 1;
    } else {
      ++pos;
    }
  }
  std::size_t i = 0;
  for (const auto &c : changes) {
    s.hyp.insert(s.hyp.end(), s.src.begin() + static_cast<long>(i), s.src.begin() + static_cast<long>(c.start));
    if (c.applied)
      s.hyp.insert(s.hyp.end(), c.rep.begin(), c.rep.end());
    else
      s.hyp.insert(s.hyp.end(), s.src.begin() + static_cast<long>(c.start), s.src.begin() + static_cast<long>(c.end));
    i = c.end;
    M2Edit e;
    e.start = c.start;
    e.end = c.end;
    e.corrections = {join(c.rep, 0, c.rep.size())};
    s.gold.push_back(e);
  }
  s.hyp.insert(s.hyp.end(), s.src.begin() + static_cast<long>(i), s.src.end());
  if (coin(rng) == 0 && !s.hyp.empty())
    s.hyp[rng() % s.hyp.size()] = "zz"; // an edit no annotator asked for
  return s;
}

} // namespace gec::test

#endif // GEC_TESTS_M2_ORACLE_HPP
