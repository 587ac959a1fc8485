// SPDX-License-Identifier: Apache-2.0
#include "gec/metrics.hpp"
#include "m2_oracle.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace gec;
using gec::test::join;

namespace {

CorruptionRecord one_word_record(const std::string &orig_word, const std::string &bad_word) {
  CorruptionRecord r;
  r.original = orig_word + " koy";
  r.corrupted = bad_word + " koy";
  r.ops = {{NoiseOpKind::Substitute, 0, 0, 1, "q"}};
  return r;
}

std::vector<M2Sentence> m2_of(const std::string &text) {
  std::istringstream in(text);
  return parse_m2(in);
}

} // namespace

TEST(SpellEval, HandCountedRecords) {
  std::vector<CorruptionRecord> recs;
  for (int i = 0; i < 10; ++i)
    recs.push_back(one_word_record("sind" + std::string(1, static_cast<char>('a' + i)), "bad" + std::to_string(i)));
  // Flags records 0-5; suggests the right word for 0-3.
  const Checker stub = [&](std::string_view text) {
    std::vector<Diagnostic> out;
    const std::string s(text);
    for (int i = 0; i < 6; ++i)
      if (s == recs[i].corrupted) {
        Diagnostic d;
        d.span = {0, s.find(' ')};
        d.observed = s.substr(0, d.span.end);
        d.suggestions = {{i < 4 ? "sind" + std::string(1, static_cast<char>('a' + i)) : "nope", 1, 1.0}};
        out.push_back(d);
      }
    return out;
  };
  const auto o = spell_eval(recs, stub);
  EXPECT_EQ(o.records, 10u);
  EXPECT_EQ(o.errors_total, 10u);
  EXPECT_EQ(o.errors_detected, 6u);
  EXPECT_EQ(o.suggestions_correct, 4u);
  EXPECT_DOUBLE_EQ(o.detection_rate, 0.6);
  EXPECT_NEAR(o.suggestion_accuracy, 0.667, 5e-4);

  const auto none = spell_eval(recs, [](std::string_view) { return std::vector<Diagnostic>{}; });
  EXPECT_EQ(none.detection_rate, 0.0);
  EXPECT_EQ(none.suggestion_accuracy, 0.0);
  EXPECT_EQ(spell_eval({}, stub).errors_total, 0u);
}

TEST(SpellEval, UnalignableWordsAreSetAside) {
  auto r = one_word_record("sind", "si nd");
  const auto o = spell_eval({r}, [](std::string_view) { return std::vector<Diagnostic>{}; });
  EXPECT_EQ(o.alignment_failures, 1u);
  EXPECT_EQ(o.errors_total, 0u);
}

TEST(Gleu, Identities) {
  EXPECT_DOUBLE_EQ(gleu("A ga koy fuo .", "A go koy fuo .", {"A ga koy fuo ."}), 1.0);
  EXPECT_EQ(gleu("", "A go", {"A ga"}), 0.0);
  EXPECT_THROW(gleu("a", "a", std::vector<std::string>{}), ParameterError);
}

TEST(Gleu, CopyingAnUncorrectedSourceIsPenalized) {
  EXPECT_EQ(gleu("a b c d", "a b c d", {"a B c d"}), 0.0);
  EXPECT_LT(gleu("a b c d", "a b c d", {"a B c d"}), gleu("a B c d", "a b c d", {"a B c d"}));
}

TEST(Gleu, HandComputedPrecisions) {
  // Orders 1-4 match 5/6, 3/5, 2/4 and 1/3; equal lengths, no brevity penalty.
  const double want = std::pow(1.0 / 12.0, 0.25);
  EXPECT_NEAR(gleu("the cat sits on a mat", "the cat sat on the mat", {"the cat sits on the mat"}), want, 1e-12);
  // Shorter hypothesis: brevity penalty exp(1 - 6/5).
  const auto st = gleu_stats({"the", "cat", "sits", "on", "mat"}, {"x"}, {"the", "cat", "sits", "on", "the", "mat"});
  EXPECT_NEAR(gleu_from_stats(st), std::exp(1 - 6.0 / 5) * std::pow(5.0 / 5 * 3.0 / 4 * 2.0 / 3 * 1.0 / 2, 0.25),
              1e-12);
}

TEST(Gleu, ReferenceOrderDoesNotMatter) {
  const std::vector<std::string> refs{"A ga koy fuo", "A go koy fu", "Ay ga koy fuo", "A ga koy"};
  const double base = gleu("A ga koy fuo", "A go koy fuo", refs);
  auto perm = refs;
  std::sort(perm.begin(), perm.end());
  do {
    EXPECT_EQ(gleu("A ga koy fuo", "A go koy fuo", perm), base);
  } while (std::next_permutation(perm.begin(), perm.end()));
  const double c = corpus_gleu({"A ga koy fuo"}, {"A go koy fuo"}, {refs});
  std::reverse(perm.begin(), perm.end());
  EXPECT_NEAR(corpus_gleu({"A ga koy fuo"}, {"A go koy fuo"}, {perm}), c, 1e-12);
  EXPECT_THROW(corpus_gleu({"a"}, {}, {}), ParameterError);
}

TEST(M2, ParsesBlocksAlternativesAndNoEdit) {
  const auto g = m2_of("S Souba , Ay koy Niamey\n"
                       "A 3 3|||M:VERB:TENSE|||ga|||REQUIRED|||-NONE-|||0\n"
                       "A 4 5|||R:NOUN|||Niamey||Yamay|||REQUIRED|||-NONE-|||1\n"
                       "\n"
                       "S A go koy\n"
                       "A -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||0\n");
  ASSERT_EQ(g.size(), 2u);
  ASSERT_EQ(g[0].size(), 2u);
  EXPECT_EQ(g[0][0].edits[0].corrections, (std::vector<std::string>{"ga"}));
  EXPECT_EQ(g[0][1].edits[0].corrections, (std::vector<std::string>{"Niamey", "Yamay"}));
  EXPECT_TRUE(g[1][0].edits.empty());
  EXPECT_THROW(m2_of("S a b\nA 1 5|||x|||y|||REQUIRED|||-NONE-|||0\n"), ParseError);
  EXPECT_THROW(m2_of("A 0 1|||x|||y\n"), ParseError);
}

TEST(M2, MissingFutureMarkerExample) {
  const auto g = m2_of("S Souba , Ay koy Niamey\nA 3 3|||M:VERB:TENSE|||ga|||REQUIRED|||-NONE-|||0\n");
  const auto fixed = m2_score({"Souba, Ay ga koy Niamey"}, g);
  EXPECT_EQ(fixed.counts, (M2Counts{1, 1, 1}));
  EXPECT_DOUBLE_EQ(fixed.score.precision, 1.0);
  EXPECT_DOUBLE_EQ(fixed.score.recall, 1.0);
  EXPECT_DOUBLE_EQ(fixed.score.f, 1.0);

  const auto untouched = m2_score({"Souba , Ay koy Niamey"}, g);
  EXPECT_DOUBLE_EQ(untouched.score.precision, 1.0);
  EXPECT_DOUBLE_EQ(untouched.score.recall, 0.0);
  EXPECT_DOUBLE_EQ(untouched.score.f, 0.0);
  EXPECT_THROW(m2_score({}, g), ParameterError);
}

TEST(M2, NoGoldEditsConventions) {
  const auto g = m2_of("S A go koy\nA -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||0\n");
  const auto same = m2_score({"A go koy"}, g);
  EXPECT_DOUBLE_EQ(same.score.precision, 1.0);
  EXPECT_DOUBLE_EQ(same.score.recall, 1.0);
  const auto changed = m2_score({"A ga koy"}, g);
  EXPECT_DOUBLE_EQ(changed.score.precision, 0.0);
  EXPECT_DOUBLE_EQ(changed.score.recall, 1.0);
}

TEST(M2, PicksTheBestAnnotator) {
  const auto g = m2_of("S A go koy\n"
                       "A 1 2|||R|||gaa|||REQUIRED|||-NONE-|||0\n"
                       "A 1 2|||R|||ga|||REQUIRED|||-NONE-|||1\n");
  const auto r = m2_score({"A ga koy"}, g);
  EXPECT_EQ(r.chosen_annotator, (std::vector<int>{1}));
  EXPECT_DOUBLE_EQ(r.score.f, 1.0);
}

TEST(M2, AgreesWithBruteForceEnumeration) {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 300; ++iter) {
    const auto s = test::make_synthetic(rng);
    const auto lattice = build_edit_lattice(s.src, s.hyp);
    const auto got = select_edits(lattice, s.gold);
    const auto want = test::oracle_counts(s.src, s.hyp, s.gold);
    ASSERT_EQ(got, want) << join(s.src, 0, s.src.size()) << " => " << join(s.hyp, 0, s.hyp.size());
  }
}

TEST(M2, AddingACorrectEditNeverLowersRecall) {
  const auto g = m2_of("S a go koy fuo ,\n"
                       "A 1 2|||R|||ga|||REQUIRED|||-NONE-|||0\n"
                       "A 3 4|||R|||fu|||REQUIRED|||-NONE-|||0\n"
                       "A 5 5|||M|||.|||REQUIRED|||-NONE-|||0\n");
  const std::vector<std::string> steps{"a go koy fuo ,", "a ga koy fuo ,", "a ga koy fu ,", "a ga koy fu , ."};
  double last = -1;
  for (const auto &h : steps) {
    const double r = m2_score({h}, g).score.recall;
    EXPECT_GE(r, last) << h;
    last = r;
  }
  EXPECT_DOUBLE_EQ(last, 1.0);
}

TEST(Report, TableRowAndStructuredRoundTrip) {
  ScoreReport r;
  SpellEvalOutcome s;
  s.detection_rate = 1.0;
  s.suggestion_accuracy = 0.9627;
  r.spell = s;
  EXPECT_EQ(render_table({r}), "Method | GLEU | M² | Detection | Correction\nRule-based | - | - | 100% | 96.27%\n");

  r.gleu = 0.5;
  const auto g = m2_of("S Souba , Ay koy Niamey\nA 3 3|||M|||ga|||REQUIRED|||-NONE-|||0\n");
  r.m2 = m2_score({"Souba, Ay ga koy Niamey"}, g);
  r.extra = {{"seed", 7}};
  const auto back = report_from_json(nlohmann::json::parse(to_json(r).dump()));
  EXPECT_EQ(to_json(back), to_json(r));
  std::ostringstream table;
  emit_report(r, ReportFormat::Table, table);
  EXPECT_EQ(table.str(), render_table({r}));
}
