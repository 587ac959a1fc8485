// SPDX-License-Identifier: Apache-2.0
// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.
//
//   gec_acceptance <path-to-gec-binary> <data-dir> <work-dir>
#include "gec/gec.hpp"
#include "m2_oracle.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sys/wait.h>
#include <unordered_set>

namespace fs = std::filesystem;
using namespace gec;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string &what) {
    if (!ok) {
      if (pass)
        detail << "failed: " << what << "; ";
      pass = false;
    }
  }
};

struct Context {
  fs::path tool, data, work;
};

std::vector<WordEntry> entries_of(const std::vector<std::string> &words) {
  std::vector<WordEntry> out;
  for (const auto &w : words)
    out.push_back({w, 1, 0});
  return out;
}

std::string pct(double r) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << r * 100 << '%';
  return s.str();
}

int shell(const std::string &cmd, std::string *out = nullptr) {
  FILE *p = popen((cmd + " 2>&1").c_str(), "r");
  if (!p)
    return -1;
  std::string buf(4096, '\0');
  std::string all;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0)
    all.append(buf.data(), n);
  const int status = pclose(p);
  if (out)
    *out = all;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string q(const fs::path &p) { return "'" + p.string() + "'"; }

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

void worked_example(const Context &, Outcome &o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto lex = Lexicon::build(entries_of({"A", "sind", "sinda", "biri"}));
  const auto d = check_text(lex, RulePack{}, "A sindq biri");
  const double ms = ms_since(t0);
  o.require(d.size() == 1, "exactly one finding");
  if (d.size() == 1) {
    o.require(d[0].observed == "sindq" && d[0].span == Span{2, 7}, "finding is 'sindq' at [2,7)");
    o.require(d[0].kind == DiagnosticKind::NonWord, "kind non_word");
    o.require(d[0].suggestions.size() == 2 && d[0].suggestions[0].replacement == "sind" &&
                  d[0].suggestions[1].replacement == "sinda",
              "suggestions [sind, sinda]");
    for (const auto &s : d[0].suggestions)
      o.require(s.distance == 1, "suggestion distance 1");
  }
  o.require(ms < 1000, "under 1 s");
  o.detail << "latency " << std::fixed << std::setprecision(3) << ms << " ms";
}

void corruption_table(const Context &, Outcome &o) {
  const std::string s = "Sintina gaa Irikoy na beena da ganda taka.";
  const std::pair<NoiseOp, std::string> rows[] = {
      {{NoiseOpKind::Substitute, 2, 5, 1, "g"}, "Sintina gaa Irikog na beena da ganda taka."},
      {{NoiseOpKind::Delete, 4, 4, 1, ""}, "Sintina gaa Irikoy na been da ganda taka."},
      {{NoiseOpKind::Transpose, 1, 0, 2, ""}, "Sintina aga Irikoy na beena da ganda taka."},
      {{NoiseOpKind::Substitute, 5, 0, 1, "e"}, "Sintina gaa Irikoy na beena ea ganda taka."},
  };
  for (const auto &[op, want] : rows)
    o.require(replay_ops(s, {op}) == want, "replay gives '" + want + "'");
  std::size_t generated = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto res = corrupt_sentence(s, NoiseConfig{}, seed);
    o.require(res.records.size() == 4, "four variants per sentence");
    for (const auto &r : res.records) {
      ++generated;
      const auto dist = levenshtein(r.original, r.corrupted);
      o.require(r.ops.size() == 1 && replay_ops(s, r.ops) == r.corrupted && dist >= 1 && dist <= 2,
                "generated variant is one replayable op");
    }
  }
  o.detail << "4 manual ops, " << generated << " generated variants";
}

void detection_rate(const Context &c, Outcome &o) {
  const auto t0 = std::chrono::steady_clock::now();
  std::ifstream wl(c.data / "zarma/wordlist.tsv");
  const auto lex = Lexicon::build(read_wordlist(wl), {}, "dje");
  std::ifstream rf(c.data / "zarma/rules.txt");
  const auto rules = RulePack::parse(rf);
  NoiseConfig cfg;
  cfg.nonword_only = true;
  const auto lines = test::lines_of(c.data / "zarma/corpus.txt");
  const auto corr = corrupt_corpus(lines, cfg, &lex, 4);
  const Checker checker = [&](std::string_view t) { return check_text(lex, rules, t); };
  const auto r = spell_eval(corr.records, checker);

  // Breakdown by op kind and by the original word's distance to its typo.
  std::map<std::string, std::pair<std::size_t, std::size_t>> by_kind, by_dist;
  for (const auto &rec : corr.records) {
    const auto one = spell_eval({rec}, checker);
    const auto &op = rec.ops.front();
    const auto ot = tokenize(rec.original), ct = tokenize(rec.corrupted);
    const auto d = levenshtein(ot[word_indices(ot)[op.word]].text, ct[word_indices(ct)[op.word]].text);
    for (auto *m : {&by_kind, &by_dist}) {
      auto &slot = (*m)[m == &by_kind ? std::string(to_string(op.kind)) : "d" + std::to_string(d)];
      slot.first += one.suggestions_correct;
      slot.second += one.errors_detected;
    }
  }
  const double ms = ms_since(t0);
  o.require(r.errors_total > 0, "records were produced");
  o.require(r.detection_rate == 1.0, "detection rate 100%");
  o.require(r.suggestion_accuracy >= 0.90, "top-1 suggestion accuracy >= 90%");
  o.require(ms < 60000, "under 60 s");
  o.detail << "records=" << corr.records.size() << " excluded=" << corr.excluded << " detection="
           << pct(r.detection_rate) << " top1=" << pct(r.suggestion_accuracy)
           << " in_top_n=" << pct(r.errors_detected ? double(r.suggestions_in_top_n) / r.errors_detected : 0)
           << " [";
  for (const auto *m : {&by_kind, &by_dist})
    for (const auto &[k, v] : *m)
      o.detail << k << ' ' << pct(v.second ? double(v.first) / v.second : 0) << ' ';
  o.detail << "] " << std::fixed << std::setprecision(0) << ms << " ms";
}

void levenshtein_oracle(const Context &, Outcome &o) {
  const auto all = test::all_strings(U"abc", 5);
  std::size_t pairs = 0;
  for (const auto &a : all)
    for (const auto &b : all) {
      ++pairs;
      if (edit_distance(a, b) != test::matrix_distance(a, b)) {
        o.require(false, "exhaustive pair disagrees with the matrix oracle");
        return;
      }
    }
  for (const auto &a : test::all_strings(U"abc", 3))
    for (const auto &b : test::all_strings(U"abc", 3))
      o.require(edit_distance(a, b) == test::naive_distance(a, b), "short pair disagrees with recursion");
  std::mt19937_64 rng(12);
  for (int i = 0; i < 10000; ++i) {
    const auto a = test::random_scalars(rng, U"abɛŋ", 0, 12), b = test::random_scalars(rng, U"abɛŋ", 0, 12);
    o.require(edit_distance(a, b) == test::matrix_distance(a, b), "random pair disagrees");
    o.require(edit_distance(a, b) == edit_distance(b, a), "symmetry");
  }
  o.detail << pairs << " exhaustive pairs, 10000 random pairs";
}

void neighbourhood(const Context &, Outcome &o) {
  const auto words = test::random_words(101, 5000, 2, 9);
  const auto lex = Lexicon::build(entries_of(words));
  const auto queries = test::random_words(102, 100, 2, 9);
  std::size_t hits = 0;
  for (std::size_t d : {1u, 2u})
    for (const auto &qw : queries) {
      std::map<std::string, std::size_t> want, got;
      const auto qs = utf8::to_scalars(qw);
      for (const auto &w : words) {
        const auto dist = test::matrix_distance(qs, utf8::to_scalars(w));
        if (dist <= d)
          want[w] = dist;
      }
      for (const auto &m : lex.words_within_distance(qw, d))
        got[m.word] = m.distance;
      hits += got.size();
      o.require(got == want, "trie search matches full scan for '" + qw + "'");
    }
  o.detail << "200 queries over 5000 words, " << hits << " matches";
}

void bloom_properties(const Context &, Outcome &o) {
  const auto all = test::random_words(55, 20000, 6, 10);
  const std::vector<std::string> members(all.begin(), all.begin() + 10000);
  const auto lex = Lexicon::build(entries_of(members));
  for (const auto &w : members)
    o.require(lex.bloom_query(w) && lex.contains(w), "member missing");
  std::size_t fp = 0;
  for (std::size_t i = 10000; i < all.size(); ++i) {
    fp += lex.bloom_query(all[i]) ? 1 : 0;
    o.require(!lex.contains(all[i]), "non-member reported by the trie");
  }
  const double rate = fp / 10000.0, theory = lex.bloom().expected_false_positive_rate();
  o.require(rate <= 2 * theory, "false-positive rate within twice theory");
  const auto bytes = serialize_lexicon(lex);
  o.require(serialize_lexicon(deserialize_lexicon(bytes)) == bytes, "serialization round trip");
  o.detail << "fp=" << std::setprecision(4) << rate << " theory=" << theory;
}

void noise_replay(const Context &c, Outcome &o) {
  auto lines = test::lines_of(c.data / "zarma/corpus.txt");
  lines.resize(std::min<std::size_t>(lines.size(), 2500));
  while (lines.size() < 2500)
    lines.push_back(lines[lines.size() % 100]);
  NoiseConfig cfg;
  cfg.seed = 77;
  const auto a = corrupt_corpus(lines, cfg, nullptr, 1);
  o.require(a.records.size() == 10000, "10000 records");
  for (const auto &r : a.records) {
    const auto d = levenshtein(r.original, r.corrupted);
    o.require(replay_ops(r.original, r.ops) == r.corrupted && d >= 1 && d <= 2, "record replays exactly");
  }
  std::ostringstream x, y;
  write_structured(a.records, x);
  write_structured(corrupt_corpus(lines, cfg, nullptr, 4).records, y);
  o.require(x.str() == y.str(), "regeneration is byte-identical");
  o.detail << a.records.size() << " records, " << x.str().size() << " bytes";
}

void metric_pins(const Context &, Outcome &o) {
  const double g = gleu("the cat sits on a mat", "the cat sat on the mat", {"the cat sits on the mat"});
  o.require(std::abs(g - std::pow(1.0 / 12, 0.25)) < 1e-12, "hand-computed GLEU");
  o.require(gleu("a b c d", "a b c d", {"a B c d"}) < 1.0, "copying an erroneous source is penalized");
  std::istringstream m2("S Souba , Ay koy Niamey\nA 3 3|||M:VERB:TENSE|||ga|||REQUIRED|||-NONE-|||0\n");
  const auto gold = parse_m2(m2);
  const auto s = m2_score({"Souba, Ay ga koy Niamey"}, gold).score;
  o.require(s.precision == 1 && s.recall == 1 && s.f == 1, "M2 P=R=F=1 on the future-marker example");
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 50; ++i) {
    const auto syn = test::make_synthetic(rng);
    o.require(select_edits(build_edit_lattice(syn.src, syn.hyp), syn.gold) ==
                  test::oracle_counts(syn.src, syn.hyp, syn.gold),
              "M2 edit choice matches brute force");
  }
  o.detail << "gleu=" << std::setprecision(6) << g << ", 50 brute-force M2 sentences";
}

void split_contract(const Context &, Outcome &o) {
  std::vector<ParallelExample> data;
  for (int g = 0; g < 250; ++g)
    for (int v = 0; v < 4; ++v)
      data.push_back({"bad" + std::to_string(g) + "_" + std::to_string(v), "good" + std::to_string(g), std::nullopt, Origin::Synthetic});
  SplitSpec spec;
  spec.seed = 3;
  const auto s = split(data, spec);
  o.require(s.train.size() == 800 && s.validation.size() == 100 && s.test.size() == 100, "800/100/100");
  std::map<std::string, int> part;
  int idx = 0;
  for (const auto *p : {&s.train, &s.validation, &s.test}) {
    for (const auto &e : *p)
      o.require(part.emplace(e.correct, idx).first->second == idx, "group split across parts");
    ++idx;
  }
  const auto again = split(data, spec);
  o.require(again.train == s.train && again.test == s.test, "deterministic for a seed");
  spec.unit = SplitUnit::Sentence;
  const auto sent = split(data, spec);
  o.require(sent.train.size() == 800 && sent.validation.size() == 100 && sent.test.size() == 100,
            "sentence unit 800/100/100");
  o.detail << "1000 examples in 250 groups";
}

void portability(const Context &c, Outcome &o) {
  const auto dir = c.work / "bambara";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string tool = q(c.tool);
  std::string out;
  o.require(shell(tool + " build-lexicon -w " + q(c.data / "bambara/wordlist.tsv") + " -o " + q(dir / "lex.bin") +
                      " --language bm",
                  &out) == 0,
            "build-lexicon: " + out);
  o.require(shell(tool + " corrupt -i " + q(c.data / "bambara/corpus.txt") + " -o " + q(dir / "rec") +
                      " --nonword-only -l " + q(dir / "lex.bin") + " --language Bambara",
                  &out) == 0,
            "corrupt: " + out);
  o.require(shell(tool + " corrupt -i " + q(c.data / "bambara/corpus.txt") + " -o " + q(dir / "pairs") +
                      " -f two-file --nonword-only -l " + q(dir / "lex.bin"),
                  &out) == 0,
            "corrupt two-file: " + out);
  const int chk = shell(tool + " check -f jsonl -l " + q(dir / "lex.bin") + " -r " + q(c.data / "bambara/rules.txt") +
                            " " + q(dir / "pairs.src"),
                        &out);
  o.require(chk == 1, "check flags the corrupted text");
  std::set<std::size_t> flagged;
  std::istringstream rows(out);
  for (std::string line; std::getline(rows, line);)
    flagged.insert(nlohmann::json::parse(line)["line"].get<std::size_t>());
  const auto src_lines = test::lines_of(dir / "pairs.src").size();
  o.require(flagged.size() == src_lines, "every corrupted line has a finding");
  o.require(shell(tool + " eval --records " + q(dir / "rec.jsonl") + " -l " + q(dir / "lex.bin") + " -r " +
                      q(c.data / "bambara/rules.txt") + " -o " + q(dir / "report.json"),
                  &out) == 0,
            "eval: " + out);
  if (!o.pass)
    return;
  const auto report = report_from_json(nlohmann::json::parse(test::slurp(dir / "report.json")));
  o.require(report.spell && report.spell->detection_rate == 1.0, "detection 100%");
  if (report.spell)
    o.detail << "bambara lines=" << src_lines << " detection=" << pct(report.spell->detection_rate)
             << " top1=" << pct(report.spell->suggestion_accuracy);
}

} // namespace

int main(int argc, char **argv) {
  if (argc != 4) {
    std::cerr << "usage: gec_acceptance <gec-binary> <data-dir> <work-dir>\n";
    return 2;
  }
  const Context ctx{argv[1], argv[2], argv[3]};
  fs::create_directories(ctx.work);

  const std::vector<std::pair<const char *, std::function<void(const Context &, Outcome &)>>> criteria{
      {"worked-example-check", worked_example},
      {"manual-corruption-replay", corruption_table},
      {"detection-and-suggestion-rate", detection_rate},
      {"levenshtein-oracle", levenshtein_oracle},
      {"trie-neighbourhood-search", neighbourhood},
      {"bloom-filter-properties", bloom_properties},
      {"noise-replay-and-determinism", noise_replay},
      {"metric-pins", metric_pins},
      {"split-contract", split_contract},
      {"language-portability-cli", portability},
  };
  int failures = 0;
  for (const auto &[name, fn] : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(ctx, o);
    } catch (const std::exception &e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double ms = ms_since(t0);
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " (" << std::fixed << std::setprecision(1) << ms
              << " ms) " << o.detail.str() << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures ? 1 : 0;
}
