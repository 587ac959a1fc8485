// SPDX-License-Identifier: Apache-2.0
// gec: command-line front end for the correction toolkit.

#include "gec/gec.hpp"
#include "gec/server.hpp"
#include "gec/service.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_findings = 1;
constexpr int exit_error = 2;

std::string read_file(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in)
    throw gec::Error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> read_lines(std::istream &in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<std::string> read_lines(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in)
    throw gec::Error("cannot open " + p.string());
  return read_lines(in);
}

void write_file(const fs::path &p, std::string_view data) {
  if (p.has_parent_path())
    fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out)
    throw gec::Error("cannot write " + p.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out)
    throw gec::Error("write failed: " + p.string());
}

gec::Lexicon load_lexicon(const fs::path &p) { return gec::deserialize_lexicon(read_file(p)); }

gec::RulePack load_rules(const std::optional<fs::path> &p) {
  if (!p)
    return {};
  std::ifstream in(*p, std::ios::binary);
  if (!in)
    throw gec::Error("cannot open " + p->string());
  return gec::RulePack::parse(in);
}

/// Fills unset artifact paths from $GEC_ARTIFACT_DIR (lexicon.bin, rules.txt).
void default_artifacts(std::string &lexicon, std::string &rules) {
  const char *dir = std::getenv("GEC_ARTIFACT_DIR");
  if (!dir || !*dir)
    return;
  if (lexicon.empty())
    lexicon = (fs::path(dir) / "lexicon.bin").string();
  if (rules.empty() && fs::exists(fs::path(dir) / "rules.txt"))
    rules = (fs::path(dir) / "rules.txt").string();
}

std::optional<fs::path> opt_path(const std::string &s) {
  if (s.empty())
    return std::nullopt;
  return fs::path(s);
}

// ---------------------------------------------------------------------------

struct BuildLexiconArgs {
  std::string wordlist, corpus, output, language = "und";
  std::uint64_t bits = 0;
  unsigned bits_per_entry = 10, hashes = 7;
  std::uint64_t seed = gec::BloomParams{}.seed;
};

int run_build_lexicon(const BuildLexiconArgs &a) {
  std::vector<gec::WordEntry> entries;
  if (!a.wordlist.empty()) {
    std::ifstream in(a.wordlist, std::ios::binary);
    if (!in)
      throw gec::Error("cannot open " + a.wordlist);
    entries = gec::read_wordlist(in);
  }
  if (!a.corpus.empty()) {
    auto more = gec::count_corpus_words(read_lines(fs::path(a.corpus)));
    entries.insert(entries.end(), more.begin(), more.end());
  }
  gec::LexiconParams params;
  params.bits = a.bits;
  params.bits_per_entry = a.bits_per_entry;
  params.hashes = a.hashes;
  params.hash_seed = a.seed;
  const auto lex = gec::Lexicon::build(std::move(entries), params, a.language);
  write_file(a.output, gec::serialize_lexicon(lex));
  const auto &bp = lex.bloom().params();
  std::cout << "entries=" << lex.size() << " bloom_m=" << bp.bits << " bloom_k=" << bp.hashes
            << " bloom_seed=" << bp.seed << " expected_fp=" << lex.bloom().expected_false_positive_rate()
            << " language=" << lex.language_tag() << '\n';
  return exit_ok;
}

// ---------------------------------------------------------------------------

struct CheckArgs {
  std::string lexicon, rules, input, text, format = "text";
  std::size_t d_max = 2, top_n = 5;
  bool no_rules = false, case_fallback = false, damerau = false;
};

int run_check(CheckArgs a) {
  default_artifacts(a.lexicon, a.rules);
  if (a.lexicon.empty())
    throw gec::ParameterError("no lexicon given (use --lexicon or set GEC_ARTIFACT_DIR)");
  const auto lex = load_lexicon(a.lexicon);
  const auto rules = load_rules(opt_path(a.rules));
  gec::CheckOptions opts;
  opts.limits.max_distance = a.d_max;
  opts.limits.top_n = a.top_n;
  opts.limits.metric = a.damerau ? gec::EditMetric::OptimalStringAlignment : gec::EditMetric::Levenshtein;
  opts.rules_enabled = !a.no_rules;
  opts.case_fallback = a.case_fallback;
  if (a.format != "text" && a.format != "jsonl")
    throw gec::ParameterError("unknown format '" + a.format + "' (expected text or jsonl)");

  std::vector<std::string> lines;
  std::string name = "<stdin>";
  if (!a.text.empty()) {
    std::istringstream in(a.text);
    lines = read_lines(in);
    name = "<text>";
  } else if (!a.input.empty() && a.input != "-") {
    lines = read_lines(fs::path(a.input));
    name = a.input;
  } else {
    lines = read_lines(std::cin);
  }

  std::size_t findings = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (const auto &d : gec::check_text(lex, rules, lines[i], opts)) {
      ++findings;
      if (a.format == "jsonl") {
        auto j = gec::service::to_json(d);
        j["line"] = i + 1;
        std::cout << j.dump() << '\n';
        continue;
      }
      const auto col = gec::utf8::scalar_count(std::string_view(lines[i]).substr(0, d.span.start)) + 1;
      std::cout << name << ':' << i + 1 << ':' << col << ": " << gec::to_string(d.kind);
      if (d.rule_id)
        std::cout << '[' << *d.rule_id << ']';
      std::cout << ": \"" << d.observed << "\"";
      if (!d.suggestions.empty()) {
        std::cout << " ->";
        for (std::size_t k = 0; k < d.suggestions.size(); ++k)
          std::cout << (k ? ", " : " ") << d.suggestions[k].replacement;
      }
      if (!d.message.empty())
        std::cout << " (" << d.message << ')';
      std::cout << '\n';
    }
  }
  return findings ? exit_findings : exit_ok;
}

// ---------------------------------------------------------------------------

struct CorruptArgs {
  std::string input, lexicon, noise_config, output, format = "jsonl", language = "Zarma", charset;
  std::optional<std::size_t> ops, variants, max_retries;
  std::optional<std::uint64_t> seed;
  std::optional<double> swap_probability;
  bool nonword_only = false;
  unsigned threads = 1;
};

gec::NoiseConfig noise_config_from(const CorruptArgs &a) {
  gec::NoiseConfig cfg;
  if (!a.noise_config.empty()) {
    std::ifstream in(a.noise_config, std::ios::binary);
    if (!in)
      throw gec::Error("cannot open " + a.noise_config);
    cfg = gec::parse_noise_config(in, cfg);
  }
  if (a.ops) cfg.ops_per_sentence = *a.ops;
  if (a.variants) cfg.variants_per_sentence = *a.variants;
  if (a.max_retries) cfg.max_retries = *a.max_retries;
  if (a.seed) cfg.seed = *a.seed;
  if (a.swap_probability) cfg.word_swap_probability = *a.swap_probability;
  if (!a.charset.empty()) cfg.charset = gec::utf8::to_scalars(a.charset);
  if (a.nonword_only) cfg.nonword_only = true;
  cfg.validate();
  return cfg;
}

int run_corrupt(const CorruptArgs &a) {
  const auto format = gec::parse_parallel_format(a.format);
  const auto cfg = noise_config_from(a);
  std::optional<gec::Lexicon> lex;
  if (!a.lexicon.empty())
    lex = load_lexicon(a.lexicon);
  if (cfg.nonword_only && !lex)
    throw gec::ParameterError("--nonword-only needs --lexicon");
  const auto lines = read_lines(fs::path(a.input));
  const auto res = gec::corrupt_corpus(lines, cfg, lex ? &*lex : nullptr, a.threads);
  const auto written = gec::emit_parallel(res.records, format, a.output, a.language);
  std::cout << "sentences=" << res.sentences << " records=" << res.records.size() << " skipped=" << res.skipped
            << " excluded=" << res.excluded << " files=";
  for (std::size_t i = 0; i < written.size(); ++i)
    std::cout << (i ? "," : "") << written[i].string();
  std::cout << '\n';
  return exit_ok;
}

// ---------------------------------------------------------------------------

struct SplitArgs {
  std::vector<std::string> synthetic;
  std::string gold, output_dir, unit = "group";
  std::vector<double> fractions{0.8, 0.1, 0.1};
  std::uint64_t seed = 0;
};

int run_split(const SplitArgs &a) {
  if (a.synthetic.empty() && a.gold.empty())
    throw gec::ParameterError("nothing to split: give --synthetic and/or --gold");
  if (a.fractions.size() != 3)
    throw gec::ParameterError("--fractions expects three values");
  std::vector<gec::ParallelExample> synthetic, gold;
  for (const auto &path : a.synthetic) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
      throw gec::Error("cannot open " + path);
    for (const auto &r : gec::read_records(in))
      synthetic.push_back(gec::to_example(r));
  }
  if (!a.gold.empty()) {
    std::ifstream in(a.gold, std::ios::binary);
    if (!in)
      throw gec::Error("cannot open " + a.gold);
    gold = gec::ingest_gold(in);
  }
  gec::MergeReport merge;
  const auto all = gec::merge_datasets(synthetic, gold, &merge);
  gec::SplitSpec spec;
  spec.fractions = {a.fractions[0], a.fractions[1], a.fractions[2]};
  spec.seed = a.seed;
  if (a.unit == "sentence")
    spec.unit = gec::SplitUnit::Sentence;
  else if (a.unit == "group")
    spec.unit = gec::SplitUnit::OriginalSentenceGroup;
  else
    throw gec::ParameterError("unknown unit '" + a.unit + "' (expected group or sentence)");
  const auto parts = gec::split(all, spec);
  const fs::path dir(a.output_dir);
  fs::create_directories(dir);
  auto dump = [&](const char *name, const std::vector<gec::ParallelExample> &xs) {
    std::string body;
    for (const auto &x : xs)
      body += gec::to_json(x).dump() + '\n';
    write_file(dir / name, body);
  };
  dump("train.jsonl", parts.train);
  dump("validation.jsonl", parts.validation);
  dump("test.jsonl", parts.test);
  write_file(dir / "manifest.json", gec::split_manifest(parts, spec, merge).dump(2) + '\n');
  std::cout << "train=" << parts.train.size() << " validation=" << parts.validation.size()
            << " test=" << parts.test.size() << " duplicates=" << merge.duplicates << '\n';
  return exit_ok;
}

// ---------------------------------------------------------------------------

struct EvalArgs {
  std::string records, zero_shot, lexicon, rules, m2, hyp, src, output, format = "structured",
      method = "Rule-based";
  std::vector<std::string> refs;
  std::size_t d_max = 2, top_n = 5;
  std::uint64_t seed = 0;
};

int run_eval(EvalArgs a) {
  const bool spell = !a.records.empty() || !a.zero_shot.empty();
  const bool m2 = !a.m2.empty();
  const bool gleu = !a.refs.empty();
  if (!spell && !m2 && !gleu)
    throw CLI::ValidationError("eval", "nothing to evaluate: give --records, --zero-shot, --m2 or --refs");
  if (a.format != "structured" && a.format != "table")
    throw gec::ParameterError("unknown format '" + a.format + "' (expected structured or table)");

  gec::ScoreReport report;
  report.method = a.method;
  if (spell) {
    default_artifacts(a.lexicon, a.rules);
    if (a.lexicon.empty())
      throw gec::ParameterError("spelling evaluation needs --lexicon");
    const auto lex = load_lexicon(a.lexicon);
    const auto rules = load_rules(opt_path(a.rules));
    std::vector<gec::CorruptionRecord> records;
    if (!a.records.empty()) {
      std::ifstream in(a.records, std::ios::binary);
      if (!in)
        throw gec::Error("cannot open " + a.records);
      records = gec::read_records(in);
      report.extra["records_file"] = a.records;
    }
    if (!a.zero_shot.empty()) {
      // Unseen text: corrupt it here with non-word errors against the lexicon.
      gec::NoiseConfig cfg;
      cfg.nonword_only = true;
      cfg.seed = a.seed;
      const auto res = gec::corrupt_corpus(read_lines(fs::path(a.zero_shot)), cfg, &lex);
      records.insert(records.end(), res.records.begin(), res.records.end());
      report.extra["zero_shot_corpus"] = a.zero_shot;
      report.extra["zero_shot_excluded"] = res.excluded;
    }
    gec::CheckOptions opts;
    opts.limits.max_distance = a.d_max;
    opts.limits.top_n = a.top_n;
    report.spell = gec::spell_eval(records, [&](std::string_view text) {
      return gec::check_text(lex, rules, text, opts);
    });
  }
  std::vector<std::string> hyps;
  if (m2 || gleu) {
    if (a.hyp.empty())
      throw gec::ParameterError("--m2/--refs need --hyp");
    hyps = read_lines(fs::path(a.hyp));
  }
  if (m2) {
    std::ifstream in(a.m2, std::ios::binary);
    if (!in)
      throw gec::Error("cannot open " + a.m2);
    report.m2 = gec::m2_score(hyps, gec::parse_m2(in));
  }
  if (gleu) {
    if (a.src.empty())
      throw gec::ParameterError("--refs needs --src");
    const auto srcs = read_lines(fs::path(a.src));
    std::vector<std::vector<std::string>> refs(hyps.size());
    for (const auto &path : a.refs) {
      const auto lines = read_lines(fs::path(path));
      if (lines.size() != hyps.size())
        throw gec::ParameterError("reference file " + path + " has " + std::to_string(lines.size()) +
                                  " lines, expected " + std::to_string(hyps.size()));
      for (std::size_t i = 0; i < lines.size(); ++i)
        refs[i].push_back(lines[i]);
    }
    report.gleu = gec::corpus_gleu(hyps, srcs, refs);
  }

  const auto format = a.format == "table" ? gec::ReportFormat::Table : gec::ReportFormat::Structured;
  if (a.output.empty()) {
    gec::emit_report(report, format, std::cout);
  } else {
    std::ostringstream ss;
    gec::emit_report(report, format, ss);
    write_file(a.output, ss.str());
  }
  return exit_ok;
}

// ---------------------------------------------------------------------------

struct ServeArgs {
  std::string lexicon, rules, host = "127.0.0.1";
  int port = 8080;
  std::size_t max_text_bytes = 64 * 1024;
};

int run_serve(ServeArgs a) {
  default_artifacts(a.lexicon, a.rules);
  if (a.lexicon.empty())
    throw gec::ParameterError("no lexicon given (use --lexicon or set GEC_ARTIFACT_DIR)");
  const gec::service::Engine engine{load_lexicon(a.lexicon), load_rules(opt_path(a.rules)), a.max_text_bytes};
  httplib::Server server;
  gec::service::mount(server, engine);
  int port = a.port;
  if (port == 0) {
    port = server.bind_to_any_port(a.host);
  } else if (!server.bind_to_port(a.host, port)) {
    port = -1;
  }
  if (port < 0)
    throw gec::Error("cannot bind " + a.host + ":" + std::to_string(a.port));
  std::cout << "listening on http://" << a.host << ':' << port << std::endl;
  return server.listen_after_bind() ? exit_ok : exit_error;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Grammatical error correction toolkit"};
  app.set_version_flag("--version", std::string(gec::version_string));
  app.require_subcommand(1);

  BuildLexiconArgs bl;
  auto *c_bl = app.add_subcommand("build-lexicon", "Build a binary lexicon from a wordlist or corpus");
  c_bl->add_option("--wordlist,-w", bl.wordlist, "Wordlist: 'word' or 'word<TAB>count' per line")->check(CLI::ExistingFile);
  c_bl->add_option("--from-corpus", bl.corpus, "Count words of a one-sentence-per-line corpus")->check(CLI::ExistingFile);
  c_bl->add_option("--output,-o", bl.output, "Output lexicon file")->required();
  c_bl->add_option("--language", bl.language, "Language tag stored in the lexicon");
  c_bl->add_option("--bloom-bits,-m", bl.bits, "Bloom filter size in bits (default: bits-per-entry * n)");
  c_bl->add_option("--bits-per-entry", bl.bits_per_entry, "Bloom bits per entry when -m is not given");
  c_bl->add_option("--hashes,-k", bl.hashes, "Bloom hash count");
  c_bl->add_option("--hash-seed", bl.seed, "Bloom hash seed");

  CheckArgs ck;
  auto *c_ck = app.add_subcommand("check", "Check text; exit 0 clean, 1 findings, 2 error");
  c_ck->add_option("input", ck.input, "Input file ('-' or omitted: stdin)");
  c_ck->add_option("--text,-t", ck.text, "Check this text instead of a file");
  c_ck->add_option("--lexicon,-l", ck.lexicon, "Binary lexicon (default: $GEC_ARTIFACT_DIR/lexicon.bin)");
  c_ck->add_option("--rules,-r", ck.rules, "Rule pack (default: $GEC_ARTIFACT_DIR/rules.txt if present)");
  c_ck->add_option("--format,-f", ck.format, "text or jsonl");
  c_ck->add_option("--d-max", ck.d_max, "Maximum suggestion distance");
  c_ck->add_option("--top-n", ck.top_n, "Suggestions per finding");
  c_ck->add_flag("--no-rules", ck.no_rules, "Skip grammar rules");
  c_ck->add_flag("--case-fallback", ck.case_fallback, "Accept words whose case-folded form is known");
  c_ck->add_flag("--damerau", ck.damerau, "Count adjacent transpositions as one edit");

  CorruptArgs cr;
  auto *c_cr = app.add_subcommand("corrupt", "Generate synthetic errors from a corpus");
  c_cr->add_option("--input,-i", cr.input, "One sentence per line")->required()->check(CLI::ExistingFile);
  c_cr->add_option("--output,-o", cr.output, "Output prefix")->required();
  c_cr->add_option("--format,-f", cr.format, "two-file, jsonl or prompt");
  c_cr->add_option("--lexicon,-l", cr.lexicon, "Lexicon (required with --nonword-only)");
  c_cr->add_option("--noise-config", cr.noise_config, "key = value config file; flags override it");
  c_cr->add_option("--ops", cr.ops, "Noise operations per variant");
  c_cr->add_option("--variants", cr.variants, "Variants per sentence");
  c_cr->add_option("--seed", cr.seed, "Global seed");
  c_cr->add_option("--max-retries", cr.max_retries, "Attempts per variant under --nonword-only");
  c_cr->add_option("--word-swap-probability", cr.swap_probability, "Chance of a word swap per op");
  c_cr->add_option("--charset", cr.charset, "Insertion/substitution letters (default: corpus letters)");
  c_cr->add_option("--language", cr.language, "Language name used by the prompt format");
  c_cr->add_option("--threads", cr.threads, "Worker threads (output does not depend on it)");
  c_cr->add_flag("--nonword-only", cr.nonword_only, "Every modified word must be absent from the lexicon");

  SplitArgs sp;
  auto *c_sp = app.add_subcommand("split", "Merge synthetic and gold data and split it");
  c_sp->add_option("--synthetic,-s", sp.synthetic, "Structured corruption records (.jsonl)")->check(CLI::ExistingFile);
  c_sp->add_option("--gold,-g", sp.gold, "Gold TSV file")->check(CLI::ExistingFile);
  c_sp->add_option("--output-dir,-o", sp.output_dir, "Directory for train/validation/test")->required();
  c_sp->add_option("--fractions", sp.fractions, "train validation test")->delimiter(',')->expected(3);
  c_sp->add_option("--seed", sp.seed, "Shuffle seed");
  c_sp->add_option("--unit", sp.unit, "group or sentence");

  EvalArgs ev;
  auto *c_ev = app.add_subcommand("eval", "Score a checker or system output");
  c_ev->add_option("--records", ev.records, "Corruption records for detection/suggestion metrics");
  c_ev->add_option("--zero-shot", ev.zero_shot, "Unseen corpus, corrupted on the fly with non-word errors");
  c_ev->add_option("--lexicon,-l", ev.lexicon, "Lexicon for the rule-based checker");
  c_ev->add_option("--rules,-r", ev.rules, "Rule pack for the rule-based checker");
  c_ev->add_option("--m2", ev.m2, "Gold M2 annotations");
  c_ev->add_option("--hyp", ev.hyp, "System output, one sentence per line");
  c_ev->add_option("--src", ev.src, "Source sentences (for GLEU)");
  c_ev->add_option("--refs", ev.refs, "Reference files (for GLEU)");
  c_ev->add_option("--format,-f", ev.format, "structured or table");
  c_ev->add_option("--output,-o", ev.output, "Report file (default stdout)");
  c_ev->add_option("--method", ev.method, "Method name in the report");
  c_ev->add_option("--d-max", ev.d_max, "Maximum suggestion distance");
  c_ev->add_option("--top-n", ev.top_n, "Suggestions per finding");
  c_ev->add_option("--seed", ev.seed, "Seed for --zero-shot corruption");

  ServeArgs sv;
  auto *c_sv = app.add_subcommand("serve", "Run the HTTP service");
  c_sv->add_option("--port,-p", sv.port, "Port (0 picks a free one)");
  c_sv->add_option("--host", sv.host, "Bind address");
  c_sv->add_option("--lexicon,-l", sv.lexicon, "Binary lexicon (default: $GEC_ARTIFACT_DIR/lexicon.bin)");
  c_sv->add_option("--rules,-r", sv.rules, "Rule pack");
  c_sv->add_option("--max-text-bytes", sv.max_text_bytes, "Largest accepted text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_error;
  }

  try {
    if (*c_bl) return run_build_lexicon(bl);
    if (*c_ck) return run_check(ck);
    if (*c_cr) return run_corrupt(cr);
    if (*c_sp) return run_split(sp);
    if (*c_ev) return run_eval(ev);
    if (*c_sv) return run_serve(sv);
  } catch (const CLI::Error &e) {
    std::cerr << "gec: " << e.what() << '\n';
    return exit_error;
  } catch (const std::exception &e) {
    std::cerr << "gec: " << e.what() << '\n';
    return exit_error;
  }
  return exit_error;
}
