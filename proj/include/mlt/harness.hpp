#pragma once

#include <array>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mlt/analyzer.hpp"
#include "mlt/common.hpp"
#include "mlt/generator.hpp"
#include "mlt/lexicon.hpp"
#include "mlt/ontology.hpp"
#include "mlt/patterns.hpp"
#include "mlt/rewriter.hpp"
#include "mlt/transfer.hpp"

namespace mlt {

// ---------------------------------------------------------------------------
// Dictionary set
// ---------------------------------------------------------------------------

struct Dictionaries {
  CategoryHierarchy ontology;
  Lexicon lexicon;
  PatternDictionary patterns;
  RewriteRules rewrites;
  std::optional<Deinflector> deinflector;

  const Deinflector& deinf() const { return *deinflector; }
};

inline Dictionaries load_dictionaries(const std::filesystem::path& dir) {
  auto open = [&](const char* name) {
    std::ifstream in(dir / name);
    if (!in) throw LoadError((dir / name).string() + ": cannot open");
    return in;
  };
  Dictionaries d;
  {
    std::ifstream in = open("categories.tsv");
    d.ontology = CategoryHierarchy::load(in, (dir / "categories.tsv").string());
  }
  {
    std::ifstream in = open("lexicon.tsv");
    d.lexicon = Lexicon::load(in, d.ontology, (dir / "lexicon.tsv").string());
  }
  {
    std::ifstream in = open("patterns.tsv");
    d.patterns = PatternDictionary::load(in, d.lexicon, d.ontology, (dir / "patterns.tsv").string());
  }
  {
    std::ifstream in = open("rewrites.tsv");
    d.rewrites = RewriteRules::load(in, d.lexicon, d.ontology, (dir / "rewrites.tsv").string());
  }
  d.deinflector.emplace(d.lexicon);
  return d;
}

// Cross-checks beyond per-file validation. Every verb needs a general
// pattern so the transfer can never fail closed.
inline std::vector<std::string> validate_dictionaries(const Dictionaries& d) {
  std::vector<std::string> issues;
  for (const LexicalEntry& e : d.lexicon.entries()) {
    if (e.pos != Pos::Verb) continue;
    if (!d.patterns.has_general_for(e.surface)) {
      issues.push_back("verb '" + e.surface + "' has no general pattern");
    }
  }
  return issues;
}

// ---------------------------------------------------------------------------
// Trace
// ---------------------------------------------------------------------------

inline std::string summarize_clause(const PAS& clause) {
  std::string out = "predicate=" + clause.predicate;
  out += clause.subjective.tense == Tense::Past ? " past" : " nonpast";
  if (clause.subjective.aspect == Aspect::Progressive) out += " progressive";
  if (clause.subjective.voice == Voice::Passive) out += " passive";
  if (clause.subjective.polarity == Polarity::Negative) out += " negative";
  if (clause.subjective.connective_to_next == Connective::Sequential) out += " te-form";
  if (clause.subjective.connective_to_next == Connective::Contrastive) out += " contrastive";
  if (clause.topic) out += " topic=" + clause.topic->phrase.surface;
  out += " args=[";
  for (std::size_t i = 0; i < clause.args.size(); ++i) {
    if (i) out += " ";
    const Argument& a = clause.args[i];
    if (a.synthesized) {
      out += a.jp_form + "*";
    } else {
      out += a.particle.empty() ? a.phrase.surface : a.particle + ":" + a.phrase.surface;
    }
  }
  out += "]";
  return out;
}

struct SentenceTrace {
  std::string source;
  std::vector<std::string> tokens;
  std::vector<std::string> clauses_in;
  std::vector<RewriteFiring> rewrites;
  std::vector<std::string> clauses_out;
  std::vector<ClauseTraceInfo> transfers;
  std::string english;
  std::optional<std::string> error;
};

struct DocumentTrace {
  std::vector<SentenceTrace> sentences;

  std::array<int, 3> level_counts() const {
    std::array<int, 3> counts = {0, 0, 0};
    for (const SentenceTrace& s : sentences) {
      for (const ClauseTraceInfo& t : s.transfers) {
        counts[static_cast<std::size_t>(t.level)] += 1;
      }
    }
    return counts;
  }

  void render(std::ostream& os) const {
    for (const SentenceTrace& s : sentences) {
      os << "sentence: " << s.source << "\n";
      os << "  tokens:";
      for (const std::string& t : s.tokens) os << " " << t;
      os << "\n";
      for (const std::string& c : s.clauses_in) os << "  clause-in: " << c << "\n";
      for (const RewriteFiring& f : s.rewrites) {
        os << "  rewrite: rule=" << f.rule_id << " deleted=" << f.consumed_predicate
           << " adjunct=" << f.adjunct_jp << "\n";
      }
      for (const std::string& c : s.clauses_out) os << "  clause: " << c << "\n";
      for (const ClauseTraceInfo& t : s.transfers) {
        os << "  transfer: pattern=" << t.pattern_id << " level=" << to_string(t.level);
        if (t.fill == FillKind::Context) os << " subject-filled=context(" << t.fill_text << ")";
        if (t.fill == FillKind::Default) os << " subject-filled=default(" << t.fill_text << ")";
        os << "\n";
        for (const NpSelection& np : t.np_selections) {
          os << "    np: " << np.np_surface << " pattern=" << np.pattern_id
             << " level=" << to_string(np.level) << "\n";
        }
      }
      if (s.error) {
        os << "  error: " << *s.error << "\n";
      } else {
        os << "  english: " << s.english << "\n";
      }
    }
  }
};

// ---------------------------------------------------------------------------
// Document translation
// ---------------------------------------------------------------------------

struct TranslationResult {
  std::string english;
  DocumentTrace trace;
  std::vector<std::string> errors;

  bool ok() const { return errors.empty(); }
};

inline std::vector<std::string> split_sentences(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == '\n' || c == '\r' || c == '\t') c = ' ';
    current += c;
    if (c == '.') {
      std::string s = std::string(trim(current));
      if (!s.empty()) out.push_back(std::move(s));
      current.clear();
    }
  }
  std::string rest = std::string(trim(current));
  if (!rest.empty()) out.push_back(std::move(rest));  // missing "." surfaces as a parse error
  return out;
}

// The whole pipeline, sentence by sentence: analysis, rewriting, transfer
// with discourse context, generation. A failed sentence is reported and the
// rest still translate.
inline TranslationResult translate_document(const Dictionaries& d, const std::string& text,
                                            DiscourseContext* shared_ctx = nullptr) {
  TranslationResult result;
  DiscourseContext local_ctx;
  DiscourseContext& ctx = shared_ctx ? *shared_ctx : local_ctx;

  std::vector<std::string> english_sentences;
  for (const std::string& sentence : split_sentences(text)) {
    SentenceTrace st;
    st.source = sentence;
    try {
      std::string body = sentence;
      if (!body.empty() && body.back() == '.') body.pop_back();
      st.tokens = split_ws(body);

      std::vector<PAS> clauses = parse_sentence(d.lexicon, d.ontology, d.deinf(), sentence);
      for (const PAS& c : clauses) st.clauses_in.push_back(summarize_clause(c));

      auto [rewritten, rtrace] = apply_rewrites(d.rewrites, std::move(clauses), d.ontology);
      st.rewrites = rtrace.firings;
      for (const PAS& c : rewritten) st.clauses_out.push_back(summarize_clause(c));

      std::vector<EnglishClauseSpec> specs;
      for (const PAS& clause : rewritten) {
        ClauseTraceInfo info;
        specs.push_back(transfer_clause(clause, d.patterns, d.ontology, d.lexicon, ctx, &info));
        st.transfers.push_back(std::move(info));
      }
      st.english = realize_sentence(specs);
      english_sentences.push_back(st.english);
    } catch (const std::exception& e) {
      st.error = e.what();
      result.errors.push_back(sentence + ": " + e.what());
    }
    result.trace.sentences.push_back(std::move(st));
  }
  result.english = join(english_sentences, " ");
  return result;
}

// ---------------------------------------------------------------------------
// Corpus evaluation
// ---------------------------------------------------------------------------

struct CorpusCase {
  std::string id;
  std::string source;
  std::string expected;
  int document = 0;  // cases in one document share discourse context
};

struct Corpus {
  std::vector<CorpusCase> cases;
};

// Records: id, source, expected. Blank lines separate documents; '#' lines
// are comments.
inline Corpus load_corpus(std::istream& in, const std::string& file = "corpus") {
  Corpus corpus;
  std::string line;
  int line_no = 0;
  int document = 0;
  bool in_document = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view stripped = trim(line);
    if (stripped.empty()) {
      if (in_document) ++document;
      in_document = false;
      continue;
    }
    if (stripped.front() == '#') continue;
    std::vector<std::string> fields = split(line, '\t');
    if (fields.size() != 3) {
      throw LoadError(file, line_no, "expected id<TAB>source<TAB>expected");
    }
    CorpusCase c;
    c.id = std::string(trim(fields[0]));
    c.source = std::string(trim(fields[1]));
    c.expected = std::string(trim(fields[2]));
    if (c.id.empty() || c.source.empty() || c.expected.empty()) {
      throw LoadError(file, line_no, "empty id, source or expected field");
    }
    for (const CorpusCase& seen : corpus.cases) {
      if (seen.id == c.id) throw LoadError(file, line_no, "duplicate case id '" + c.id + "'");
    }
    c.document = document;
    in_document = true;
    corpus.cases.push_back(std::move(c));
  }
  return corpus;
}

inline Corpus load_corpus_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError(path.string() + ": cannot open");
  return load_corpus(in, path.string());
}

struct EvalReport {
  struct CaseResult {
    std::string id;
    bool pass = false;
    std::string got;
    std::string expected;
    std::vector<std::string> errors;
  };
  std::string mode = "blind";
  std::vector<CaseResult> cases;
  std::array<int, 3> level_counts = {0, 0, 0};  // idiomatic, valency, general
  int passes = 0;

  int total() const { return static_cast<int>(cases.size()); }
  double pass_rate() const { return cases.empty() ? 0.0 : static_cast<double>(passes) / total(); }

  std::string render() const {
    std::ostringstream os;
    os << "mode: " << mode << "\n";
    for (const CaseResult& c : cases) {
      os << (c.pass ? "PASS " : "FAIL ") << c.id << "\n";
      if (!c.pass) {
        os << "  expected: " << c.expected << "\n";
        os << "       got: " << (c.got.empty() ? "(no output)" : c.got) << "\n";
        for (const std::string& e : c.errors) os << "     error: " << e << "\n";
      }
    }
    os << "passed " << passes << "/" << total() << " (" << std::fixed << std::setprecision(3)
       << pass_rate() << ")\n";
    os << "levels: idiomatic=" << level_counts[0] << " valency=" << level_counts[1]
       << " general=" << level_counts[2] << "\n";
    return os.str();
  }
};

// A case passes iff the normalized output equals the normalized expected
// string. Cases within one document share discourse context, in order.
inline EvalReport run_corpus(const Dictionaries& d, const Corpus& corpus,
                             const std::string& mode = "blind") {
  if (corpus.cases.empty()) throw LoadError("corpus is empty");
  EvalReport report;
  report.mode = mode;

  std::map<int, DiscourseContext> contexts;
  for (const CorpusCase& c : corpus.cases) {
    DiscourseContext& ctx = contexts[c.document];
    TranslationResult tr = translate_document(d, c.source, &ctx);
    EvalReport::CaseResult res;
    res.id = c.id;
    res.got = tr.english;
    res.expected = c.expected;
    res.errors = tr.errors;
    res.pass = tr.ok() && collapse_ws(tr.english) == collapse_ws(c.expected);
    std::array<int, 3> counts = tr.trace.level_counts();
    for (std::size_t i = 0; i < counts.size(); ++i) report.level_counts[i] += counts[i];
    if (res.pass) ++report.passes;
    report.cases.push_back(std::move(res));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Grading (human 10-point records; the tool only scores them)
// ---------------------------------------------------------------------------

struct GradeRecord {
  std::string sentence_id;
  std::string grader_id;
  int grade = 0;  // 0..10
};

inline std::vector<GradeRecord> load_grades(std::istream& in, const std::string& file = "grades") {
  std::vector<GradeRecord> records;
  for_each_record(in, file, 3, [&](int line_no, const std::vector<std::string>& f) {
    GradeRecord r;
    r.sentence_id = std::string(trim(f[0]));
    r.grader_id = std::string(trim(f[1]));
    std::string grade = std::string(trim(f[2]));
    try {
      std::size_t used = 0;
      r.grade = std::stoi(grade, &used);
      if (used != grade.size()) throw std::invalid_argument(grade);
    } catch (const std::exception&) {
      throw LoadError(file, line_no, "grade '" + grade + "' is not an integer");
    }
    if (r.grade < 0 || r.grade > 10) {
      throw LoadError(file, line_no,
                      "grade " + std::to_string(r.grade) + " for '" + r.sentence_id +
                          "' outside 0..10");
    }
    records.push_back(std::move(r));
  });
  return records;
}

struct GradeReport {
  struct SentenceGrade {
    std::string id;
    double mean = 0.0;
    bool pass = false;
  };
  std::vector<SentenceGrade> sentences;
  int passes = 0;

  int total() const { return static_cast<int>(sentences.size()); }
  double pass_rate() const {
    return sentences.empty() ? 0.0 : static_cast<double>(passes) / total();
  }

  std::string render() const {
    std::ostringstream os;
    for (const SentenceGrade& s : sentences) {
      os << s.id << " mean=" << std::fixed << std::setprecision(2) << s.mean << " "
         << (s.pass ? "pass" : "fail") << "\n";
    }
    os << "passed " << passes << "/" << total() << " (" << std::fixed << std::setprecision(3)
       << pass_rate() << ")\n";
    return os.str();
  }
};

// Mean across graders, pass at mean >= 6.0. The comparison is exact
// (sum >= 6*count), so a mean of exactly 6.0 passes.
inline GradeReport score_grades(const std::vector<GradeRecord>& records,
                                const std::vector<std::string>* known_ids = nullptr) {
  if (records.empty()) throw LoadError("no grade records");
  if (known_ids) {
    for (const GradeRecord& r : records) {
      bool found = false;
      for (const std::string& id : *known_ids) {
        if (id == r.sentence_id) found = true;
      }
      if (!found) throw LoadError("unknown sentence id '" + r.sentence_id + "'");
    }
  }
  std::map<std::string, std::pair<int, int>> sums;  // id -> {sum, count}
  for (const GradeRecord& r : records) {
    auto& [sum, count] = sums[r.sentence_id];
    sum += r.grade;
    count += 1;
  }
  if (known_ids) {
    for (const std::string& id : *known_ids) {
      if (!sums.count(id)) throw LoadError("sentence '" + id + "' has no grade records");
    }
  }
  GradeReport report;
  for (const auto& [id, sc] : sums) {
    GradeReport::SentenceGrade g;
    g.id = id;
    g.mean = static_cast<double>(sc.first) / sc.second;
    g.pass = sc.first >= 6 * sc.second;
    if (g.pass) ++report.passes;
    report.sentences.push_back(std::move(g));
  }
  return report;
}

}  // namespace mlt
