#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlt/common.hpp"
#include "mlt/lexicon.hpp"
#include "mlt/ontology.hpp"

namespace mlt {

enum class Tense { Past, Nonpast };
enum class Aspect { Simple, Progressive };
enum class Voice { Active, Passive };
enum class Polarity { Affirmative, Negative };
enum class Connective { None, Contrastive, Sequential };

// The subjective part of a clause: speaker-side features separated from the
// objective content and translated on their own path.
struct SubjectiveFeatures {
  Tense tense = Tense::Nonpast;
  Aspect aspect = Aspect::Simple;
  Voice voice = Voice::Active;
  Polarity polarity = Polarity::Affirmative;
  Connective connective_to_next = Connective::None;

  friend bool operator==(const SubjectiveFeatures&, const SubjectiveFeatures&) = default;
};

class AnalysisError : public std::runtime_error {
 public:
  AnalysisError(const std::string& what, int token_index = -1)
      : std::runtime_error(token_index >= 0 ? what + " (token " + std::to_string(token_index + 1) + ")"
                                            : what),
        token_index_(token_index) {}
  int token_index() const { return token_index_; }

 private:
  int token_index_;
};

// ---------------------------------------------------------------------------
// Japanese verb morphology
// ---------------------------------------------------------------------------

namespace jconj {

struct Stems {
  std::string te;        // -te form
  std::string ta;        // plain past
  std::string neg_stem;  // stem taking -nai / -nakatta
  std::string passive;   // derived passive lemma (conjugates as ichidan)
};

struct IrregularEntry {
  std::string te, ta, neg_stem, passive;
};

inline const std::map<std::string, IrregularEntry>& irregular_table() {
  static const std::map<std::string, IrregularEntry> table = {
      {"iku", {"itte", "itta", "ika", "ikareru"}},
  };
  return table;
}

inline bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Computes the conjugation stems for a lemma, or throws when the class is
// unknown or does not fit the lemma's ending.
inline Stems stems_for(const std::string& lemma, const std::string& cls) {
  auto cut = [&](std::size_t n) { return lemma.substr(0, lemma.size() - n); };
  auto need = [&](std::string_view suffix) {
    if (!ends_with(lemma, suffix)) {
      throw LoadError("verb '" + lemma + "': class '" + cls + "' expects ending '" +
                      std::string(suffix) + "'");
    }
  };
  if (auto it = irregular_table().find(cls); it != irregular_table().end()) {
    if (lemma != cls) throw LoadError("verb '" + lemma + "': irregular table id '" + cls + "' mismatch");
    const IrregularEntry& e = it->second;
    return {e.te, e.ta, e.neg_stem, e.passive};
  }
  if (cls == "ichidan") {
    need("ru");
    std::string stem = cut(2);
    return {stem + "te", stem + "ta", stem, stem + "rareru"};
  }
  if (cls == "godan-k") {
    need("ku");
    std::string stem = cut(2);
    return {stem + "ite", stem + "ita", stem + "ka", stem + "kareru"};
  }
  if (cls == "godan-g") {
    need("gu");
    std::string stem = cut(2);
    return {stem + "ide", stem + "ida", stem + "ga", stem + "gareru"};
  }
  if (cls == "godan-s") {
    need("su");
    std::string stem = cut(2);
    return {stem + "shite", stem + "shita", stem + "sa", stem + "sareru"};
  }
  if (cls == "godan-t") {
    need("tsu");
    std::string stem = cut(3);
    return {stem + "tte", stem + "tta", stem + "ta", stem + "tareru"};
  }
  if (cls == "godan-n") {
    need("nu");
    std::string stem = cut(2);
    return {stem + "nde", stem + "nda", stem + "na", stem + "nareru"};
  }
  if (cls == "godan-b") {
    need("bu");
    std::string stem = cut(2);
    return {stem + "nde", stem + "nda", stem + "ba", stem + "bareru"};
  }
  if (cls == "godan-m") {
    need("mu");
    std::string stem = cut(2);
    return {stem + "nde", stem + "nda", stem + "ma", stem + "mareru"};
  }
  if (cls == "godan-r") {
    need("ru");
    std::string stem = cut(2);
    return {stem + "tte", stem + "tta", stem + "ra", stem + "rareru"};
  }
  if (cls == "godan-u") {
    need("u");
    std::string stem = cut(1);
    return {stem + "tte", stem + "tta", stem + "wa", stem + "wareru"};
  }
  throw LoadError("verb '" + lemma + "': unknown conjugation class '" + cls + "'");
}

}  // namespace jconj

// One analysis of an inflected verb form.
struct VerbAnalysis {
  const LexicalEntry* entry = nullptr;
  SubjectiveFeatures features;  // connective_to_next = Sequential marks a te-form
};

// Recognizes inflected verb forms by generating every form the lexicon's
// conjugation classes license and matching against that table.
class Deinflector {
 public:
  explicit Deinflector(const Lexicon& lex) {
    for (const LexicalEntry& e : lex.entries()) {
      if (e.pos != Pos::Verb || !e.conjugation) continue;
      jconj::Stems stems = jconj::stems_for(e.surface, *e.conjugation);
      add_voice_forms(e, e.surface, stems, Voice::Active);
      std::string pstem = stems.passive.substr(0, stems.passive.size() - 2);
      jconj::Stems pstems{pstem + "te", pstem + "ta", pstem, ""};
      add_voice_forms(e, stems.passive, pstems, Voice::Passive);
    }
  }

  // All analyses of a surface form, in lexicon file order; empty if unknown.
  std::vector<VerbAnalysis> deinflect(const std::string& form) const {
    auto it = table_.find(form);
    return it == table_.end() ? std::vector<VerbAnalysis>{} : it->second;
  }

  // The generated form for (entry, features), when the table covers it.
  std::optional<std::string> inflect(const LexicalEntry* entry,
                                     const SubjectiveFeatures& f) const {
    for (const auto& [form, analyses] : table_) {
      for (const VerbAnalysis& a : analyses) {
        if (a.entry == entry && a.features == f) return form;
      }
    }
    return std::nullopt;
  }

  const std::map<std::string, std::vector<VerbAnalysis>>& all_forms() const { return table_; }

 private:
  void add_voice_forms(const LexicalEntry& e, const std::string& lemma, const jconj::Stems& stems,
                       Voice voice) {
    auto add = [&](const std::string& form, Tense t, Aspect a, Polarity p, Connective c) {
      SubjectiveFeatures f;
      f.tense = t;
      f.aspect = a;
      f.voice = voice;
      f.polarity = p;
      f.connective_to_next = c;
      table_[form].push_back(VerbAnalysis{&e, f});
    };
    using enum Tense;
    using enum Aspect;
    using enum Polarity;
    add(lemma, Nonpast, Simple, Affirmative, Connective::None);
    add(stems.ta, Past, Simple, Affirmative, Connective::None);
    add(stems.te, Nonpast, Simple, Affirmative, Connective::Sequential);
    add(stems.te + "iru", Nonpast, Progressive, Affirmative, Connective::None);
    add(stems.te + "ita", Past, Progressive, Affirmative, Connective::None);
    add(stems.neg_stem + "nai", Nonpast, Simple, Negative, Connective::None);
    add(stems.neg_stem + "nakatta", Past, Simple, Negative, Connective::None);
  }

  std::map<std::string, std::vector<VerbAnalysis>> table_;
};

inline std::vector<VerbAnalysis> deinflect(const Deinflector& d, const std::string& form) {
  return d.deinflect(form);
}

// ---------------------------------------------------------------------------
// Predicate-argument structure
// ---------------------------------------------------------------------------

// A sense as resolved for one noun phrase; compounds synthesize one.
struct ResolvedSense {
  std::vector<std::string> categories;
  EnglishGloss gloss;
};

struct NounPhrase {
  std::string surface;
  const LexicalEntry* head = nullptr;
  std::optional<CompoundAnalysis> compound;
  std::vector<const LexicalEntry*> adjectives;  // prenominal modifiers, surface order
  std::vector<NounPhrase> genitives;            // no-marked modifier chain
  std::vector<ResolvedSense> senses;
};

struct Argument {
  std::string particle;                     // case particle; "adv" for adverbs; "" when bare
  std::vector<std::string> particle_chain;  // full trailing chain, surface order
  NounPhrase phrase;
  bool synthesized = false;  // produced by a rewrite rule
  std::string jp_form;       // synthesized adjunct: rewritten Japanese surface
  std::string en_hint;       // synthesized adjunct: fixed English realization
};

// One clause's objective content plus its separated subjective features.
struct PAS {
  std::string predicate;  // bare lemma; all inflection lives in `subjective`
  const LexicalEntry* predicate_entry = nullptr;
  std::vector<Argument> args;  // surface order
  std::optional<Argument> topic;
  SubjectiveFeatures subjective;
};

namespace detail {

inline std::vector<ResolvedSense> resolve_senses(const NounPhrase& np) {
  std::vector<ResolvedSense> out;
  if (np.compound) {
    out.push_back(ResolvedSense{np.compound->categories, np.compound->gloss});
    return out;
  }
  if (np.head) {
    for (const Sense& s : np.head->senses) out.push_back(ResolvedSense{s.categories, s.gloss});
  }
  return out;
}

inline bool has_frequency_sense(const NounPhrase& np, const CategoryHierarchy& ont) {
  if (!ont.contains("frequency")) return false;
  for (const ResolvedSense& s : np.senses) {
    for (const std::string& cat : s.categories) {
      if (ont.subsumes("frequency", cat)) return true;
    }
  }
  return false;
}

}  // namespace detail

// Turns one hyphen-romanized sentence (ending in ".") into clauses of
// predicate-argument structure. Clause boundaries fall at te-form verbs and
// at the contrastive particle "ga" after a finite verb.
inline std::vector<PAS> parse_sentence(const Lexicon& lex, const CategoryHierarchy& ont,
                                       const Deinflector& deinf, const std::string& sentence) {
  std::string text = std::string(trim(sentence));
  if (text.empty() || text.back() != '.') {
    throw AnalysisError("sentence must end with '.'");
  }
  text.pop_back();

  std::vector<std::string> tokens = split_ws(text);
  std::vector<PAS> clauses;

  std::optional<Argument> topic;
  std::vector<Argument> args;
  std::vector<const LexicalEntry*> pending_adjectives;
  std::vector<NounPhrase> pending_genitives;
  bool last_was_finite_clause = false;

  auto close_clause = [&](const LexicalEntry* verb, const SubjectiveFeatures& f, int token_index) {
    if (!pending_adjectives.empty() || !pending_genitives.empty()) {
      throw AnalysisError("dangling modifier before predicate '" + verb->surface + "'", token_index);
    }
    PAS clause;
    clause.predicate = verb->surface;
    clause.predicate_entry = verb;
    clause.args = std::move(args);
    clause.topic = std::move(topic);
    clause.subjective = f;
    clauses.push_back(std::move(clause));
    args.clear();
    topic.reset();
  };

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string raw = tokens[i];
    while (!raw.empty() && (raw.back() == ',' || raw.back() == '.')) raw.pop_back();
    if (raw.empty()) continue;

    if (raw == "ga") {
      // standalone contrastive particle after a finite clause
      if (!last_was_finite_clause || clauses.empty()) {
        throw AnalysisError("unexpected standalone 'ga'", static_cast<int>(i));
      }
      clauses.back().subjective.connective_to_next = Connective::Contrastive;
      continue;
    }
    last_was_finite_clause = false;

    Segmented seg = segment(raw);

    if (seg.particles.empty()) {
      std::vector<VerbAnalysis> analyses = deinf.deinflect(seg.content);
      if (!analyses.empty()) {
        const VerbAnalysis& a = analyses.front();
        close_clause(a.entry, a.features, static_cast<int>(i));
        last_was_finite_clause = a.features.connective_to_next != Connective::Sequential;
        continue;
      }
      if (const LexicalEntry* adv = lex.first_of(seg.content, Pos::Adverb)) {
        Argument arg;
        arg.particle = "adv";
        arg.phrase.surface = seg.content;
        arg.phrase.head = adv;
        arg.phrase.senses = detail::resolve_senses(arg.phrase);
        args.push_back(std::move(arg));
        continue;
      }
      if (const LexicalEntry* adj = lex.first_of(seg.content, Pos::Adjective)) {
        pending_adjectives.push_back(adj);
        continue;
      }
      // fall through: a bare noun becomes an unparticled argument
    }

    NounPhrase np;
    np.surface = seg.content;
    for (const LexicalEntry* e : lex.lookup(seg.content)) {
      if (e->is_noun()) {
        np.head = e;
        break;
      }
    }
    if (!np.head) {
      np.compound = analyze_compound(lex, ont, seg.content);
      if (!np.compound) {
        throw AnalysisError("cannot resolve content word '" + seg.content + "'",
                            static_cast<int>(i));
      }
    }
    np.adjectives = std::move(pending_adjectives);
    pending_adjectives.clear();
    np.genitives = std::move(pending_genitives);
    pending_genitives.clear();
    np.senses = detail::resolve_senses(np);

    std::string case_particle = seg.particles.empty() ? "" : seg.particles.back();
    if (case_particle == "no") {
      pending_genitives.push_back(std::move(np));
      continue;
    }
    Argument arg;
    arg.particle = case_particle;
    arg.particle_chain = seg.particles;
    arg.phrase = std::move(np);
    if (case_particle == "wa") {
      if (topic) throw AnalysisError("second topic in one clause", static_cast<int>(i));
      topic = std::move(arg);
    } else {
      args.push_back(std::move(arg));
    }
  }

  if (!args.empty() || topic || !pending_genitives.empty() || !pending_adjectives.empty()) {
    throw AnalysisError("no predicate found for trailing words");
  }
  if (clauses.empty()) {
    throw AnalysisError("no predicate found");
  }

  // Te-form clauses carry no tense of their own; they share the tense of the
  // chain's finite clause.
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    if (clauses[i].subjective.connective_to_next != Connective::Sequential) continue;
    for (std::size_t j = i + 1; j < clauses.size(); ++j) {
      if (clauses[j].subjective.connective_to_next != Connective::Sequential) {
        clauses[i].subjective.tense = clauses[j].subjective.tense;
        break;
      }
    }
  }

  // A frequency adverb gives -teiru a habitual reading: simple tense.
  for (PAS& clause : clauses) {
    if (clause.subjective.aspect != Aspect::Progressive) continue;
    for (const Argument& arg : clause.args) {
      if (arg.particle == "adv" && detail::has_frequency_sense(arg.phrase, ont)) {
        clause.subjective.aspect = Aspect::Simple;
        break;
      }
    }
  }

  return clauses;
}

}  // namespace mlt
