#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlt/analyzer.hpp"
#include "mlt/common.hpp"
#include "mlt/generator.hpp"
#include "mlt/lexicon.hpp"
#include "mlt/ontology.hpp"
#include "mlt/patterns.hpp"

namespace mlt {

class TransferError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One prior clause of discourse state, used to supplement elided subjects.
struct DiscourseContext {
  std::optional<Argument> last_subject;
};

enum class FillKind { None, Context, Default };

struct NpSelection {
  std::string np_surface;
  std::string pattern_id;
  Level level = Level::General;
};

// Per-clause transfer decisions, recorded for the trace facility.
struct ClauseTraceInfo {
  std::string pattern_id;
  Level level = Level::General;
  FillKind fill = FillKind::None;
  std::string fill_text;
  std::vector<NpSelection> np_selections;
};

// Subjective features map onto an English verb-group plan one dimension at
// a time; the connective is handled at sentence assembly instead.
inline TavPlan map_subjective(const SubjectiveFeatures& f) {
  TavPlan plan;
  plan.tense = f.tense;
  plan.aspect = f.aspect;
  plan.voice = f.voice;
  plan.polarity = f.polarity;
  return plan;
}

// Default prepositions for optional slots no pattern claimed.
inline std::optional<std::string> general_slot_preposition(const std::string& particle) {
  if (particle == "ni") return "to";
  if (particle == "de") return "at";
  if (particle == "e") return "to";
  if (particle == "kara") return "from";
  if (particle == "made") return "until";
  if (particle == "to") return "with";
  return std::nullopt;
}

enum class NpRole { Subject, Object, PluralNoArticle, BareLemma };

struct RealizedNp {
  std::string text;
  Agreement agreement;
};

namespace detail {

inline const ResolvedSense& sense_of(const NounPhrase& np, int sense_index) {
  std::size_t i = sense_index >= 0 ? static_cast<std::size_t>(sense_index) : 0;
  return np.senses.at(i);
}

inline RealizedNp realize_np(const NounPhrase& np, NpRole role, int sense_index,
                             const PatternDictionary& pd, const CategoryHierarchy& ont,
                             const Lexicon& lex, std::vector<NpSelection>* np_trace);

// Noun-headed pattern realization ("X-no mure" collectives): the same
// matcher runs over a pseudo-clause whose arguments are the genitives.
inline std::optional<RealizedNp> realize_np_via_patterns(const NounPhrase& np, NpRole role,
                                                         const PatternDictionary& pd,
                                                         const CategoryHierarchy& ont,
                                                         const Lexicon& lex,
                                                         std::vector<NpSelection>* np_trace) {
  if (!np.head || np.genitives.empty()) return std::nullopt;
  if (pd.patterns_for(np.head->surface).empty()) return std::nullopt;

  PAS pseudo;
  pseudo.predicate = np.head->surface;
  pseudo.predicate_entry = np.head;
  for (const NounPhrase& g : np.genitives) {
    Argument arg;
    arg.particle = "no";
    arg.phrase = g;
    pseudo.args.push_back(std::move(arg));
  }
  std::vector<PatternMatch> matches = match_patterns(pd, pseudo, ont, lex);
  matches.erase(std::remove_if(matches.begin(), matches.end(),
                               [](const PatternMatch& m) { return !m.pattern->noun_headed; }),
                matches.end());
  if (matches.empty()) return std::nullopt;
  const PatternMatch& winner = select_pattern(matches);
  if (np_trace) {
    np_trace->push_back(NpSelection{np.surface, winner.pattern->id, winner.pattern->level});
  }

  std::vector<std::string> words;
  for (const TemplateItem& item : winner.pattern->english.items) {
    if (item.kind == TemplateItem::Kind::Word) {
      words.push_back(item.word);
      continue;
    }
    const SlotBinding* binding = nullptr;
    for (const SlotBinding& b : winner.bindings) {
      if (b.slot->particle == item.particle) {
        binding = &b;
        break;
      }
    }
    if (!binding) continue;
    NpRole inner = item.mode == TemplateItem::SlotMode::Plural ? NpRole::PluralNoArticle
                   : item.mode == TemplateItem::SlotMode::Bare ? NpRole::BareLemma
                                                               : NpRole::Object;
    // The slot's argument lives in `pseudo`, a copy of np.genitives.
    words.push_back(realize_np(binding->arg->phrase, inner, binding->sense_index, pd, ont, lex,
                               np_trace)
                        .text);
  }
  (void)role;
  return RealizedNp{join(words, " "), Agreement{Person::Third, false}};
}

inline RealizedNp realize_np(const NounPhrase& np, NpRole role, int sense_index,
                             const PatternDictionary& pd, const CategoryHierarchy& ont,
                             const Lexicon& lex, std::vector<NpSelection>* np_trace) {
  if (auto via = realize_np_via_patterns(np, role, pd, ont, lex, np_trace)) return *via;

  const ResolvedSense& sense = sense_of(np, sense_index);
  const EnglishGloss& gloss = sense.gloss;

  if (const PronounInfo* pron = pronoun_info(gloss.lemma)) {
    std::string text = role == NpRole::Subject ? pron->subject_form : pron->object_form;
    return RealizedNp{text, pron->agreement};
  }

  bool plural = role == NpRole::PluralNoArticle || gloss.countability == Countability::PluralOnly;
  std::string noun = role == NpRole::PluralNoArticle ? english::pluralize(gloss) : gloss.lemma;

  std::vector<std::string> words;
  std::optional<std::string> determiner;
  for (const LexicalEntry* adj : np.adjectives) {
    const std::string& mod = adj->senses.front().gloss.lemma;
    if (is_demonstrative(mod)) {
      determiner = mod;
    } else {
      words.push_back(mod);
    }
  }
  words.push_back(noun);

  if (determiner) {
    words.insert(words.begin(), *determiner);
  } else if (role == NpRole::Subject || role == NpRole::Object) {
    auto article = choose_article(words.front(), gloss.article, gloss.countability, plural);
    if (article) words.insert(words.begin(), *article);
  }

  // genitives no noun pattern claimed realize as an of-phrase
  for (const NounPhrase& g : np.genitives) {
    words.push_back("of");
    words.push_back(realize_np(g, NpRole::Object, -1, pd, ont, lex, np_trace).text);
  }

  return RealizedNp{join(words, " "), Agreement{Person::Third, plural}};
}

// The constraint on the winning pattern's subject slot, when it has one.
inline const SlotConstraint* subject_constraint(const TransferPattern& p) {
  for (const CaseSlotPattern& s : p.slots) {
    if (s.realization.kind == SlotRealization::Kind::Subject) return &s.constraint;
  }
  return nullptr;
}

inline Argument default_subject_argument() {
  Argument arg;
  arg.particle = "ga";
  arg.synthesized = true;
  arg.phrase.surface = "(filled)";
  arg.phrase.senses.push_back(
      ResolvedSense{{}, EnglishGloss{"it", Countability::Countable, ArticlePolicy::None, {}}});
  return arg;
}

struct EllipsisFill {
  Argument subject;
  FillKind kind = FillKind::Default;
};

inline EllipsisFill make_subject_fill(const SlotConstraint* constraint, const DiscourseContext& ctx,
                                      const CategoryHierarchy& ont) {
  if (ctx.last_subject) {
    bool compatible = true;
    if (constraint && !check_constraint(*constraint, *ctx.last_subject, ont)) compatible = false;
    if (compatible) {
      Argument arg = *ctx.last_subject;
      arg.particle = "ga";
      return EllipsisFill{std::move(arg), FillKind::Context};
    }
  }
  return EllipsisFill{default_subject_argument(), FillKind::Default};
}

}  // namespace detail

// Binds an elided subject from the discourse context when its senses satisfy
// the winning pattern's subject constraint, else the default pronoun. A
// clause that already has subject material is returned unchanged.
inline PAS fill_ellipsis(PAS pas, const PatternMatch& winner, const DiscourseContext& ctx,
                         const CategoryHierarchy& ont, FillKind* kind_out = nullptr) {
  bool has_subject = pas.topic.has_value();
  for (const Argument& a : pas.args) {
    if (a.particle == "ga") has_subject = true;
  }
  if (has_subject) {
    if (kind_out) *kind_out = FillKind::None;
    return pas;
  }
  detail::EllipsisFill fill =
      detail::make_subject_fill(detail::subject_constraint(*winner.pattern), ctx, ont);
  if (kind_out) *kind_out = fill.kind;
  pas.args.push_back(std::move(fill.subject));
  return pas;
}

// One clause through the three-level transfer: pattern selection drives the
// English clause plan, noun phrases transfer recursively, unmatched optional
// slots fall back to the general particle table, and subjective features map
// across unchanged in value.
inline EnglishClauseSpec transfer_clause(const PAS& pas, const PatternDictionary& pd,
                                         const CategoryHierarchy& ont, const Lexicon& lex,
                                         DiscourseContext& ctx, ClauseTraceInfo* info = nullptr) {
  std::vector<PatternMatch> matches = match_patterns(pd, pas, ont, lex);
  if (matches.empty()) {
    throw TransferError("no pattern matched predicate '" + pas.predicate + "'");
  }
  const PatternMatch& winner = select_pattern(matches);
  if (info) {
    info->pattern_id = winner.pattern->id;
    info->level = winner.pattern->level;
  }

  EnglishClauseSpec spec;
  spec.verb_lemma = winner.pattern->english.verb_lemma;
  spec.tav = map_subjective(pas.subjective);
  spec.connective_to_next = pas.subjective.connective_to_next;

  // --- subject selection ---------------------------------------------------
  const Argument* subject_arg = nullptr;
  int subject_sense = -1;
  for (const SlotBinding& b : winner.bindings) {
    if (b.slot->realization.kind == SlotRealization::Kind::Subject) {
      subject_arg = b.arg;
      subject_sense = b.sense_index;
    }
  }
  if (!subject_arg) {
    for (const Argument& a : pas.args) {
      if (a.particle == "ga") {
        subject_arg = &a;
        break;
      }
    }
  }
  if (!subject_arg && pas.topic) subject_arg = &*pas.topic;

  std::optional<Argument> filled;
  if (!subject_arg) {
    detail::EllipsisFill fill =
        detail::make_subject_fill(detail::subject_constraint(*winner.pattern), ctx, ont);
    filled = std::move(fill.subject);
    subject_arg = &*filled;
    if (info) info->fill = fill.kind;
  }

  RealizedNp subject = detail::realize_np(subject_arg->phrase, NpRole::Subject, subject_sense, pd,
                                          ont, lex, info ? &info->np_selections : nullptr);
  spec.subject.text = subject.text;
  spec.subject.agreement = subject.agreement;
  if (info && filled) info->fill_text = subject.text;

  // --- consumed arguments ----------------------------------------------------
  std::vector<const Argument*> consumed;
  consumed.push_back(subject_arg);
  for (const SlotBinding& b : winner.bindings) consumed.push_back(b.arg);
  auto is_consumed = [&](const Argument* a) {
    for (const Argument* c : consumed) {
      if (c == a) return true;
    }
    return false;
  };

  // --- passive agent ---------------------------------------------------------
  if (pas.subjective.voice == Voice::Passive) {
    for (const Argument& a : pas.args) {
      if (a.particle == "ni" && !is_consumed(&a)) {
        spec.agent = "by " + detail::realize_np(a.phrase, NpRole::Object, -1, pd, ont, lex,
                                                info ? &info->np_selections : nullptr)
                                .text;
        consumed.push_back(&a);
        break;
      }
    }
  }

  // --- template body ----------------------------------------------------------
  std::vector<const SlotBinding*> placed;
  for (const TemplateItem& item : winner.pattern->english.items) {
    if (item.kind == TemplateItem::Kind::Word) {
      spec.body.push_back(item.word);
      continue;
    }
    const SlotBinding* binding = nullptr;
    for (const SlotBinding& b : winner.bindings) {
      if (b.slot->particle == item.particle) {
        binding = &b;
        break;
      }
    }
    if (!binding) continue;  // optional slot without material
    placed.push_back(binding);
    NpRole role = item.mode == TemplateItem::SlotMode::Plural ? NpRole::PluralNoArticle
                  : item.mode == TemplateItem::SlotMode::Bare ? NpRole::BareLemma
                                                              : NpRole::Object;
    std::string text = detail::realize_np(binding->arg->phrase, role, binding->sense_index, pd, ont,
                                          lex, info ? &info->np_selections : nullptr)
                           .text;
    if (binding->slot->realization.kind == SlotRealization::Kind::Prep &&
        !binding->slot->realization.prep_word.empty()) {
      text = binding->slot->realization.prep_word + " " + text;
    }
    spec.body.push_back(std::move(text));
  }

  // bound slots the template never placed still realize, after the body
  for (const SlotBinding& b : winner.bindings) {
    if (std::find(placed.begin(), placed.end(), &b) != placed.end()) continue;
    if (b.slot->realization.kind == SlotRealization::Kind::Absorbed ||
        b.slot->realization.kind == SlotRealization::Kind::Subject) {
      continue;
    }
    std::string text = detail::realize_np(b.arg->phrase, NpRole::Object, b.sense_index, pd, ont,
                                          lex, info ? &info->np_selections : nullptr)
                           .text;
    if (b.slot->realization.kind == SlotRealization::Kind::Prep &&
        !b.slot->realization.prep_word.empty()) {
      text = b.slot->realization.prep_word + " " + text;
    }
    spec.trailing.push_back(std::move(text));
  }

  // --- unmatched arguments: mirror order, general slot table ------------------
  std::vector<const Argument*> leftovers;
  for (const Argument& a : pas.args) {
    if (!is_consumed(&a)) leftovers.push_back(&a);
  }
  for (auto it = leftovers.rbegin(); it != leftovers.rend(); ++it) {
    const Argument& a = **it;
    if (a.synthesized) {
      spec.trailing.push_back(a.en_hint);
      continue;
    }
    if (a.particle == "adv") {
      spec.trailing.push_back(a.phrase.senses.front().gloss.lemma);
      continue;
    }
    std::string np = detail::realize_np(a.phrase, NpRole::Object, -1, pd, ont, lex,
                                        info ? &info->np_selections : nullptr)
                         .text;
    if (auto prep = general_slot_preposition(a.particle)) {
      spec.trailing.push_back(*prep + " " + np);
    } else {
      spec.trailing.push_back(np);
    }
  }

  // --- discourse update --------------------------------------------------------
  Argument remembered = *subject_arg;
  ctx.last_subject = std::move(remembered);

  return spec;
}

}  // namespace mlt
