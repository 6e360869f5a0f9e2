#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mlt/analyzer.hpp"
#include "mlt/common.hpp"
#include "mlt/lexicon.hpp"

namespace mlt {

enum class Person { First, Second, Third };

struct Agreement {
  Person person = Person::Third;
  bool plural = false;
};

// English-side tense/aspect/voice plan for one clause's verb group.
struct TavPlan {
  Tense tense = Tense::Nonpast;
  Aspect aspect = Aspect::Simple;
  Voice voice = Voice::Active;
  Polarity polarity = Polarity::Affirmative;
};

// Closed-class pronoun knowledge: case forms and agreement.
struct PronounInfo {
  std::string subject_form;
  std::string object_form;
  Agreement agreement;
};

inline const PronounInfo* pronoun_info(const std::string& lemma) {
  static const std::map<std::string, PronounInfo> table = {
      {"I", {"I", "me", {Person::First, false}}},
      {"we", {"we", "us", {Person::First, true}}},
      {"you", {"you", "you", {Person::Second, false}}},
      {"he", {"he", "him", {Person::Third, false}}},
      {"she", {"she", "her", {Person::Third, false}}},
      {"it", {"it", "it", {Person::Third, false}}},
      {"they", {"they", "them", {Person::Third, true}}},
  };
  auto it = table.find(lemma);
  return it == table.end() ? nullptr : &it->second;
}

inline bool is_demonstrative(const std::string& word) { return word == "this" || word == "that"; }

// Verb past/participle and noun plural overrides.
struct IrregularTables {
  std::map<std::string, std::pair<std::string, std::string>> verbs;  // lemma -> {past, participle}
  std::map<std::string, std::string> plurals;

  static const IrregularTables& defaults() {
    static const IrregularTables t = {
        {
            {"be", {"was", "been"}},
            {"build", {"built", "built"}},
            {"buy", {"bought", "bought"}},
            {"come", {"came", "come"}},
            {"go", {"went", "gone"}},
            {"hang", {"hung", "hung"}},
            {"make", {"made", "made"}},
            {"ride", {"rode", "ridden"}},
            {"run", {"ran", "run"}},
            {"sit", {"sat", "sat"}},
            {"spread", {"spread", "spread"}},
            {"take", {"took", "taken"}},
        },
        {
            {"child", "children"},
            {"fish", "fish"},
            {"foot", "feet"},
            {"man", "men"},
            {"mouse", "mice"},
            {"person", "people"},
            {"sheep", "sheep"},
            {"wolf", "wolves"},
            {"woman", "women"},
        },
    };
    return t;
  }
};

namespace english {

inline bool is_vowel(char c) {
  switch (c) {
    case 'a': case 'e': case 'i': case 'o': case 'u':
    case 'A': case 'E': case 'I': case 'O': case 'U':
      return true;
    default:
      return false;
  }
}

inline bool doubles_final_consonant(std::string_view w) {
  if (w.size() < 3 || w.size() > 4) return false;  // short stressed stems: sit, mop, plan
  char a = w[w.size() - 3], b = w[w.size() - 2], c = w.back();
  return !is_vowel(a) && is_vowel(b) && !is_vowel(c) && c != 'w' && c != 'x' && c != 'y';
}

inline std::string regular_past(const std::string& w) {
  if (w.empty()) return w;
  if (w.back() == 'e') return w + "d";
  if (w.back() == 'y' && w.size() > 1 && !is_vowel(w[w.size() - 2])) {
    return w.substr(0, w.size() - 1) + "ied";
  }
  if (doubles_final_consonant(w)) return w + w.back() + "ed";
  return w + "ed";
}

inline std::string verb_past(const std::string& w, const IrregularTables& irr) {
  auto it = irr.verbs.find(w);
  return it != irr.verbs.end() ? it->second.first : regular_past(w);
}

inline std::string verb_participle(const std::string& w, const IrregularTables& irr) {
  auto it = irr.verbs.find(w);
  return it != irr.verbs.end() ? it->second.second : regular_past(w);
}

inline std::string verb_ing(const std::string& w) {
  if (w.size() >= 2 && w.compare(w.size() - 2, 2, "ie") == 0) {
    return w.substr(0, w.size() - 2) + "ying";  // tie -> tying
  }
  if (w.size() >= 2 && w.back() == 'e' && w[w.size() - 2] != 'e') {
    return w.substr(0, w.size() - 1) + "ing";
  }
  if (doubles_final_consonant(w)) return w + w.back() + "ing";
  return w + "ing";
}

inline bool takes_es(std::string_view w) {
  if (w.empty()) return false;
  char c = w.back();
  if (c == 's' || c == 'x' || c == 'z' || c == 'o') return true;
  if (w.size() >= 2) {
    std::string_view tail = w.substr(w.size() - 2);
    if (tail == "sh" || tail == "ch") return true;
  }
  return false;
}

inline std::string verb_third_sg(const std::string& w) {
  if (w.back() == 'y' && w.size() > 1 && !is_vowel(w[w.size() - 2])) {
    return w.substr(0, w.size() - 1) + "ies";
  }
  if (takes_es(w)) return w + "es";
  return w + "s";
}

inline std::string be_form(Tense tense, const Agreement& agr) {
  if (tense == Tense::Past) {
    return (!agr.plural && agr.person != Person::Second) ? "was" : "were";
  }
  if (agr.plural || agr.person == Person::Second) return "are";
  return agr.person == Person::First ? "am" : "is";
}

inline std::string do_form(Tense tense, const Agreement& agr) {
  if (tense == Tense::Past) return "did";
  return (agr.person == Person::Third && !agr.plural) ? "does" : "do";
}

// Plural of a noun gloss; the last word of a multi-word lemma inflects.
inline std::string pluralize(const EnglishGloss& gloss,
                             const IrregularTables& irr = IrregularTables::defaults()) {
  if (gloss.countability != Countability::Countable) return gloss.lemma;
  if (gloss.irregular_plural) return *gloss.irregular_plural;
  std::string head = gloss.lemma;
  std::string prefix;
  if (std::size_t sp = gloss.lemma.rfind(' '); sp != std::string::npos) {
    prefix = gloss.lemma.substr(0, sp + 1);
    head = gloss.lemma.substr(sp + 1);
  }
  if (auto it = irr.plurals.find(head); it != irr.plurals.end()) return prefix + it->second;
  if (head.back() == 'y' && head.size() > 1 && !is_vowel(head[head.size() - 2])) {
    return prefix + head.substr(0, head.size() - 1) + "ies";
  }
  if (takes_es(head)) return prefix + head + "es";
  return prefix + head + "s";
}

}  // namespace english

// "a"/"an" by the first letter of what follows; nothing for uncountables,
// plurals and policy-none glosses.
inline std::optional<std::string> choose_article(const std::string& following_text,
                                                 ArticlePolicy policy, Countability countability,
                                                 bool plural) {
  if (policy == ArticlePolicy::None) return std::nullopt;
  if (policy == ArticlePolicy::Definite) return "the";
  if (plural || countability != Countability::Countable) return std::nullopt;
  if (!following_text.empty() && english::is_vowel(following_text.front())) return "an";
  return "a";
}

// The verb group for a clause: auxiliaries plus the inflected verb lemma.
inline std::string inflect_verb(const std::string& lemma, const TavPlan& plan, const Agreement& agr,
                                const IrregularTables& irr = IrregularTables::defaults()) {
  using english::be_form;
  bool negative = plan.polarity == Polarity::Negative;
  if (plan.voice == Voice::Passive) {
    std::string group = be_form(plan.tense, agr);
    if (negative) group += " not";
    if (plan.aspect == Aspect::Progressive) group += " being";
    return group + " " + english::verb_participle(lemma, irr);
  }
  if (plan.aspect == Aspect::Progressive) {
    std::string group = be_form(plan.tense, agr);
    if (negative) group += " not";
    return group + " " + english::verb_ing(lemma);
  }
  if (negative) {
    return english::do_form(plan.tense, agr) + " not " + lemma;
  }
  if (plan.tense == Tense::Past) return english::verb_past(lemma, irr);
  if (agr.person == Person::Third && !agr.plural) return english::verb_third_sg(lemma);
  return lemma;
}

// Language-neutral clause plan handed from transfer to generation. All noun
// phrases arrive realized; only the verb group still needs morphology.
struct EnglishClauseSpec {
  struct Subject {
    std::string text;
    Agreement agreement;
  };
  Subject subject;                   // always present (ellipsis-filled when needed)
  std::string verb_lemma;            // always present
  std::vector<std::string> body;     // fixed template words and realized slots, in order
  std::optional<std::string> agent;  // passive "by ..." phrase
  std::vector<std::string> trailing; // adjuncts and unmatched slots, realization order
  TavPlan tav;
  Connective connective_to_next = Connective::None;
};

namespace detail {

inline std::string realize_clause(const EnglishClauseSpec& spec, bool omit_subject,
                                  const IrregularTables& irr) {
  std::vector<std::string> parts;
  if (!omit_subject) parts.push_back(spec.subject.text);
  parts.push_back(inflect_verb(spec.verb_lemma, spec.tav, spec.subject.agreement, irr));
  for (const std::string& chunk : spec.body) {
    if (!chunk.empty()) parts.push_back(chunk);
  }
  if (spec.agent) parts.push_back(*spec.agent);
  for (const std::string& chunk : spec.trailing) {
    if (!chunk.empty()) parts.push_back(chunk);
  }
  return join(parts, " ");
}

}  // namespace detail

// Joins clause specs into one sentence: te-chains become "A, B and C",
// contrastive boundaries become ", but", repeated chain subjects are
// dropped, then capitalization and the final period are applied.
inline std::string realize_sentence(const std::vector<EnglishClauseSpec>& specs,
                                    const IrregularTables& irr = IrregularTables::defaults()) {
  if (specs.empty()) return "";

  // group clauses into sequential chains
  std::vector<std::pair<std::size_t, std::size_t>> chains;  // [first, last]
  std::size_t start = 0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (specs[i].connective_to_next != Connective::Sequential || i + 1 == specs.size()) {
      chains.emplace_back(start, i);
      start = i + 1;
    }
  }

  std::string out;
  for (std::size_t c = 0; c < chains.size(); ++c) {
    auto [first, last] = chains[c];
    std::string chain;
    for (std::size_t i = first; i <= last; ++i) {
      bool omit = i > first && specs[i].subject.text == specs[i - 1].subject.text;
      std::string clause = detail::realize_clause(specs[i], omit, irr);
      if (i == first) {
        chain = clause;
      } else if (i == last) {
        chain += " and " + clause;
      } else {
        chain += ", " + clause;
      }
    }
    if (c == 0) {
      out = chain;
    } else {
      bool contrastive = specs[chains[c - 1].second].connective_to_next == Connective::Contrastive;
      out += (contrastive ? ", but " : ", and ") + chain;
    }
  }

  out = collapse_ws(out);
  out = capitalize_first(std::move(out));
  out += ".";
  return out;
}

}  // namespace mlt
