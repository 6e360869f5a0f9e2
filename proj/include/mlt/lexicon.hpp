#pragma once

#include <array>
#include <deque>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mlt/common.hpp"
#include "mlt/ontology.hpp"

namespace mlt {

enum class Pos { CommonNoun, ProperNoun, Verb, Adjective, Suffix, Prefix, Adverb };

inline const char* to_string(Pos p) {
  switch (p) {
    case Pos::CommonNoun: return "common-noun";
    case Pos::ProperNoun: return "proper-noun";
    case Pos::Verb: return "verb";
    case Pos::Adjective: return "adjective";
    case Pos::Suffix: return "suffix";
    case Pos::Prefix: return "prefix";
    case Pos::Adverb: return "adverb";
  }
  return "?";
}

enum class Countability { Countable, Uncountable, PluralOnly };
enum class ArticlePolicy { Indefinite, Definite, None };

struct EnglishGloss {
  std::string lemma;
  Countability countability = Countability::Countable;
  ArticlePolicy article = ArticlePolicy::None;
  std::optional<std::string> irregular_plural;  // only meaningful when countable
};

struct Sense {
  std::vector<std::string> categories;
  EnglishGloss gloss;
};

struct LexicalEntry {
  std::string surface;
  Pos pos = Pos::CommonNoun;
  std::optional<std::string> conjugation;  // verbs/adjectives only
  std::vector<Sense> senses;

  bool is_noun() const { return pos == Pos::CommonNoun || pos == Pos::ProperNoun; }
};

namespace detail {

inline Pos parse_pos(const std::string& s, const std::string& file, int line) {
  static const std::array<std::pair<const char*, Pos>, 7> table = {{
      {"common-noun", Pos::CommonNoun},
      {"proper-noun", Pos::ProperNoun},
      {"verb", Pos::Verb},
      {"adjective", Pos::Adjective},
      {"suffix", Pos::Suffix},
      {"prefix", Pos::Prefix},
      {"adverb", Pos::Adverb},
  }};
  for (const auto& [name, pos] : table) {
    if (s == name) return pos;
  }
  throw LoadError(file, line, "unknown part of speech '" + s + "'");
}

inline Countability parse_countability(const std::string& s, const std::string& file, int line) {
  if (s == "countable") return Countability::Countable;
  if (s == "uncountable") return Countability::Uncountable;
  if (s == "plural-only") return Countability::PluralOnly;
  throw LoadError(file, line, "unknown countability '" + s + "'");
}

inline ArticlePolicy parse_article(const std::string& s, const std::string& file, int line) {
  if (s == "indefinite") return ArticlePolicy::Indefinite;
  if (s == "definite") return ArticlePolicy::Definite;
  if (s == "none") return ArticlePolicy::None;
  throw LoadError(file, line, "unknown article policy '" + s + "'");
}

}  // namespace detail

// The word dictionary. Entries are immutable after load; pointers into the
// lexicon stay valid for its lifetime.
class Lexicon {
 public:
  static constexpr std::size_t kMaxCommonCategories = 5;
  static constexpr std::size_t kMaxProperCategories = 10;

  // Records: surface, pos, conjugation-class-or-"-", sense-list.
  // A sense is categoryIds|gloss|countability|article[|irregularPlural],
  // senses separated by ';', category ids by ','.
  static Lexicon load(std::istream& in, const CategoryHierarchy& ont,
                      const std::string& file = "lexicon") {
    Lexicon lex;
    for_each_record(in, file, 4, [&](int line_no, const std::vector<std::string>& f) {
      LexicalEntry e;
      e.surface = std::string(trim(f[0]));
      if (e.surface.empty()) throw LoadError(file, line_no, "empty surface form");
      e.pos = detail::parse_pos(std::string(trim(f[1])), file, line_no);
      std::string conj = std::string(trim(f[2]));
      if (conj != "-") {
        if (e.pos != Pos::Verb && e.pos != Pos::Adjective) {
          throw LoadError(file, line_no,
                          "'" + e.surface + "': conjugation class on a " + to_string(e.pos));
        }
        e.conjugation = conj;
      } else if (e.pos == Pos::Verb) {
        throw LoadError(file, line_no, "verb '" + e.surface + "' needs a conjugation class");
      }

      std::set<std::string> common_cats;
      std::set<std::string> proper_cats;
      for (const std::string& sense_text : split(f[3], ';')) {
        if (trim(sense_text).empty()) continue;
        std::vector<std::string> parts = split(sense_text, '|');
        if (parts.size() < 4 || parts.size() > 5) {
          throw LoadError(file, line_no, "'" + e.surface + "': malformed sense '" + sense_text + "'");
        }
        Sense s;
        for (const std::string& cat : split(parts[0], ',')) {
          std::string id = std::string(trim(cat));
          if (id.empty()) continue;
          const SemanticCategory* c = ont.find(id);
          if (!c) {
            throw LoadError(file, line_no, "'" + e.surface + "': unknown category '" + id + "'");
          }
          (c->kind == CategoryKind::Common ? common_cats : proper_cats).insert(id);
          s.categories.push_back(id);
        }
        if (s.categories.empty()) {
          throw LoadError(file, line_no, "'" + e.surface + "': sense with no categories");
        }
        s.gloss.lemma = std::string(trim(parts[1]));
        if (s.gloss.lemma.empty()) {
          throw LoadError(file, line_no, "'" + e.surface + "': sense with no gloss");
        }
        s.gloss.countability = detail::parse_countability(std::string(trim(parts[2])), file, line_no);
        s.gloss.article = detail::parse_article(std::string(trim(parts[3])), file, line_no);
        if (parts.size() == 5 && !trim(parts[4]).empty()) {
          if (s.gloss.countability != Countability::Countable) {
            throw LoadError(file, line_no,
                            "'" + e.surface + "': irregular plural on a non-countable gloss");
          }
          s.gloss.irregular_plural = std::string(trim(parts[4]));
        }
        e.senses.push_back(std::move(s));
      }
      if (e.senses.empty()) throw LoadError(file, line_no, "'" + e.surface + "': no senses");
      if (common_cats.size() > kMaxCommonCategories) {
        throw LoadError(file, line_no,
                        "'" + e.surface + "': " + std::to_string(common_cats.size()) +
                            " common-noun categories exceed the limit of " +
                            std::to_string(kMaxCommonCategories));
      }
      if (proper_cats.size() > kMaxProperCategories) {
        throw LoadError(file, line_no,
                        "'" + e.surface + "': " + std::to_string(proper_cats.size()) +
                            " proper-noun categories exceed the limit of " +
                            std::to_string(kMaxProperCategories));
      }
      for (std::size_t idx : lex.find_indexes(e.surface)) {
        if (lex.entries_[idx].pos == e.pos) {
          throw LoadError(file, line_no,
                          "duplicate entry for '" + e.surface + "' as " + to_string(e.pos));
        }
      }
      lex.index_[e.surface].push_back(lex.entries_.size());
      lex.entries_.push_back(std::move(e));
    });
    return lex;
  }

  // All entries with the given surface, in file order; empty when unknown.
  std::vector<const LexicalEntry*> lookup(const std::string& surface) const {
    std::vector<const LexicalEntry*> out;
    for (std::size_t idx : find_indexes(surface)) out.push_back(&entries_[idx]);
    return out;
  }

  const LexicalEntry* first_of(const std::string& surface, Pos pos) const {
    for (std::size_t idx : find_indexes(surface)) {
      if (entries_[idx].pos == pos) return &entries_[idx];
    }
    return nullptr;
  }

  const std::deque<LexicalEntry>& entries() const { return entries_; }

 private:
  std::vector<std::size_t> find_indexes(const std::string& surface) const {
    auto it = index_.find(surface);
    return it == index_.end() ? std::vector<std::size_t>{} : it->second;
  }

  std::deque<LexicalEntry> entries_;  // deque keeps entry addresses stable
  std::map<std::string, std::vector<std::size_t>> index_;
};

// The closed case-particle set. New particles are a dictionary-format
// extension, not a code change.
inline bool is_particle(std::string_view s) {
  static const std::array<const char*, 10> particles = {"wa", "ga",   "o",  "ni",  "de",
                                                        "e",  "no",   "to", "kara", "made"};
  for (const char* p : particles) {
    if (s == p) return true;
  }
  return false;
}

struct Segmented {
  std::string content;
  std::vector<std::string> particles;  // surface order
};

// Splits a hyphenated token into its content word and trailing particles.
// Hyphen-joined segments that are not particles (bound suffixes like "zoi")
// stay inside the content.
inline Segmented segment(const std::string& token) {
  std::vector<std::string> parts = split(token, '-');
  Segmented out;
  std::size_t end = parts.size();
  while (end > 1 && is_particle(parts[end - 1])) --end;
  out.content = join({parts.begin(), parts.begin() + static_cast<long>(end)}, "-");
  out.particles.assign(parts.begin() + static_cast<long>(end), parts.end());
  return out;
}

struct CompoundAnalysis {
  const LexicalEntry* modifier = nullptr;
  const LexicalEntry* head = nullptr;
  std::string relation;  // "institution-of" | "modifier-head"
  EnglishGloss gloss;
  std::vector<std::string> categories;  // the head sense's categories
};

namespace detail {

inline bool can_modify(const LexicalEntry& e) {
  return e.is_noun() || e.pos == Pos::Adjective || e.pos == Pos::Prefix;
}

inline bool can_head(const LexicalEntry& e) { return e.is_noun() || e.pos == Pos::Suffix; }

inline std::optional<CompoundAnalysis> make_compound(const Lexicon& lex,
                                                     const CategoryHierarchy& ont,
                                                     const std::string& mod_s,
                                                     const std::string& head_s) {
  const LexicalEntry* modifier = nullptr;
  const LexicalEntry* head = nullptr;
  for (const LexicalEntry* e : lex.lookup(mod_s)) {
    if (can_modify(*e)) {
      modifier = e;
      break;
    }
  }
  for (const LexicalEntry* e : lex.lookup(head_s)) {
    if (can_head(*e)) {
      head = e;
      break;
    }
  }
  if (!modifier || !head) return std::nullopt;

  const Sense& head_sense = head->senses.front();
  const Sense& mod_sense = modifier->senses.front();
  CompoundAnalysis ca;
  ca.modifier = modifier;
  ca.head = head;
  ca.categories = head_sense.categories;

  bool institution = false;
  for (const std::string& cat : head_sense.categories) {
    if (ont.contains("organization") && ont.subsumes("organization", cat)) institution = true;
  }
  if (institution) {
    // "the <Head> of <Modifier>", both capitalized as a proper name
    ca.relation = "institution-of";
    ca.gloss.lemma =
        capitalize_first(head_sense.gloss.lemma) + " of " + capitalize_first(mod_sense.gloss.lemma);
    ca.gloss.countability = Countability::Countable;
    ca.gloss.article = ArticlePolicy::Definite;
  } else {
    ca.relation = "modifier-head";
    ca.gloss.lemma = mod_sense.gloss.lemma + " " + head_sense.gloss.lemma;
    ca.gloss.countability = head_sense.gloss.countability;
    ca.gloss.article = head_sense.gloss.article;
    ca.gloss.irregular_plural = head_sense.gloss.irregular_plural;
  }
  return ca;
}

}  // namespace detail

// Binary, right-headed compound analysis for surfaces that fail whole-word
// lookup. Hyphenated surfaces split at a hyphen; otherwise every split point
// is tried longest-suffix-first. Both halves must resolve in the lexicon.
inline std::optional<CompoundAnalysis> analyze_compound(const Lexicon& lex,
                                                        const CategoryHierarchy& ont,
                                                        const std::string& surface) {
  std::size_t hyphen = surface.find('-');
  if (hyphen != std::string::npos) {
    while (hyphen != std::string::npos) {
      auto ca = detail::make_compound(lex, ont, surface.substr(0, hyphen), surface.substr(hyphen + 1));
      if (ca) return ca;
      hyphen = surface.find('-', hyphen + 1);
    }
    return std::nullopt;
  }
  for (std::size_t i = 1; i < surface.size(); ++i) {
    if ((static_cast<unsigned char>(surface[i]) & 0xC0) == 0x80) continue;  // UTF-8 continuation
    auto ca = detail::make_compound(lex, ont, surface.substr(0, i), surface.substr(i));
    if (ca) return ca;
  }
  return std::nullopt;
}

}  // namespace mlt
