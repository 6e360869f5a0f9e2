#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlt/analyzer.hpp"
#include "mlt/common.hpp"
#include "mlt/lexicon.hpp"
#include "mlt/ontology.hpp"

namespace mlt {

enum class Level { Idiomatic, Valency, General };

inline const char* to_string(Level l) {
  switch (l) {
    case Level::Idiomatic: return "idiomatic";
    case Level::Valency: return "valency";
    case Level::General: return "general";
  }
  return "?";
}

struct SlotConstraint {
  enum class Kind { WordLocked, Categorial, Unconstrained };
  Kind kind = Kind::Unconstrained;
  std::string lemma;              // WordLocked
  CategoryConstraint categories;  // Categorial
};

struct SlotRealization {
  enum class Kind { Subject, Object, Prep, Absorbed };
  Kind kind = Kind::Object;
  std::string prep_word;  // Prep; empty renders a bare noun phrase
};

struct CaseSlotPattern {
  std::string particle;
  SlotConstraint constraint;
  bool required = true;
  SlotRealization realization;
};

struct TemplateItem {
  enum class Kind { Word, Slot };
  enum class SlotMode { Np, Plural, Bare };
  Kind kind = Kind::Word;
  std::string word;      // Kind::Word
  std::string particle;  // Kind::Slot
  SlotMode mode = SlotMode::Np;
};

// The English side of a pattern: a verb lemma (empty for noun-headed
// patterns) followed by fixed words and slot placeholders in surface order.
struct EnglishTemplate {
  std::string verb_lemma;
  std::vector<TemplateItem> items;
  std::string source;
};

struct TransferPattern {
  std::string id;
  Level level = Level::General;
  std::string predicate;  // verb/adjective lemma, or the head noun lemma
  bool noun_headed = false;
  std::vector<CaseSlotPattern> slots;
  EnglishTemplate english;
  int file_order = 0;
};

namespace detail {

inline SlotConstraint parse_constraint(const std::string& text, const CategoryHierarchy& ont,
                                       const Lexicon& lex, const std::string& file, int line) {
  SlotConstraint c;
  if (text == "*") {
    c.kind = SlotConstraint::Kind::Unconstrained;
    return c;
  }
  if (!text.empty() && text.front() == '=') {
    c.kind = SlotConstraint::Kind::WordLocked;
    c.lemma = text.substr(1);
    if (lex.lookup(c.lemma).empty()) {
      throw LoadError(file, line, "word-locked constraint names unknown lemma '" + c.lemma + "'");
    }
    return c;
  }
  if (!text.empty() && text.front() == '@') {
    c.kind = SlotConstraint::Kind::Categorial;
    for (const std::string& id : split(text.substr(1), ',')) {
      std::string cat = std::string(trim(id));
      if (cat.empty()) continue;
      if (!ont.contains(cat)) {
        throw LoadError(file, line, "constraint names unknown category '" + cat + "'");
      }
      c.categories.members.push_back(cat);
    }
    if (c.categories.empty()) throw LoadError(file, line, "empty categorial constraint");
    return c;
  }
  throw LoadError(file, line, "malformed constraint '" + text + "'");
}

inline CaseSlotPattern parse_slot(const std::string& text, const CategoryHierarchy& ont,
                                  const Lexicon& lex, const std::string& file, int line) {
  std::vector<std::string> parts = split(text, ':');
  if (parts.size() != 4) {
    throw LoadError(file, line, "malformed slot '" + text + "' (want particle:constraint:req:role)");
  }
  CaseSlotPattern slot;
  slot.particle = parts[0];
  slot.constraint = parse_constraint(parts[1], ont, lex, file, line);
  if (parts[2] == "req") {
    slot.required = true;
  } else if (parts[2] == "opt") {
    slot.required = false;
  } else {
    throw LoadError(file, line, "slot '" + text + "': expected req or opt");
  }
  const std::string& role = parts[3];
  if (role == "subj") {
    slot.realization.kind = SlotRealization::Kind::Subject;
  } else if (role == "obj") {
    slot.realization.kind = SlotRealization::Kind::Object;
  } else if (role == "absorbed") {
    slot.realization.kind = SlotRealization::Kind::Absorbed;
  } else if (role == "bare") {
    slot.realization.kind = SlotRealization::Kind::Prep;
  } else if (role.rfind("prep=", 0) == 0) {
    slot.realization.kind = SlotRealization::Kind::Prep;
    slot.realization.prep_word = role.substr(5);
  } else {
    throw LoadError(file, line, "slot '" + text + "': unknown realization '" + role + "'");
  }
  return slot;
}

inline EnglishTemplate parse_template(const std::string& text, bool noun_headed,
                                      const std::string& file, int line) {
  EnglishTemplate t;
  t.source = text;
  std::vector<std::string> tokens = split_ws(text);
  if (tokens.empty()) throw LoadError(file, line, "empty english template");
  std::size_t start = 0;
  if (!noun_headed) {
    if (tokens[0].front() == '{') {
      throw LoadError(file, line, "verb template must start with the verb lemma");
    }
    t.verb_lemma = tokens[0];
    start = 1;
  }
  for (std::size_t i = start; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    TemplateItem item;
    if (tok.front() == '{' && tok.back() == '}') {
      std::vector<std::string> parts = split(tok.substr(1, tok.size() - 2), ':');
      if (parts.size() != 2) throw LoadError(file, line, "malformed placeholder '" + tok + "'");
      item.kind = TemplateItem::Kind::Slot;
      item.particle = parts[1];
      if (parts[0] == "slot") {
        item.mode = TemplateItem::SlotMode::Np;
      } else if (parts[0] == "plural") {
        item.mode = TemplateItem::SlotMode::Plural;
      } else if (parts[0] == "bare") {
        item.mode = TemplateItem::SlotMode::Bare;
      } else {
        throw LoadError(file, line, "malformed placeholder '" + tok + "'");
      }
    } else {
      item.kind = TemplateItem::Kind::Word;
      item.word = tok;
    }
    t.items.push_back(std::move(item));
  }
  return t;
}

}  // namespace detail

// The semantic structure dictionary: case-frame patterns indexed by
// predicate lemma, each with an English realization template.
class PatternDictionary {
 public:
  // Records: id, level, predicate, slot-list, english-template.
  // Slots are space-separated particle:constraint:req|opt:role items with
  // constraint =lemma, @cat[,cat...] or *; "-" means no slots.
  static PatternDictionary load(std::istream& in, const Lexicon& lex, const CategoryHierarchy& ont,
                                const std::string& file = "patterns") {
    PatternDictionary pd;
    for_each_record(in, file, 5, [&](int line_no, const std::vector<std::string>& f) {
      TransferPattern p;
      p.id = std::string(trim(f[0]));
      if (p.id.empty()) throw LoadError(file, line_no, "empty pattern id");
      if (pd.by_id_.count(p.id)) throw LoadError(file, line_no, "duplicate pattern id '" + p.id + "'");
      std::string level = std::string(trim(f[1]));
      if (level == "idiomatic") {
        p.level = Level::Idiomatic;
      } else if (level == "valency") {
        p.level = Level::Valency;
      } else if (level == "general") {
        p.level = Level::General;
      } else {
        throw LoadError(file, line_no, "pattern '" + p.id + "': unknown level '" + level + "'");
      }
      p.predicate = std::string(trim(f[2]));
      std::vector<const LexicalEntry*> pred_entries = lex.lookup(p.predicate);
      if (pred_entries.empty()) {
        throw LoadError(file, line_no, "pattern '" + p.id + "': unknown predicate '" + p.predicate + "'");
      }
      p.noun_headed = pred_entries.front()->is_noun();

      std::string slot_list = std::string(trim(f[3]));
      if (slot_list != "-") {
        for (const std::string& s : split_ws(slot_list)) {
          p.slots.push_back(detail::parse_slot(s, ont, lex, file, line_no));
        }
      }
      int locked = 0;
      int categorial = 0;
      for (const CaseSlotPattern& s : p.slots) {
        if (s.constraint.kind == SlotConstraint::Kind::WordLocked) ++locked;
        if (s.constraint.kind == SlotConstraint::Kind::Categorial) ++categorial;
      }
      if (p.level == Level::Idiomatic && locked == 0) {
        throw LoadError(file, line_no, "idiomatic pattern '" + p.id + "' has no word-locked slot");
      }
      if (p.level == Level::General && (locked > 0 || categorial > 0)) {
        throw LoadError(file, line_no,
                        "general pattern '" + p.id + "' must not carry word or category constraints");
      }

      p.english = detail::parse_template(std::string(trim(f[4])), p.noun_headed, file, line_no);
      for (const TemplateItem& item : p.english.items) {
        if (item.kind != TemplateItem::Kind::Slot) continue;
        bool declared = std::any_of(p.slots.begin(), p.slots.end(), [&](const CaseSlotPattern& s) {
          return s.particle == item.particle;
        });
        if (!declared) {
          throw LoadError(file, line_no,
                          "pattern '" + p.id + "': template references undeclared slot '" +
                              item.particle + "'");
        }
      }

      p.file_order = static_cast<int>(pd.patterns_.size());
      pd.by_id_[p.id] = pd.patterns_.size();
      pd.index_[p.predicate].push_back(pd.patterns_.size());
      pd.patterns_.push_back(std::move(p));
    });
    return pd;
  }

  // Patterns for a predicate lemma, in file order.
  std::vector<const TransferPattern*> patterns_for(const std::string& lemma) const {
    std::vector<const TransferPattern*> out;
    auto it = index_.find(lemma);
    if (it == index_.end()) return out;
    for (std::size_t idx : it->second) out.push_back(&patterns_[idx]);
    return out;
  }

  bool has_general_for(const std::string& lemma) const {
    for (const TransferPattern* p : patterns_for(lemma)) {
      if (p->level == Level::General) return true;
    }
    return false;
  }

  const std::vector<TransferPattern>& patterns() const { return patterns_; }

 private:
  std::vector<TransferPattern> patterns_;
  std::map<std::string, std::size_t> by_id_;
  std::map<std::string, std::vector<std::size_t>> index_;
};

inline PatternDictionary load_patterns(std::istream& in, const Lexicon& lex,
                                       const CategoryHierarchy& ont,
                                       const std::string& file = "patterns") {
  return PatternDictionary::load(in, lex, ont, file);
}

// ---------------------------------------------------------------------------
// Matching
// ---------------------------------------------------------------------------

struct SlotBinding {
  const CaseSlotPattern* slot = nullptr;
  const Argument* arg = nullptr;
  bool from_topic = false;
  int sense_index = -1;  // chosen sense of the argument; -1 = entry's first sense
  int match_depth = 0;   // depth of the matched constraint member
};

struct PatternMatch {
  const TransferPattern* pattern = nullptr;
  std::vector<SlotBinding> bindings;
  bool subject_needs_fill = false;  // required subject slot unbound, to be ellipsis-filled
  int locked_count = 0;
  int depth_sum = 0;

  int level_rank() const {
    switch (pattern->level) {
      case Level::Idiomatic: return 2;
      case Level::Valency: return 1;
      case Level::General: return 0;
    }
    return 0;
  }
};

namespace detail {

// Checks one argument against a slot constraint. Returns the chosen sense
// index and the match depth, or nullopt when the constraint fails.
inline std::optional<std::pair<int, int>> check_constraint(const SlotConstraint& c,
                                                           const Argument& arg,
                                                           const CategoryHierarchy& ont) {
  switch (c.kind) {
    case SlotConstraint::Kind::Unconstrained:
      return std::make_pair(-1, 0);
    case SlotConstraint::Kind::WordLocked:
      if (arg.phrase.surface == c.lemma) return std::make_pair(-1, 0);
      return std::nullopt;
    case SlotConstraint::Kind::Categorial: {
      std::optional<std::pair<int, int>> best;
      for (std::size_t i = 0; i < arg.phrase.senses.size(); ++i) {
        auto m = ont.best_match(arg.phrase.senses[i].categories, c.categories);
        if (m && (!best || m->match_depth > best->second)) {
          best = std::make_pair(static_cast<int>(i), m->match_depth);
        }
      }
      return best;
    }
  }
  return std::nullopt;
}

}  // namespace detail

// All patterns for the clause predicate whose required slots are satisfied
// by the clause's arguments. A required subject slot with no subject material
// at all stays unbound and is marked for ellipsis filling.
inline std::vector<PatternMatch> match_patterns(const PatternDictionary& pd, const PAS& pas,
                                                const CategoryHierarchy& ont, const Lexicon&) {
  std::vector<PatternMatch> out;
  for (const TransferPattern* p : pd.patterns_for(pas.predicate)) {
    PatternMatch m;
    m.pattern = p;
    std::vector<bool> consumed(pas.args.size(), false);
    bool topic_consumed = false;
    bool ok = true;

    for (const CaseSlotPattern& slot : p->slots) {
      struct Candidate {
        const Argument* arg;
        std::size_t index;
        bool topic;
      };
      std::vector<Candidate> candidates;
      for (std::size_t i = 0; i < pas.args.size(); ++i) {
        if (!consumed[i] && pas.args[i].particle == slot.particle) {
          candidates.push_back(Candidate{&pas.args[i], i, false});
        }
      }
      if (slot.particle == "ga" && candidates.empty() && pas.topic && !topic_consumed) {
        candidates.push_back(Candidate{&*pas.topic, 0, true});
      }

      bool bound = false;
      for (const Candidate& cand : candidates) {
        auto check = detail::check_constraint(slot.constraint, *cand.arg, ont);
        if (!check) continue;
        SlotBinding b;
        b.slot = &slot;
        b.arg = cand.arg;
        b.from_topic = cand.topic;
        b.sense_index = check->first;
        b.match_depth = check->second;
        m.bindings.push_back(b);
        if (cand.topic) {
          topic_consumed = true;
        } else {
          consumed[cand.index] = true;
        }
        if (slot.constraint.kind == SlotConstraint::Kind::WordLocked) ++m.locked_count;
        m.depth_sum += check->second;
        bound = true;
        break;
      }
      if (bound || !slot.required) continue;

      if (slot.realization.kind == SlotRealization::Kind::Subject && candidates.empty()) {
        // no subject material in the clause; the constraint gates the fill
        m.subject_needs_fill = true;
        continue;
      }
      ok = false;
      break;
    }
    if (ok) out.push_back(std::move(m));
  }
  return out;
}

// Lexicographically maximal specificity: level, then word-locked slots, then
// summed constraint match depth, then earliest file order. The file-order
// tiebreak makes the order total, so permuting the input never changes the
// winner.
inline const PatternMatch& select_pattern(const std::vector<PatternMatch>& matches) {
  if (matches.empty()) throw std::invalid_argument("select_pattern: empty match list");
  const PatternMatch* best = &matches.front();
  for (const PatternMatch& m : matches) {
    if (m.level_rank() != best->level_rank()) {
      if (m.level_rank() > best->level_rank()) best = &m;
      continue;
    }
    if (m.locked_count != best->locked_count) {
      if (m.locked_count > best->locked_count) best = &m;
      continue;
    }
    if (m.depth_sum != best->depth_sum) {
      if (m.depth_sum > best->depth_sum) best = &m;
      continue;
    }
    if (m.pattern->file_order < best->pattern->file_order) best = &m;
  }
  return *best;
}

}  // namespace mlt
