#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mlt/analyzer.hpp"
#include "mlt/common.hpp"
#include "mlt/patterns.hpp"

namespace mlt {

// Japanese-to-Japanese rewriting: a te-form clause matching the trigger is
// deleted and replaced by a particle-marked adjunct on the following clause.
// Category guards keep the rule from firing outside its intended cases.
struct RewriteRule {
  std::string id;
  std::string trigger_predicate;
  std::vector<CaseSlotPattern> guards;  // realization unused; constraints gate firing
  std::string adjunct_particle;
  std::string jp_template;  // "{ni}-de" -> "basu-de"; fixed text allowed
  std::string en_template;  // "by {bare:ni}" -> "by bus"
  int file_order = 0;
};

struct RewriteFiring {
  std::string rule_id;
  std::string consumed_predicate;
  std::string adjunct_jp;
};

struct RewriteTrace {
  std::vector<RewriteFiring> firings;
};

class RewriteRules {
 public:
  // Records: id, trigger-predicate, slot-guards, adjunct-template.
  // Guards are space-separated particle:constraint:req|opt items ("-" for
  // none); the adjunct is particle|japanese-template|english-template.
  static RewriteRules load(std::istream& in, const Lexicon& lex, const CategoryHierarchy& ont,
                           const std::string& file = "rewrites") {
    RewriteRules rules;
    for_each_record(in, file, 4, [&](int line_no, const std::vector<std::string>& f) {
      RewriteRule r;
      r.id = std::string(trim(f[0]));
      if (r.id.empty()) throw LoadError(file, line_no, "empty rule id");
      r.trigger_predicate = std::string(trim(f[1]));
      if (lex.lookup(r.trigger_predicate).empty()) {
        throw LoadError(file, line_no,
                        "rule '" + r.id + "': unknown trigger predicate '" + r.trigger_predicate + "'");
      }
      std::string guards = std::string(trim(f[2]));
      if (guards != "-") {
        for (const std::string& g : split_ws(guards)) {
          std::vector<std::string> parts = split(g, ':');
          if (parts.size() != 3) {
            throw LoadError(file, line_no, "rule '" + r.id + "': malformed guard '" + g + "'");
          }
          CaseSlotPattern slot;
          slot.particle = parts[0];
          slot.constraint = detail::parse_constraint(parts[1], ont, lex, file, line_no);
          if (parts[2] == "req") {
            slot.required = true;
          } else if (parts[2] == "opt") {
            slot.required = false;
          } else {
            throw LoadError(file, line_no, "rule '" + r.id + "': expected req or opt in '" + g + "'");
          }
          r.guards.push_back(std::move(slot));
        }
      }
      std::vector<std::string> adjunct = split(f[3], '|');
      if (adjunct.size() != 3) {
        throw LoadError(file, line_no,
                        "rule '" + r.id + "': adjunct must be particle|jp-template|en-template");
      }
      r.adjunct_particle = std::string(trim(adjunct[0]));
      r.jp_template = std::string(trim(adjunct[1]));
      r.en_template = std::string(trim(adjunct[2]));
      r.file_order = static_cast<int>(rules.rules_.size());
      rules.rules_.push_back(std::move(r));
    });
    return rules;
  }

  const std::vector<RewriteRule>& rules() const { return rules_; }

 private:
  std::vector<RewriteRule> rules_;
};

inline RewriteRules load_rewrites(std::istream& in, const Lexicon& lex, const CategoryHierarchy& ont,
                                  const std::string& file = "rewrites") {
  return RewriteRules::load(in, lex, ont, file);
}

namespace detail {

struct GuardBinding {
  std::size_t arg_index;
  int sense_index;
};

// Binds every guard of a rule against the clause, or nullopt when a
// required guard cannot be satisfied.
inline std::optional<std::map<std::string, GuardBinding>> bind_guards(const RewriteRule& rule,
                                                                      const PAS& clause,
                                                                      const CategoryHierarchy& ont) {
  std::map<std::string, GuardBinding> bound;
  std::vector<bool> consumed(clause.args.size(), false);
  for (const CaseSlotPattern& guard : rule.guards) {
    bool ok = false;
    for (std::size_t i = 0; i < clause.args.size(); ++i) {
      if (consumed[i] || clause.args[i].particle != guard.particle) continue;
      auto check = check_constraint(guard.constraint, clause.args[i], ont);
      if (!check) continue;
      consumed[i] = true;
      bound[guard.particle] = GuardBinding{i, check->first};
      ok = true;
      break;
    }
    if (!ok && guard.required) return std::nullopt;
  }
  return bound;
}

inline std::string render_jp(const std::string& tmpl, const PAS& clause,
                             const std::map<std::string, GuardBinding>& bound) {
  std::string out;
  for (std::size_t i = 0; i < tmpl.size();) {
    if (tmpl[i] == '{') {
      std::size_t end = tmpl.find('}', i);
      std::string particle = tmpl.substr(i + 1, end - i - 1);
      out += clause.args[bound.at(particle).arg_index].phrase.surface;
      i = end + 1;
    } else {
      out += tmpl[i++];
    }
  }
  return out;
}

inline std::string render_en(const std::string& tmpl, const PAS& clause,
                             const std::map<std::string, GuardBinding>& bound) {
  std::vector<std::string> words;
  for (const std::string& tok : split_ws(tmpl)) {
    if (tok.front() == '{' && tok.back() == '}') {
      std::vector<std::string> parts = split(tok.substr(1, tok.size() - 2), ':');
      const GuardBinding& b = bound.at(parts.back());
      const NounPhrase& np = clause.args[b.arg_index].phrase;
      int sense = b.sense_index >= 0 ? b.sense_index : 0;
      words.push_back(np.senses[static_cast<std::size_t>(sense)].gloss.lemma);
    } else {
      words.push_back(tok);
    }
  }
  return join(words, " ");
}

}  // namespace detail

// Applies the rules left to right in a single pass. For each te-form clause
// the first rule whose guards hold fires: the clause is deleted, its
// unconsumed arguments and topic move to the following clause, and the
// synthesized adjunct is attached after them (Japanese surface order).
inline std::pair<std::vector<PAS>, RewriteTrace> apply_rewrites(const RewriteRules& rules,
                                                                std::vector<PAS> clauses,
                                                                const CategoryHierarchy& ont) {
  RewriteTrace trace;
  std::size_t i = 0;
  while (i < clauses.size()) {
    PAS& clause = clauses[i];
    if (clause.subjective.connective_to_next != Connective::Sequential || i + 1 >= clauses.size()) {
      ++i;
      continue;
    }
    bool fired = false;
    for (const RewriteRule& rule : rules.rules()) {
      if (rule.trigger_predicate != clause.predicate) continue;
      auto bound = detail::bind_guards(rule, clause, ont);
      if (!bound) continue;

      Argument adjunct;
      adjunct.particle = rule.adjunct_particle;
      adjunct.particle_chain = {rule.adjunct_particle};
      adjunct.synthesized = true;
      adjunct.jp_form = detail::render_jp(rule.jp_template, clause, *bound);
      adjunct.en_hint = detail::render_en(rule.en_template, clause, *bound);
      if (!bound->empty()) {
        adjunct.phrase = clause.args[bound->begin()->second.arg_index].phrase;
      } else {
        adjunct.phrase.surface = adjunct.jp_form;
      }
      trace.firings.push_back(RewriteFiring{rule.id, clause.predicate, adjunct.jp_form});

      std::vector<bool> consumed(clause.args.size(), false);
      for (const auto& [particle, binding] : *bound) consumed[binding.arg_index] = true;

      std::vector<Argument> forwarded;
      for (std::size_t a = 0; a < clause.args.size(); ++a) {
        if (!consumed[a]) forwarded.push_back(std::move(clause.args[a]));
      }
      forwarded.push_back(std::move(adjunct));

      PAS& target = clauses[i + 1];
      target.args.insert(target.args.begin(), std::make_move_iterator(forwarded.begin()),
                         std::make_move_iterator(forwarded.end()));
      if (clause.topic && !target.topic) target.topic = std::move(clause.topic);
      fired = true;
      break;
    }
    if (fired) {
      clauses.erase(clauses.begin() + static_cast<long>(i));
    } else {
      ++i;
    }
  }
  return {std::move(clauses), std::move(trace)};
}

}  // namespace mlt
