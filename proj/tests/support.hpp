#pragma once

// Shared fixtures and independent oracles for the test suites. Oracles here
// re-derive expected values by brute force, separately from the library code
// they check.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mlt/harness.hpp"

namespace testsupport {

inline std::filesystem::path data_dir() { return std::filesystem::path(MLT_DATA_DIR); }

inline const mlt::Dictionaries& dicts() {
  static mlt::Dictionaries d = mlt::load_dictionaries(data_dir() / "dict");
  return d;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline mlt::PAS parse_one(const std::string& sentence) {
  const mlt::Dictionaries& d = dicts();
  std::vector<mlt::PAS> clauses = mlt::parse_sentence(d.lexicon, d.ontology, d.deinf(), sentence);
  REQUIRE(clauses.size() == 1);
  return clauses.front();
}

// --- independent reading of the category fixture ---------------------------

struct RawCategory {
  std::string id;
  std::string kind;
  std::optional<std::string> parent;
};

inline std::vector<RawCategory> raw_categories(const std::filesystem::path& file) {
  std::vector<RawCategory> out;
  std::ifstream in(file);
  std::string line;
  while (std::getline(in, line)) {
    auto stripped = mlt::trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    std::vector<std::string> f = mlt::split(line, '\t');
    RawCategory c;
    c.id = std::string(mlt::trim(f.at(0)));
    c.kind = std::string(mlt::trim(f.at(1)));
    std::string parent = std::string(mlt::trim(f.at(2)));
    if (parent != "-") c.parent = parent;
    out.push_back(std::move(c));
  }
  return out;
}

// Depth by a plain parent-chain walk over the raw records.
inline int raw_depth(const std::vector<RawCategory>& cats, const std::string& id) {
  std::map<std::string, const RawCategory*> by_id;
  for (const RawCategory& c : cats) by_id[c.id] = &c;
  int depth = 1;
  const RawCategory* c = by_id.at(id);
  while (c->parent) {
    ++depth;
    c = by_id.at(*c->parent);
  }
  return depth;
}

// Subsumption by a plain parent-chain walk over the raw records.
inline bool raw_subsumes(const std::vector<RawCategory>& cats, const std::string& ancestor,
                         const std::string& descendant) {
  std::map<std::string, const RawCategory*> by_id;
  for (const RawCategory& c : cats) by_id[c.id] = &c;
  const RawCategory* c = by_id.at(descendant);
  while (true) {
    if (c->id == ancestor) return true;
    if (!c->parent) return false;
    c = by_id.at(*c->parent);
  }
}

// --- random hierarchies for property tests ---------------------------------

// TSV text for a random two-tree forest of n nodes respecting the ceilings.
inline std::string random_hierarchy_tsv(std::mt19937& rng, int n) {
  std::ostringstream os;
  std::vector<std::string> common_ids, proper_ids;
  std::map<std::string, int> depth;
  os << "r-common\tcommon\t-\troot\n";
  common_ids.push_back("r-common");
  depth["r-common"] = 1;
  os << "r-proper\tproper\t-\troot\n";
  proper_ids.push_back("r-proper");
  depth["r-proper"] = 1;
  for (int i = 2; i < n; ++i) {
    bool common = std::uniform_int_distribution<int>(0, 3)(rng) != 0;  // proper tree stays small
    auto& pool = common ? common_ids : proper_ids;
    int ceiling = common ? 12 : 9;
    std::string parent;
    for (int tries = 0; tries < 64; ++tries) {
      parent = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
      if (depth[parent] < ceiling) break;
      parent.clear();
    }
    if (parent.empty()) parent = pool.front();
    std::string id = "n" + std::to_string(i);
    os << id << "\t" << (common ? "common" : "proper") << "\t" << parent << "\tnode\n";
    depth[id] = depth[parent] + 1;
    pool.push_back(id);
  }
  return os.str();
}

// Full transitive closure (including reflexive pairs) by repeated walking.
inline std::set<std::pair<std::string, std::string>> raw_closure(
    const std::vector<RawCategory>& cats) {
  std::map<std::string, const RawCategory*> by_id;
  for (const RawCategory& c : cats) by_id[c.id] = &c;
  std::set<std::pair<std::string, std::string>> closure;
  for (const RawCategory& c : cats) {
    const RawCategory* cur = &c;
    while (true) {
      closure.emplace(cur->id, c.id);
      if (!cur->parent) break;
      cur = by_id.at(*cur->parent);
    }
  }
  return closure;
}

inline std::vector<RawCategory> raw_from_text(const std::string& tsv) {
  std::vector<RawCategory> out;
  std::istringstream in(tsv);
  std::string line;
  while (std::getline(in, line)) {
    if (mlt::trim(line).empty()) continue;
    std::vector<std::string> f = mlt::split(line, '\t');
    RawCategory c;
    c.id = f.at(0);
    c.kind = f.at(1);
    if (f.at(2) != "-") c.parent = f.at(2);
    out.push_back(std::move(c));
  }
  return out;
}

// --- independent pattern-match verification ---------------------------------

// Re-checks a reported match against the raw constraint definitions.
inline bool match_satisfied(const mlt::PatternMatch& m, const mlt::PAS& pas,
                            const mlt::CategoryHierarchy& ont) {
  // every binding must point at an argument (or the topic) of this clause
  for (const mlt::SlotBinding& b : m.bindings) {
    bool owned = pas.topic && b.arg == &*pas.topic;
    for (const mlt::Argument& a : pas.args) {
      if (b.arg == &a) owned = true;
    }
    if (!owned) return false;
  }
  for (const mlt::CaseSlotPattern& slot : m.pattern->slots) {
    const mlt::SlotBinding* binding = nullptr;
    for (const mlt::SlotBinding& b : m.bindings) {
      if (b.slot == &slot) binding = &b;
    }
    if (!binding) {
      if (!slot.required) continue;
      if (slot.realization.kind == mlt::SlotRealization::Kind::Subject && m.subject_needs_fill) {
        continue;
      }
      return false;
    }
    const mlt::Argument& arg = *binding->arg;
    if (!binding->from_topic && arg.particle != slot.particle) return false;
    switch (slot.constraint.kind) {
      case mlt::SlotConstraint::Kind::Unconstrained:
        break;
      case mlt::SlotConstraint::Kind::WordLocked:
        if (arg.phrase.surface != slot.constraint.lemma) return false;
        break;
      case mlt::SlotConstraint::Kind::Categorial: {
        bool any = false;
        for (const mlt::ResolvedSense& sense : arg.phrase.senses) {
          for (const std::string& member : slot.constraint.categories.members) {
            for (const std::string& cat : sense.categories) {
              if (ont.subsumes(member, cat)) any = true;
            }
          }
        }
        if (!any) return false;
        break;
      }
    }
  }
  return true;
}

}  // namespace testsupport
