#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mlt/common.hpp"

namespace mlt {

enum class CategoryKind { Common, Proper };

inline const char* to_string(CategoryKind k) {
  return k == CategoryKind::Common ? "common" : "proper";
}

// A node in one of the two is-a trees. Depth is 1 at a root and grows by
// one per parent link.
struct SemanticCategory {
  std::string id;
  std::string name;
  CategoryKind kind = CategoryKind::Common;
  std::optional<std::string> parent;
  int depth = 0;
};

// A disjunctive set of category ids used as a slot condition: a word
// category satisfies the constraint if any member subsumes it.
struct CategoryConstraint {
  std::vector<std::string> members;  // declaration order is the tie-break order

  bool empty() const { return members.empty(); }
};

// The two is-a hierarchies (one per kind), immutable after load and safe
// to share across concurrent translation jobs.
class CategoryHierarchy {
 public:
  static constexpr int kMaxCommonDepth = 12;
  static constexpr int kMaxProperDepth = 9;

  // Reads tab-separated records: id, kind, parent-id-or-"-", name.
  static CategoryHierarchy load(std::istream& in, const std::string& file = "categories") {
    CategoryHierarchy h;
    for_each_record(in, file, 4, [&](int line_no, const std::vector<std::string>& f) {
      SemanticCategory c;
      c.id = std::string(trim(f[0]));
      std::string kind = std::string(trim(f[1]));
      std::string parent = std::string(trim(f[2]));
      c.name = std::string(trim(f[3]));
      if (c.id.empty()) throw LoadError(file, line_no, "empty category id");
      if (kind == "common") {
        c.kind = CategoryKind::Common;
      } else if (kind == "proper") {
        c.kind = CategoryKind::Proper;
      } else {
        throw LoadError(file, line_no, "category '" + c.id + "': unknown kind '" + kind + "'");
      }
      if (parent != "-") c.parent = parent;
      if (c.parent && *c.parent == c.id) {
        throw LoadError(file, line_no, "category '" + c.id + "': cycle (parent is itself)");
      }
      if (h.index_.count(c.id)) {
        throw LoadError(file, line_no, "duplicate category id '" + c.id + "'");
      }
      h.index_[c.id] = h.categories_.size();
      h.categories_.push_back(std::move(c));
    });
    h.validate(file);
    return h;
  }

  const SemanticCategory* find(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &categories_[it->second];
  }

  bool contains(const std::string& id) const { return index_.count(id) != 0; }

  const SemanticCategory& require(const std::string& id) const {
    const SemanticCategory* c = find(id);
    if (!c) throw LoadError("unknown category id '" + id + "'");
    return *c;
  }

  // True iff ancestor lies on descendant's parent chain, including equality.
  bool subsumes(const std::string& ancestor, const std::string& descendant) const {
    require(ancestor);
    const SemanticCategory* c = &require(descendant);
    while (true) {
      if (c->id == ancestor) return true;
      if (!c->parent) return false;
      c = &require(*c->parent);
    }
  }

  // 1 for a root, parent depth + 1 otherwise.
  int depth(const std::string& id) const { return require(id).depth; }

  std::optional<std::string> root_of(CategoryKind kind) const {
    for (const auto& c : categories_) {
      if (c.kind == kind && !c.parent) return c.id;
    }
    return std::nullopt;
  }

  struct BestMatch {
    std::string member;         // the constraint member that matched
    std::string word_category;  // the word category it subsumes
    int match_depth = 0;        // depth of the member (deeper = more specific)
  };

  // Among all (member, word category) pairs where the member subsumes the
  // word category, returns the pair with the deepest member; ties go to the
  // earlier constraint member, then the earlier word category.
  std::optional<BestMatch> best_match(const std::vector<std::string>& word_categories,
                                      const CategoryConstraint& constraint) const {
    std::optional<BestMatch> best;
    for (const auto& member : constraint.members) {
      int d = depth(member);
      for (const auto& wc : word_categories) {
        if (!subsumes(member, wc)) continue;
        if (!best || d > best->match_depth) best = BestMatch{member, wc, d};
      }
    }
    return best;
  }

  const std::vector<SemanticCategory>& categories() const { return categories_; }
  std::size_t size() const { return categories_.size(); }

 private:
  void validate(const std::string& file) {
    std::map<CategoryKind, std::string> roots;
    for (const auto& c : categories_) {
      if (!c.parent) {
        auto [it, inserted] = roots.emplace(c.kind, c.id);
        if (!inserted) {
          throw LoadError(file, 0,
                          "two roots of kind " + std::string(to_string(c.kind)) + ": '" + it->second +
                              "' and '" + c.id + "'");
        }
      }
    }
    for (auto& c : categories_) {
      if (!c.parent) {
        c.depth = 1;
        continue;
      }
      // Walk the parent chain; anything longer than the node count is a cycle.
      int d = 1;
      const SemanticCategory* p = &c;
      while (p->parent) {
        auto it = index_.find(*p->parent);
        if (it == index_.end()) {
          throw LoadError(file, 0, "category '" + p->id + "': missing parent '" + *p->parent + "'");
        }
        const SemanticCategory* parent = &categories_[it->second];
        if (parent->kind != c.kind) {
          throw LoadError(file, 0,
                          "category '" + c.id + "': parent '" + parent->id + "' has a different kind");
        }
        ++d;
        if (d > static_cast<int>(categories_.size())) {
          throw LoadError(file, 0, "cycle detected at category '" + c.id + "'");
        }
        p = parent;
      }
      c.depth = d;
      int ceiling = c.kind == CategoryKind::Common ? kMaxCommonDepth : kMaxProperDepth;
      if (c.depth > ceiling) {
        throw LoadError(file, 0,
                        "category '" + c.id + "': depth " + std::to_string(c.depth) + " exceeds the " +
                            to_string(c.kind) + " ceiling of " + std::to_string(ceiling));
      }
    }
  }

  std::vector<SemanticCategory> categories_;
  std::map<std::string, std::size_t> index_;
};

inline CategoryHierarchy load_hierarchy(std::istream& in, const std::string& file = "categories") {
  return CategoryHierarchy::load(in, file);
}

}  // namespace mlt
