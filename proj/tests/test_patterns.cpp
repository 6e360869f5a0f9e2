#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "mlt/patterns.hpp"
#include "support.hpp"

using namespace mlt;
namespace ts = testsupport;

namespace {

PatternDictionary load_pd(const std::string& tsv) {
  std::istringstream in(tsv);
  return PatternDictionary::load(in, ts::dicts().lexicon, ts::dicts().ontology, "inline");
}

std::vector<std::string> match_ids(const std::vector<PatternMatch>& matches) {
  std::vector<std::string> ids;
  for (const PatternMatch& m : matches) ids.push_back(m.pattern->id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

TEST_CASE("a file with 11 kakeru patterns yields 11 patterns in file order") {
  // the shipped dictionary's eleven constrained kakeru frames
  std::string tsv =
      "kakeru-pour\tvalency\tkakeru\to:@liquid:req:obj ni:*:req:obj\tpour {slot:o} on {slot:ni}\n"
      "kakeru-vow\tidiomatic\tkakeru\to:=gan:req:absorbed ni:*:req:obj\tmake a vow to {slot:ni}\n"
      "kakeru-trouble\tidiomatic\tkakeru\to:=meiwaku:req:absorbed ni:*:req:obj\tcause {slot:ni} trouble\n"
      "kakeru-ladder\tidiomatic\tkakeru\to:=hashigo:req:absorbed ni:*:req:obj\tplace a ladder up to {slot:ni}\n"
      "kakeru-build\tvalency\tkakeru\to:@structure:req:obj ni:*:opt:obj\tbuild {slot:o} {slot:ni}\n"
      "kakeru-sit\tidiomatic\tkakeru\to:=koshi:req:absorbed ni:*:req:obj\tsit down on {slot:ni}\n"
      "kakeru-sift\tidiomatic\tkakeru\tni:=furui:req:absorbed o:*:req:obj\tsift {slot:o}\n"
      "kakeru-mop\tidiomatic\tkakeru\to:=zōkin:req:absorbed ni:*:req:obj\tmop up {slot:ni}\n"
      "kakeru-ribbon\tidiomatic\tkakeru\to:=ribon:req:absorbed ni:*:req:obj\ttie ribbon around {slot:ni}\n"
      "kakeru-spread\tvalency\tkakeru\to:@cloth:req:obj ni:*:req:obj\tspread {slot:o} on {slot:ni}\n"
      "kakeru-play\tvalency\tkakeru\to:@music:req:obj\tplay {slot:o}\n";
  PatternDictionary pd = load_pd(tsv);
  std::vector<const TransferPattern*> got = pd.patterns_for("kakeru");
  REQUIRE(got.size() == 11);
  CHECK(got.front()->id == "kakeru-pour");
  CHECK(got.back()->id == "kakeru-play");
  for (std::size_t i = 1; i < got.size(); ++i) {
    CHECK(got[i - 1]->file_order < got[i]->file_order);
  }
}

TEST_CASE("pattern load errors") {
  // idiomatic without a word-locked slot
  CHECK_THROWS_WITH(load_pd("p1\tidiomatic\tkakeru\to:@liquid:req:obj\thang {slot:o}\n"),
                    doctest::Contains("word-locked"));
  // unknown category names the id
  CHECK_THROWS_WITH(load_pd("p1\tvalency\tkakeru\to:@no-such:req:obj\thang {slot:o}\n"),
                    doctest::Contains("no-such"));
  // duplicate ids
  CHECK_THROWS_WITH(
      load_pd("p1\tgeneral\tkakeru\t-\thang\np1\tgeneral\tiku\t-\tgo\n"),
      doctest::Contains("duplicate"));
  // general patterns may not constrain
  CHECK_THROWS_WITH(load_pd("p1\tgeneral\tkakeru\to:@liquid:req:obj\thang {slot:o}\n"),
                    doctest::Contains("general"));
  CHECK_THROWS_WITH(load_pd("p1\tgeneral\tkakeru\to:=gan:req:obj\thang {slot:o}\n"),
                    doctest::Contains("general"));
  // unknown predicate / locked lemma
  CHECK_THROWS_WITH(load_pd("p1\tgeneral\tzzz\t-\thang\n"), doctest::Contains("zzz"));
  CHECK_THROWS_WITH(load_pd("p1\tidiomatic\tkakeru\to:=zzz:req:obj\thang\n"),
                    doctest::Contains("zzz"));
  // template referencing an undeclared slot
  CHECK_THROWS_WITH(load_pd("p1\tgeneral\tkakeru\t-\thang {slot:o}\n"),
                    doctest::Contains("undeclared"));
}

TEST_CASE("match_patterns agrees with a brute-force evaluation of every kakeru pattern") {
  const Dictionaries& d = ts::dicts();

  // brute-force: re-evaluate each pattern's slots directly
  auto brute_ids = [&](const PAS& pas) {
    std::vector<std::string> ids;
    for (const TransferPattern* p : d.patterns.patterns_for(pas.predicate)) {
      bool ok = true;
      for (const CaseSlotPattern& slot : p->slots) {
        if (!slot.required) continue;
        bool satisfied = false;
        auto try_arg = [&](const Argument& a) {
          if (a.particle != slot.particle && !(slot.particle == "ga" && a.particle == "wa")) return;
          switch (slot.constraint.kind) {
            case SlotConstraint::Kind::Unconstrained:
              satisfied = true;
              break;
            case SlotConstraint::Kind::WordLocked:
              if (a.phrase.surface == slot.constraint.lemma) satisfied = true;
              break;
            case SlotConstraint::Kind::Categorial:
              for (const ResolvedSense& s : a.phrase.senses) {
                for (const std::string& m : slot.constraint.categories.members) {
                  for (const std::string& c : s.categories) {
                    if (d.ontology.subsumes(m, c)) satisfied = true;
                  }
                }
              }
              break;
          }
        };
        for (const Argument& a : pas.args) try_arg(a);
        if (pas.topic && slot.particle == "ga") try_arg(*pas.topic);
        if (!satisfied && slot.realization.kind == SlotRealization::Kind::Subject) {
          bool has_subject = pas.topic.has_value();
          for (const Argument& a : pas.args) {
            if (a.particle == "ga") has_subject = true;
          }
          if (!has_subject) satisfied = true;  // fillable
        }
        if (!satisfied) {
          ok = false;
          break;
        }
      }
      if (ok) ids.push_back(p->id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
  };

  std::vector<std::string> sources = {
      "kanojo-wa hana-ni mizu-o kaketa.",
      "haha-wa kamisama-ni gan-o kaketa.",
      "kare-wa isu-ni koshi-o kaketeiru.",
      "karera-wa suna-o furui-ni kaketa.",
      "kanojo-wa shokutaku-ni tēburukurosu-o kaketa.",
      "ano kissaten-wa modan-jazu-o kaketeiru.",
      "kare-wa nikai-ni hashigo-o kaketa.",
  };
  for (const std::string& src : sources) {
    PAS pas = ts::parse_one(src);
    std::vector<PatternMatch> matches = match_patterns(d.patterns, pas, d.ontology, d.lexicon);
    CHECK(match_ids(matches) == brute_ids(pas));
    for (const PatternMatch& m : matches) {
      CHECK(ts::match_satisfied(m, pas, d.ontology));  // independent re-verification
    }
  }
}

TEST_CASE("the liquid-object frame matches water, not the bridge frame") {
  const Dictionaries& d = ts::dicts();
  PAS pas = ts::parse_one("kanojo-wa hana-ni mizu-o kaketa.");
  std::vector<PatternMatch> matches = match_patterns(d.patterns, pas, d.ontology, d.lexicon);
  std::vector<std::string> ids = match_ids(matches);
  CHECK(std::count(ids.begin(), ids.end(), "kakeru-pour") == 1);
  CHECK(std::count(ids.begin(), ids.end(), "kakeru-build") == 0);
  CHECK(select_pattern(matches).pattern->id == "kakeru-pour");
}

TEST_CASE("a word-locked idiomatic frame wins over the general one") {
  const Dictionaries& d = ts::dicts();
  PAS pas = ts::parse_one("kare-wa isu-ni koshi-o kaketeiru.");
  std::vector<PatternMatch> matches = match_patterns(d.patterns, pas, d.ontology, d.lexicon);
  std::vector<std::string> ids = match_ids(matches);
  CHECK(std::count(ids.begin(), ids.end(), "kakeru-sit") == 1);
  CHECK(select_pattern(matches).pattern->id == "kakeru-sit");
  CHECK(select_pattern(matches).pattern->level == Level::Idiomatic);
}

TEST_CASE("an argument outside every category constraint leaves only the general frame") {
  const Dictionaries& d = ts::dicts();
  PAS pas = ts::parse_one("kanojo-wa hon-o kaketa.");  // book fits no kakeru constraint
  std::vector<PatternMatch> matches = match_patterns(d.patterns, pas, d.ontology, d.lexicon);
  REQUIRE(matches.size() == 1);
  CHECK(matches[0].pattern->id == "kakeru-general");
  CHECK(matches[0].pattern->level == Level::General);
}

TEST_CASE("select_pattern prefers deeper category matches within a level") {
  // same word, two valency frames whose constraints sit at different depths
  std::string tsv =
      "shallow\tvalency\tkakeru\to:@substance:req:obj\thang {slot:o}\n"
      "deep\tvalency\tkakeru\to:@liquid:req:obj\thang {slot:o}\n";
  PatternDictionary pd = load_pd(tsv);
  const Dictionaries& d = ts::dicts();
  PAS pas = ts::parse_one("kanojo-wa mizu-o kaketa.");
  std::vector<PatternMatch> matches = match_patterns(pd, pas, d.ontology, d.lexicon);
  REQUIRE(matches.size() == 2);
  CHECK(d.ontology.depth("liquid") > d.ontology.depth("substance"));
  CHECK(select_pattern(matches).pattern->id == "deep");
}

TEST_CASE("select_pattern is total, deterministic and permutation-invariant") {
  const Dictionaries& d = ts::dicts();
  PAS pas = ts::parse_one("kanojo-wa shokutaku-ni tēburukurosu-o kaketa.");
  std::vector<PatternMatch> matches = match_patterns(d.patterns, pas, d.ontology, d.lexicon);
  REQUIRE(matches.size() >= 2);

  std::string winner = select_pattern(matches).pattern->id;
  CHECK(winner == "kakeru-spread");

  // the winner is an element of the input
  bool found = false;
  for (const PatternMatch& m : matches) {
    if (m.pattern->id == winner) found = true;
  }
  CHECK(found);

  std::mt19937 rng(7);
  for (int round = 0; round < 20; ++round) {
    std::shuffle(matches.begin(), matches.end(), rng);
    CHECK(select_pattern(matches).pattern->id == winner);
  }

  // a singleton selects itself; an empty list is an error
  std::vector<PatternMatch> single = {matches.front()};
  CHECK(select_pattern(single).pattern->id == single.front().pattern->id);
  CHECK_THROWS_AS(select_pattern({}), std::invalid_argument);
}
