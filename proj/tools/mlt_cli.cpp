// Command-line front end: translate, eval, grade, validate.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mlt/harness.hpp"

namespace {

std::string read_all(std::istream& in) {
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

mlt::Dictionaries load_or_exit(const std::string& dict_dir) {
  try {
    return mlt::load_dictionaries(dict_dir);
  } catch (const std::exception& e) {
    std::cerr << "dictionary error: " << e.what() << "\n";
    std::exit(2);
  }
}

int cmd_translate(const std::string& dict_dir, const std::string& input_file, bool trace) {
  mlt::Dictionaries dicts = load_or_exit(dict_dir);
  std::string text;
  if (input_file.empty() || input_file == "-") {
    text = read_all(std::cin);
  } else {
    std::ifstream in(input_file);
    if (!in) {
      std::cerr << "cannot open " << input_file << "\n";
      return 2;
    }
    text = read_all(in);
  }
  mlt::TranslationResult result = mlt::translate_document(dicts, text);
  if (trace) result.trace.render(std::cerr);
  for (const std::string& err : result.errors) std::cerr << "error: " << err << "\n";
  if (!result.english.empty()) std::cout << result.english << "\n";
  return result.ok() ? 0 : 1;
}

int cmd_eval(const std::string& dict_dir, const std::string& corpus_file, const std::string& mode,
             bool allow_fail) {
  mlt::Dictionaries dicts = load_or_exit(dict_dir);
  try {
    mlt::Corpus corpus = mlt::load_corpus_file(corpus_file);
    mlt::EvalReport report = mlt::run_corpus(dicts, corpus, mode);
    std::cout << report.render();
    if (allow_fail) return 0;
    return report.passes == report.total() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "eval error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_grade(const std::string& records_file, const std::string& corpus_file) {
  try {
    std::ifstream in(records_file);
    if (!in) {
      std::cerr << "cannot open " << records_file << "\n";
      return 2;
    }
    std::vector<mlt::GradeRecord> records = mlt::load_grades(in, records_file);
    std::vector<std::string> ids;
    mlt::GradeReport report;
    if (!corpus_file.empty()) {
      mlt::Corpus corpus = mlt::load_corpus_file(corpus_file);
      for (const mlt::CorpusCase& c : corpus.cases) ids.push_back(c.id);
      report = mlt::score_grades(records, &ids);
    } else {
      report = mlt::score_grades(records);
    }
    std::cout << report.render();
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "grade error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_validate(const std::string& dict_dir) {
  try {
    mlt::Dictionaries dicts = mlt::load_dictionaries(dict_dir);
    std::vector<std::string> issues = mlt::validate_dictionaries(dicts);
    for (const std::string& issue : issues) std::cout << "issue: " << issue << "\n";
    if (issues.empty()) {
      std::cout << "ok: " << dicts.ontology.size() << " categories, "
                << dicts.lexicon.entries().size() << " lexical entries, "
                << dicts.patterns.patterns().size() << " patterns, "
                << dicts.rewrites.rules().size() << " rewrite rules\n";
      return 0;
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "validate error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Japanese-to-English transfer translator"};
  app.require_subcommand(1);

  std::string dict_dir = "data/dict";
  std::string input_file;
  bool trace = false;
  CLI::App* translate = app.add_subcommand("translate", "translate romanized Japanese text");
  translate->add_option("--dict", dict_dir, "dictionary directory");
  translate->add_flag("--trace", trace, "print the pipeline trace to stderr");
  translate->add_option("file", input_file, "input file (default: stdin)");

  std::string corpus_file;
  std::string mode = "blind";
  bool allow_fail = false;
  CLI::App* eval = app.add_subcommand("eval", "run the regression corpus");
  eval->add_option("--corpus", corpus_file, "corpus file")->required();
  eval->add_option("--dict", dict_dir, "dictionary directory");
  eval->add_option("--mode", mode, "report label: blind or window")
      ->check(CLI::IsMember({"blind", "window"}));
  eval->add_flag("--allow-fail", allow_fail, "exit 0 even when cases fail");

  std::string records_file;
  std::string grade_corpus;
  CLI::App* grade = app.add_subcommand("grade", "score human grade records");
  grade->add_option("--records", records_file, "grade records file")->required();
  grade->add_option("--corpus", grade_corpus, "corpus file to check sentence ids against");

  CLI::App* validate = app.add_subcommand("validate", "load and cross-check the dictionaries");
  validate->add_option("--dict", dict_dir, "dictionary directory");

  CLI11_PARSE(app, argc, argv);

  if (translate->parsed()) return cmd_translate(dict_dir, input_file, trace);
  if (eval->parsed()) return cmd_eval(dict_dir, corpus_file, mode, allow_fail);
  if (grade->parsed()) return cmd_grade(records_file, grade_corpus);
  if (validate->parsed()) return cmd_validate(dict_dir);
  return 1;
}
