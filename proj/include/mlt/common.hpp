#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mlt {

// Raised when a dictionary or corpus file fails to parse or validate.
// Messages carry the file, line and offending id so that dictionary
// editing rounds can locate problems quickly.
class LoadError : public std::runtime_error {
 public:
  LoadError(const std::string& file, int line, const std::string& what)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + what),
        file_(file),
        line_(line) {}

  explicit LoadError(const std::string& what) : std::runtime_error(what) {}

  const std::string& file() const { return file_; }
  int line() const { return line_; }

 private:
  std::string file_;
  int line_ = 0;
};

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits on a single separator, keeping empty fields.
inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      break;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

// Splits on runs of whitespace, dropping empty tokens.
inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// Trim plus collapsing of internal whitespace runs to single spaces.
inline std::string collapse_ws(std::string_view s) {
  std::string out;
  bool in_space = false;
  for (char c : trim(s)) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_space = true;
      continue;
    }
    if (in_space && !out.empty()) out += ' ';
    in_space = false;
    out += c;
  }
  return out;
}

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Uppercases the first ASCII letter; multibyte leading characters are left alone.
inline std::string capitalize_first(std::string s) {
  for (char& c : s) {
    unsigned char u = static_cast<unsigned char>(c);
    if (u >= 0x80) return s;  // non-ASCII lead byte, leave as written
    if (std::isalpha(u)) {
      c = static_cast<char>(std::toupper(u));
      return s;
    }
    if (!std::isspace(u) && u != '"' && u != '\'') return s;
  }
  return s;
}

// Reads tab-separated records, skipping blank lines and '#' comments.
// The callback receives the 1-based line number and the raw fields.
inline void for_each_record(std::istream& in, const std::string& file, std::size_t min_fields,
                            const std::function<void(int, const std::vector<std::string>&)>& fn) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    std::vector<std::string> fields = split(line, '\t');
    if (fields.size() < min_fields) {
      throw LoadError(file, line_no,
                      "expected at least " + std::to_string(min_fields) + " tab-separated fields, got " +
                          std::to_string(fields.size()));
    }
    fn(line_no, fields);
  }
}

}  // namespace mlt
