#pragma once

// Bug-fix commit labelling and path-based file categorisation.

#include <algorithm>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

#include "beliefbench/core.hpp"

namespace beliefbench::labeler {

// Stemmed keywords whose presence in a commit message marks it bug-fixing.
struct KeywordSet {
  std::vector<std::string> stems;

  // The default 29-stem roster; matching is plain substring containment on
  // the lowercased message, so e.g. "perf" also matches "performance" and
  // "minor" matches "minority".
  static const KeywordSet& defaults() {
    static const KeywordSet ks{{
        "bug",       "fix",     "issu",    "error",      "correct",
        "proper",    "deprecat", "broke",  "optimize",   "patch",
        "solve",     "slow",    "obsolete", "vulnerab",  "debug",
        "perf",      "memory",  "minor",   "wart",       "better",
        "complex",   "break",   "investigat", "compile", "defect",
        "inconsist", "crash",   "problem", "resol"}};
    return ks;
  }

  void validate() const {
    if (stems.empty()) throw InputError("keyword set must not be empty");
    for (const auto& s : stems) {
      if (s.empty()) throw InputError("keyword stem must not be empty");
      for (char c : s)
        if (c >= 'A' && c <= 'Z')
          throw InputError("keyword stem must be lowercase: " + s);
        else if (std::isspace(static_cast<unsigned char>(c)))
          throw InputError("keyword stem must be whitespace-free: " + s);
    }
  }
};

// True iff the lowercased message contains at least one stem as a substring.
inline bool classify_commit(std::string_view message, const KeywordSet& keywords) {
  const std::string haystack = lower_ascii(message);
  for (const auto& stem : keywords.stems)
    if (haystack.find(stem) != std::string::npos) return true;
  return false;
}

// Path rules; extension entries are lowercase and include the leading dot.
struct CategoryRules {
  std::string test_marker = "test";
  std::vector<std::string> config_extensions;
  std::vector<std::string> source_extensions;

  static const CategoryRules& defaults() {
    static const CategoryRules r{
        "test",
        {".yml", ".yaml", ".pom", ".xml", ".json", ".toml", ".ini", ".cfg",
         ".properties", ".conf", ".lock"},
        {".c",   ".h",   ".cpp",  ".cc",  ".cxx", ".hpp", ".hh",   ".cs",
         ".java", ".js", ".jsx",  ".php", ".py",  ".rb",  ".rake", ".sh",
         ".bash", ".html", ".htm", ".css", ".scss", ".sass", ".erb"}};
    return r;
  }

  void validate() const {
    if (test_marker.empty()) throw InputError("test marker must not be empty");
    auto check = [](const std::vector<std::string>& exts, const char* what) {
      if (exts.empty())
        throw InputError(std::string(what) + " extension list must not be empty");
      for (const auto& e : exts)
        if (e.size() < 2 || e[0] != '.' || e != lower_ascii(e))
          throw InputError(std::string("bad ") + what + " extension: " + e);
    };
    check(config_extensions, "config");
    check(source_extensions, "source");
  }
};

// Non-overlapping categories with precedence Test > Config > Source > Static.
inline FileCategory categorize_file(std::string_view path,
                                    const CategoryRules& rules = CategoryRules::defaults()) {
  const std::string p = lower_ascii(path);
  if (p.find(rules.test_marker) != std::string::npos) return FileCategory::Test;
  auto ends_with_any = [&p](const std::vector<std::string>& exts) {
    return std::any_of(exts.begin(), exts.end(),
                       [&p](const std::string& e) { return p.ends_with(e); });
  };
  if (ends_with_any(rules.config_extensions)) return FileCategory::Config;
  if (ends_with_any(rules.source_extensions)) return FileCategory::Source;
  return FileCategory::Static;
}

// Share of commits classified bug-fixing. Works over any range of records
// exposing a `message` member.
template <class Records>
double bugfix_fraction(const Records& records, const KeywordSet& keywords) {
  if (std::empty(records))
    throw InputError("bugfix_fraction: empty record list");
  std::size_t fixes = 0, total = 0;
  for (const auto& r : records) {
    ++total;
    if (classify_commit(r.message, keywords)) ++fixes;
  }
  return static_cast<double>(fixes) / static_cast<double>(total);
}

}  // namespace beliefbench::labeler
