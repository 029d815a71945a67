#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "beliefbench/labeler.hpp"

using beliefbench::FileCategory;
using beliefbench::InputError;
using beliefbench::labeler::CategoryRules;
using beliefbench::labeler::KeywordSet;
using beliefbench::labeler::bugfix_fraction;
using beliefbench::labeler::categorize_file;
using beliefbench::labeler::classify_commit;

namespace {

// Independent oracle: lowercase by hand, scan every stem with find().
// Keeps its own copy of the roster so a regression in the defaults is caught.
const std::vector<std::string> kExpectedStems = {
    "bug",     "fix",      "issu",       "error",   "correct", "proper",
    "deprecat", "broke",   "optimize",   "patch",   "solve",   "slow",
    "obsolete", "vulnerab", "debug",     "perf",    "memory",  "minor",
    "wart",    "better",   "complex",    "break",   "investigat", "compile",
    "defect",  "inconsist", "crash",     "problem", "resol"};

bool oracle_classify(std::string msg) {
  std::transform(msg.begin(), msg.end(), msg.begin(), [](unsigned char c) {
    return c >= 'A' && c <= 'Z' ? char(c - 'A' + 'a') : char(c);
  });
  for (const auto& stem : kExpectedStems)
    if (msg.find(stem) != std::string::npos) return true;
  return false;
}

struct Msg {
  std::string message;
};

}  // namespace

TEST(KeywordSetTest, DefaultRosterIsFrozen) {
  EXPECT_EQ(KeywordSet::defaults().stems, kExpectedStems);
  EXPECT_NO_THROW(KeywordSet::defaults().validate());
}

TEST(KeywordSetTest, ValidationRejectsBadStems) {
  EXPECT_THROW(KeywordSet{{}}.validate(), InputError);
  EXPECT_THROW((KeywordSet{{"fix", ""}}.validate()), InputError);
  EXPECT_THROW((KeywordSet{{"Fix"}}.validate()), InputError);
  EXPECT_THROW((KeywordSet{{"fix bug"}}.validate()), InputError);
}

TEST(ClassifyCommitTest, KnownMessages) {
  const auto& ks = KeywordSet::defaults();
  EXPECT_TRUE(classify_commit("Fix race condition causing crash", ks));
  EXPECT_FALSE(classify_commit("Add contributor guide", ks));
  // "perf" matches inside "performance"; frozen from the substring oracle.
  ASSERT_TRUE(oracle_classify("Improve performance of loader"));
  EXPECT_TRUE(classify_commit("Improve performance of loader", ks));
  EXPECT_FALSE(classify_commit("", ks));
  // Loose stems match inside unrelated words by design.
  EXPECT_TRUE(classify_commit("minority report", ks));
  EXPECT_TRUE(classify_commit("high resolution icons", ks));
}

TEST(ClassifyCommitTest, MatchesOracleOnRandomMessages) {
  std::mt19937 rng(7);
  const std::vector<std::string> words = {
      "update", "the",    "loader", "fix",     "readme", "crash",
      "widget", "perf",   "and",    "rename",  "minor",  "docs",
      "breaks", "values", "Error",  "PROBLEM", "tune",   "release"};
  const auto& ks = KeywordSet::defaults();
  for (int iter = 0; iter < 2000; ++iter) {
    std::string msg;
    const int len = int(rng() % 8);
    for (int i = 0; i < len; ++i) {
      if (i) msg += ' ';
      msg += words[rng() % words.size()];
    }
    EXPECT_EQ(classify_commit(msg, ks), oracle_classify(msg)) << msg;
  }
}

TEST(ClassifyCommitTest, IndependentOfStemOrder) {
  std::mt19937 rng(23);
  KeywordSet shuffled = KeywordSet::defaults();
  const std::vector<std::string> messages = {
      "fix the loader", "update docs", "minor cleanup", "", "resolve hang"};
  for (int iter = 0; iter < 50; ++iter) {
    std::shuffle(shuffled.stems.begin(), shuffled.stems.end(), rng);
    for (const auto& msg : messages)
      EXPECT_EQ(classify_commit(msg, shuffled),
                classify_commit(msg, KeywordSet::defaults()))
          << msg;
  }
}

TEST(ClassifyCommitTest, CaseInsensitive) {
  const auto& ks = KeywordSet::defaults();
  std::mt19937 rng(11);
  const std::string base = "fixed the loader crash on startup";
  for (int iter = 0; iter < 200; ++iter) {
    std::string msg = base;
    for (auto& c : msg)
      if (rng() % 2 && c >= 'a' && c <= 'z') c = char(c - 'a' + 'A');
    EXPECT_EQ(classify_commit(msg, ks),
              classify_commit(beliefbench::lower_ascii(msg), ks));
    EXPECT_TRUE(classify_commit(msg, ks));
  }
}

TEST(ClassifyCommitTest, AddingStemsIsMonotone) {
  std::mt19937 rng(13);
  const std::vector<std::string> pool = {"alpha", "beta", "gamma", "fix",
                                         "slow",  "wart", "zz"};
  for (int iter = 0; iter < 500; ++iter) {
    KeywordSet small, large;
    for (const auto& stem : pool) {
      const bool in_small = rng() % 2 == 0;
      if (in_small) small.stems.push_back(stem);
      if (in_small || rng() % 2 == 0) large.stems.push_back(stem);
    }
    if (small.stems.empty()) small.stems.push_back("qqq");
    if (large.stems.size() < small.stems.size()) continue;
    std::string msg;
    for (int i = 0; i < 4; ++i) msg += pool[rng() % pool.size()] + " ";
    if (classify_commit(msg, small)) {
      EXPECT_TRUE(classify_commit(msg, large));
    }
  }
}

TEST(CategorizeFileTest, KnownPaths) {
  EXPECT_EQ(categorize_file("src/util.c"), FileCategory::Source);
  EXPECT_EQ(categorize_file("spec/test_helper.rb"), FileCategory::Test);
  EXPECT_EQ(categorize_file("config/database.yml"), FileCategory::Config);
  EXPECT_EQ(categorize_file("docs/logo.png"), FileCategory::Static);
  // Precedence: the test marker wins over extension rules.
  EXPECT_EQ(categorize_file("tests/helper.py"), FileCategory::Test);
  EXPECT_EQ(categorize_file("TESTS/config.yml"), FileCategory::Test);
  // Substring matching is deliberate: "conTEST" and "protest" count.
  EXPECT_EQ(categorize_file("contest.md"), FileCategory::Test);
  EXPECT_EQ(categorize_file(".travis.yml"), FileCategory::Config);
  EXPECT_EQ(categorize_file("Gemfile.lock"), FileCategory::Config);
  EXPECT_EQ(categorize_file("Makefile"), FileCategory::Static);
  EXPECT_EQ(categorize_file("README.md"), FileCategory::Static);
  EXPECT_EQ(categorize_file("index.html"), FileCategory::Source);
  EXPECT_EQ(categorize_file("app/styles/main.scss"), FileCategory::Source);
  EXPECT_EQ(categorize_file("views/show.html.ERB"), FileCategory::Source);
  EXPECT_EQ(categorize_file("run.SH"), FileCategory::Source);
}

TEST(CategorizeFileTest, PartitionIsTotalAndExclusive) {
  std::mt19937 rng(17);
  const std::vector<std::string> pieces = {"src",  "a",    "b.c", "x.yml",
                                           "t",    "es",   "t",   "img.png",
                                           "m.py", "l.js", "doc", "z"};
  for (int iter = 0; iter < 2000; ++iter) {
    std::string path;
    const int len = 1 + int(rng() % 4);
    for (int i = 0; i < len; ++i) {
      if (i) path += '/';
      path += pieces[rng() % pieces.size()];
    }
    const FileCategory cat = categorize_file(path);
    int matches = 0;
    for (FileCategory c : beliefbench::kAllCategories)
      if (c == cat) ++matches;
    EXPECT_EQ(matches, 1);
  }
}

TEST(CategorizeFileTest, PrefixInvariantUnlessTestIntroduced) {
  std::mt19937 rng(19);
  const std::vector<std::string> names = {"a.c",   "b.yml", "c.png", "d.py",
                                          "notes", "e.lock", "f.erb"};
  const std::vector<std::string> prefixes = {"src", "lib", "deep/nested",
                                             "tes", "t", "contrib"};
  const std::string marker = "test";
  for (int iter = 0; iter < 2000; ++iter) {
    const std::string& name = names[rng() % names.size()];
    const std::string prefixed =
        prefixes[rng() % prefixes.size()] + "/" + name;
    const bool name_has_marker =
        beliefbench::lower_ascii(name).find(marker) != std::string::npos;
    const bool prefixed_has_marker =
        beliefbench::lower_ascii(prefixed).find(marker) != std::string::npos;
    if (name_has_marker == prefixed_has_marker) {
      EXPECT_EQ(categorize_file(name), categorize_file(prefixed)) << prefixed;
    }
  }
}

TEST(BugfixFractionTest, ByDefinition) {
  const auto& ks = KeywordSet::defaults();
  std::vector<Msg> records = {{"fix crash"}, {"add docs"}, {"new feature"},
                              {"merge window"}};
  EXPECT_DOUBLE_EQ(bugfix_fraction(records, ks), 0.25);

  std::vector<Msg> all_fix = {{"fix"}, {"fix"}, {"fix"}};
  EXPECT_DOUBLE_EQ(bugfix_fraction(all_fix, ks), 1.0);

  std::vector<Msg> empty;
  EXPECT_THROW(bugfix_fraction(empty, ks), InputError);
}

TEST(CategoryRulesTest, ValidationRejectsBadExtensions) {
  CategoryRules r = CategoryRules::defaults();
  EXPECT_NO_THROW(r.validate());
  r.config_extensions.push_back("yml");
  EXPECT_THROW(r.validate(), InputError);
  r = CategoryRules::defaults();
  r.source_extensions.push_back(".CPP");
  EXPECT_THROW(r.validate(), InputError);
  r = CategoryRules::defaults();
  r.test_marker.clear();
  EXPECT_THROW(r.validate(), InputError);
}
