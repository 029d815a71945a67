#include <gtest/gtest.h>

#include <fstream>

#include "beliefbench/config.hpp"
#include "repo_fixture.hpp"

using namespace beliefbench;
using beliefbench::config::RunConfig;
using beliefbench::config::load_config;
using testutil::TempDir;

TEST(RunConfigTest, DefaultsAreValidAndHashStable) {
  RunConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_DOUBLE_EQ(cfg.strong_rho, 0.7);
  EXPECT_EQ(cfg.quartile_convention, "tukey");
  ASSERT_TRUE(cfg.pin_until.has_value());
  EXPECT_EQ(format_utc_date(*cfg.pin_until), "2019-06-30");

  RunConfig other;
  EXPECT_EQ(cfg.hash(), other.hash());
  EXPECT_EQ(cfg.hash().size(), 16u);
  other.keywords.stems.push_back("zzz");
  EXPECT_NE(cfg.hash(), other.hash());
}

TEST(RunConfigTest, ValidationCatchesBadFields) {
  RunConfig cfg;
  cfg.strong_rho = 1.0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = RunConfig{};
  cfg.quartile_convention = "linear";
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = RunConfig{};
  cfg.keywords.stems.clear();
  EXPECT_THROW(cfg.validate(), InputError);
}

TEST(LoadConfigTest, OverridesAndDefaults) {
  TempDir tmp;
  const auto path = tmp.path() / "cfg.json";
  {
    std::ofstream out(path);
    out << R"({"strong_rho": 0.6, "pin_until": "2018-01-31",)"
        << R"( "keywords": ["fix", "bug"]})";
  }
  const auto cfg = load_config(path);
  EXPECT_DOUBLE_EQ(cfg.strong_rho, 0.6);
  EXPECT_EQ(format_utc_date(*cfg.pin_until), "2018-01-31");
  EXPECT_EQ(cfg.keywords.stems, (std::vector<std::string>{"fix", "bug"}));
  // Untouched fields keep the frozen defaults.
  EXPECT_EQ(cfg.rules.test_marker, "test");
  EXPECT_EQ(cfg.quartile_convention, "tukey");
}

TEST(LoadConfigTest, RejectsUnknownKeysAndBadValues) {
  TempDir tmp;
  const auto path = tmp.path() / "cfg.json";
  {
    std::ofstream out(path);
    out << R"({"keyword": ["fix"]})";  // typo
  }
  EXPECT_THROW(load_config(path), InputError);
  {
    std::ofstream out(path, std::ios::trunc);
    out << R"({"quartile_convention": "exclusive"})";
  }
  EXPECT_THROW(load_config(path), InputError);
  {
    std::ofstream out(path, std::ios::trunc);
    out << "{nope";
  }
  EXPECT_THROW(load_config(path), ParseError);
  EXPECT_THROW(load_config(tmp.path() / "absent.json"), InputError);
}

TEST(LoadConfigTest, NullPinDisablesPinning) {
  TempDir tmp;
  const auto path = tmp.path() / "cfg.json";
  {
    std::ofstream out(path);
    out << R"({"pin_until": null})";
  }
  EXPECT_FALSE(load_config(path).pin_until.has_value());
}
