#include <gtest/gtest.h>

#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "beliefbench/stats.hpp"

using beliefbench::Belief;
using beliefbench::FileCategory;
using namespace beliefbench::stats;

namespace {

// Independent two-pass oracle: means first, then deviation sums. This is the
// written-out estimator the implementation must match.
std::optional<double> pearson_two_pass(const std::vector<double>& xs,
                                       const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

TEST(PearsonTest, PerfectLinearRelations) {
  std::vector<double> xs = {1, 2, 3};
  std::vector<double> up = {2, 4, 6};
  std::vector<double> down = {3, 2, 1};
  ASSERT_TRUE(pearson(xs, up).has_value());
  EXPECT_NEAR(*pearson(xs, up), 1.0, 1e-12);
  EXPECT_NEAR(*pearson(xs, down), -1.0, 1e-12);
}

TEST(PearsonTest, FrozenDerivedValue) {
  // Oracle evaluation of {1,2,3,4} vs {1,3,2,5}: 5.5 / sqrt(5 * 8.75).
  std::vector<double> xs = {1, 2, 3, 4};
  std::vector<double> ys = {1, 3, 2, 5};
  const double expected = 5.5 / std::sqrt(43.75);
  const auto rho = pearson(xs, ys);
  ASSERT_TRUE(rho.has_value());
  EXPECT_NEAR(*rho, expected, 1e-12);
  EXPECT_NEAR(*rho, 0.8315, 1e-3);
}

TEST(PearsonTest, UndefinedCases) {
  std::vector<double> flat = {5, 5, 5};
  std::vector<double> ys = {1, 2, 3};
  EXPECT_FALSE(pearson(flat, ys).has_value());
  EXPECT_FALSE(pearson(ys, flat).has_value());
  std::vector<double> one = {1};
  EXPECT_FALSE(pearson(one, one).has_value());
  std::vector<double> none;
  EXPECT_FALSE(pearson(none, none).has_value());
}

TEST(PearsonTest, LengthMismatchIsProgrammingError) {
  std::vector<double> a = {1, 2, 3};
  std::vector<double> b = {1, 2};
  EXPECT_THROW(pearson(a, b), std::logic_error);
}

TEST(PearsonTest, AgreesWithTwoPassOracle) {
  std::mt19937_64 rng(42);
  auto uniform = [&rng]() { return double(rng() >> 11) * 0x1p-53; };
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t n = 2 + rng() % 199;
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = uniform() * 1000.0 - 500.0;
      ys[i] = 0.3 * xs[i] + uniform() * 200.0;
    }
    const auto got = pearson(xs, ys);
    const auto want = pearson_two_pass(xs, ys);
    ASSERT_EQ(got.has_value(), want.has_value());
    if (got) {
      EXPECT_NEAR(*got, *want, 1e-12);
    }
  }
}

TEST(PearsonTest, SymmetryAndAffineInvariance) {
  std::mt19937_64 rng(43);
  auto uniform = [&rng]() { return double(rng() >> 11) * 0x1p-53; };
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = 2 + rng() % 50;
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = uniform() * 10.0;
      ys[i] = uniform() * 10.0 + 0.5 * xs[i];
    }
    const auto fwd = pearson(xs, ys);
    const auto rev = pearson(ys, xs);
    ASSERT_EQ(fwd.has_value(), rev.has_value());
    if (fwd) {
      EXPECT_NEAR(*fwd, *rev, 1e-12);
    }

    const double a = uniform() * 4.0 - 2.0;
    const double c = uniform() * 4.0 - 2.0;
    if (std::abs(a) < 1e-3 || std::abs(c) < 1e-3 || !fwd) continue;
    std::vector<double> axs(n), cys(n);
    for (std::size_t i = 0; i < n; ++i) {
      axs[i] = a * xs[i] + 3.25;
      cys[i] = c * ys[i] - 1.5;
    }
    const auto scaled = pearson(axs, cys);
    ASSERT_TRUE(scaled.has_value());
    const double sign = (a * c) > 0 ? 1.0 : -1.0;
    EXPECT_NEAR(*scaled, sign * *fwd, 1e-9);
  }
}

TEST(StrengthTest, StrictThreshold) {
  EXPECT_EQ(classify_strength(0.71), Strength::Strong);
  EXPECT_EQ(classify_strength(0.70), Strength::NotStrong);
  EXPECT_EQ(classify_strength(1.0), Strength::Strong);
  EXPECT_EQ(classify_strength(-0.9), Strength::NotStrong);
  EXPECT_EQ(classify_strength(std::nullopt), Strength::Undefined);
}

namespace {

CorrelationResult cell(std::optional<double> rho, const char* project = "p") {
  CorrelationResult r;
  r.belief = Belief::B6;
  r.category = FileCategory::Source;
  r.project_id = project;
  r.rho = rho;
  r.n = rho ? 10 : 0;
  r.strength = classify_strength(rho);
  return r;
}

}  // namespace

TEST(SummarizeTest, SingleValue) {
  std::vector<CorrelationResult> results = {cell(0.1)};
  const auto s = summarize(results);
  ASSERT_TRUE(s.quartiles.has_value());
  EXPECT_DOUBLE_EQ(s.quartiles->min, 0.1);
  EXPECT_DOUBLE_EQ(s.quartiles->q1, 0.1);
  EXPECT_DOUBLE_EQ(s.quartiles->median, 0.1);
  EXPECT_DOUBLE_EQ(s.quartiles->q3, 0.1);
  EXPECT_DOUBLE_EQ(s.quartiles->max, 0.1);
  EXPECT_EQ(s.count, 1u);
  EXPECT_EQ(s.undefined_count, 0u);
}

TEST(SummarizeTest, TukeyHingesOnThreeValues) {
  // Hand evaluation: with odd n the median joins both halves, so the hinges
  // of {0, 0.5, 1} are 0.25 and 0.75.
  std::vector<CorrelationResult> results = {cell(0.0, "a"), cell(0.5, "b"),
                                            cell(1.0, "c")};
  const auto s = summarize(results);
  ASSERT_TRUE(s.quartiles.has_value());
  EXPECT_DOUBLE_EQ(s.quartiles->q1, 0.25);
  EXPECT_DOUBLE_EQ(s.quartiles->median, 0.5);
  EXPECT_DOUBLE_EQ(s.quartiles->q3, 0.75);
  EXPECT_DOUBLE_EQ(s.quartiles->min, 0.0);
  EXPECT_DOUBLE_EQ(s.quartiles->max, 1.0);
}

TEST(SummarizeTest, QuartilesAreOrdered) {
  std::mt19937_64 rng(47);
  auto uniform = [&rng]() { return double(rng() >> 11) * 0x1p-53; };
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<CorrelationResult> results;
    const std::size_t n = 1 + rng() % 20;
    for (std::size_t i = 0; i < n; ++i)
      results.push_back(cell(uniform() * 2.0 - 1.0));
    const auto s = summarize(results);
    ASSERT_TRUE(s.quartiles.has_value());
    const auto& q = *s.quartiles;
    EXPECT_LE(q.min, q.q1);
    EXPECT_LE(q.q1, q.median);
    EXPECT_LE(q.median, q.q3);
    EXPECT_LE(q.q3, q.max);
  }
}

TEST(SummarizeTest, AllUndefined) {
  std::vector<CorrelationResult> results = {cell(std::nullopt),
                                            cell(std::nullopt)};
  const auto s = summarize(results);
  EXPECT_EQ(s.count, 0u);
  EXPECT_EQ(s.undefined_count, 2u);
  EXPECT_FALSE(s.quartiles.has_value());
}

TEST(SummarizeTest, MixedGroupIsProgrammingError) {
  auto a = cell(0.5);
  auto b = cell(0.6);
  b.category = FileCategory::Test;
  std::vector<CorrelationResult> results = {a, b};
  EXPECT_THROW(summarize(results), std::logic_error);
}
