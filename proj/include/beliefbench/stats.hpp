#pragma once

// Pearson correlation, strength classification and distribution summaries.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "beliefbench/core.hpp"

namespace beliefbench::stats {

// Correlations above this are called strong.
inline constexpr double kStrongRho = 0.7;

/// Sample Pearson correlation of two equal-length vectors, computed with a
/// single-pass co-moment update. Undefined (nullopt) when n < 2 or either
/// vector has zero variance; zero-variance detection is exact.
inline std::optional<double> pearson(std::span<const double> xs,
                                     std::span<const double> ys) {
  if (xs.size() != ys.size())
    throw std::logic_error("pearson: length mismatch");
  const std::size_t n = xs.size();
  if (n < 2) return std::nullopt;
  double mean_x = 0, mean_y = 0, m2x = 0, m2y = 0, cxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double k = 1.0 / static_cast<double>(i + 1);
    const double dx = xs[i] - mean_x;
    const double dy = ys[i] - mean_y;
    mean_x += dx * k;
    mean_y += dy * k;
    m2x += dx * (xs[i] - mean_x);
    m2y += dy * (ys[i] - mean_y);
    cxy += dx * (ys[i] - mean_y);
  }
  if (m2x == 0.0 || m2y == 0.0) return std::nullopt;
  const double rho = cxy / std::sqrt(m2x * m2y);
  return std::clamp(rho, -1.0, 1.0);
}

enum class Strength { Strong, NotStrong, Undefined };

inline std::string to_string(Strength s) {
  switch (s) {
    case Strength::Strong: return "Strong";
    case Strength::NotStrong: return "NotStrong";
    case Strength::Undefined: return "Undefined";
  }
  return "?";
}

inline std::optional<Strength> strength_from_string(std::string_view s) {
  for (Strength v : {Strength::Strong, Strength::NotStrong, Strength::Undefined})
    if (to_string(v) == s) return v;
  return std::nullopt;
}

// Strong iff rho is defined and strictly above the threshold.
inline Strength classify_strength(std::optional<double> rho,
                                  double threshold = kStrongRho) {
  if (!rho) return Strength::Undefined;
  return *rho > threshold ? Strength::Strong : Strength::NotStrong;
}

// One correlation cell: (project, belief, category).
struct CorrelationResult {
  Belief belief = Belief::B1;
  FileCategory category = FileCategory::Source;
  std::string project_id;
  std::optional<double> rho;
  std::size_t n = 0;
  Strength strength = Strength::Undefined;

  bool operator==(const CorrelationResult&) const = default;
};

inline CorrelationResult correlate(Belief belief, FileCategory category,
                                   std::string project_id,
                                   std::span<const double> xs,
                                   std::span<const double> ys,
                                   double threshold = kStrongRho) {
  CorrelationResult r;
  r.belief = belief;
  r.category = category;
  r.project_id = std::move(project_id);
  r.rho = pearson(xs, ys);
  r.n = xs.size();
  r.strength = classify_strength(r.rho, threshold);
  return r;
}

inline double median_sorted(std::span<const double> sorted) {
  const std::size_t n = sorted.size();
  const std::size_t mid = n / 2;
  return n % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
}

inline std::optional<double> median(std::vector<double> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  return median_sorted(values);
}

struct Quartiles {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

// Median-of-halves (Tukey hinges): with odd n the median belongs to both
// halves.
inline Quartiles tukey_quartiles(std::vector<double> values) {
  if (values.empty()) throw std::logic_error("tukey_quartiles: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  std::span<const double> all(values);
  const std::size_t lower_len = n % 2 ? n / 2 + 1 : n / 2;
  Quartiles q;
  q.min = values.front();
  q.max = values.back();
  q.median = median_sorted(all);
  q.q1 = median_sorted(all.subspan(0, lower_len));
  q.q3 = median_sorted(all.subspan(n - lower_len, lower_len));
  return q;
}

struct DistributionSummary {
  Belief belief = Belief::B1;
  FileCategory category = FileCategory::Source;
  std::size_t count = 0;            // defined rho values
  std::size_t undefined_count = 0;  // cells whose rho is undefined
  std::optional<Quartiles> quartiles;
};

// Summarises the defined rho values of a (belief, category) group; undefined
// cells are counted, never folded into quartiles.
inline DistributionSummary summarize(std::span<const CorrelationResult> results) {
  if (results.empty()) throw std::logic_error("summarize: empty group");
  DistributionSummary s;
  s.belief = results.front().belief;
  s.category = results.front().category;
  std::vector<double> defined;
  for (const auto& r : results) {
    if (r.belief != s.belief || r.category != s.category)
      throw std::logic_error("summarize: mixed (belief, category) group");
    if (r.rho)
      defined.push_back(*r.rho);
    else
      ++s.undefined_count;
  }
  s.count = defined.size();
  if (!defined.empty()) s.quartiles = tukey_quartiles(std::move(defined));
  return s;
}

}  // namespace beliefbench::stats
