#pragma once

// Per-file histories folded from commit records, defect proneness D, and the
// eight belief metrics B1..B8.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "beliefbench/core.hpp"
#include "beliefbench/gitlog.hpp"
#include "beliefbench/labeler.hpp"

namespace beliefbench::metrics {

struct ChangeEvent {
  std::int64_t timestamp = 0;
  std::string author_id;
  std::uint64_t lines_added = 0;
  std::uint64_t lines_deleted = 0;
  bool is_bugfix = false;
};

struct FileHistory {
  std::string path;
  FileCategory category = FileCategory::Source;
  std::int64_t created_at = 0;  // timestamp of first event
  std::vector<ChangeEvent> events;  // ascending by timestamp
  std::map<std::string, std::uint64_t> per_author_added;
};

/// Folds sorted commit records into one history per non-Static path; each
/// event carries its commit's bug-fix label. Static paths are dropped.
inline std::map<std::string, FileHistory> build_histories(
    const std::vector<gitlog::CommitRecord>& records,
    const labeler::KeywordSet& keywords,
    const labeler::CategoryRules& rules = labeler::CategoryRules::defaults()) {
  std::map<std::string, FileHistory> histories;
  for (const auto& record : records) {
    const bool bugfix = labeler::classify_commit(record.message, keywords);
    for (const auto& change : record.changes) {
      const FileCategory category = labeler::categorize_file(change.path, rules);
      if (category == FileCategory::Static) continue;
      auto [it, inserted] = histories.try_emplace(change.path);
      FileHistory& h = it->second;
      if (inserted) {
        h.path = change.path;
        h.category = category;
        h.created_at = record.timestamp;
      }
      h.events.push_back({record.timestamp, record.author_id,
                          change.lines_added, change.lines_deleted, bugfix});
      h.per_author_added[record.author_id] += change.lines_added;
    }
  }
  return histories;
}

// D: number of bug-fixing commits touching the file.
inline std::uint64_t defect_proneness(const FileHistory& h) {
  std::uint64_t d = 0;
  for (const auto& e : h.events) d += e.is_bugfix ? 1 : 0;
  return d;
}

// B1: unique developers with a non-zero line change in some event.
inline std::uint64_t b1_developers(const FileHistory& h) {
  std::set<std::string_view> seen;
  for (const auto& e : h.events)
    if (e.lines_added + e.lines_deleted > 0) seen.insert(e.author_id);
  return seen.size();
}

// B2: total lines added.
inline std::uint64_t b2_added(const FileHistory& h) {
  std::uint64_t total = 0;
  for (const auto& e : h.events) total += e.lines_added;
  return total;
}

// B3: (creation time, seconds to first fix) — or, with two or more fixes,
// the interval between the two most recent fixes. None when never fixed.
inline std::optional<std::pair<std::int64_t, std::int64_t>> b3_pair(
    const FileHistory& h) {
  std::vector<std::int64_t> fix_times;
  for (const auto& e : h.events)
    if (e.is_bugfix) fix_times.push_back(e.timestamp);
  if (fix_times.empty()) return std::nullopt;
  const std::int64_t interval =
      fix_times.size() == 1
          ? fix_times.front() - h.created_at
          : fix_times[fix_times.size() - 1] - fix_times[fix_times.size() - 2];
  return std::make_pair(h.created_at, interval);
}

// B4: churn, lines added plus lines deleted.
inline std::uint64_t b4_loc(const FileHistory& h) {
  std::uint64_t total = 0;
  for (const auto& e : h.events) total += e.lines_added + e.lines_deleted;
  return total;
}

// B5: bug-fix counts in the first floor(n/2) events vs the remainder.
// Requires at least two events.
inline std::optional<std::pair<std::uint64_t, std::uint64_t>> b5_pair(
    const FileHistory& h) {
  const std::size_t n = h.events.size();
  if (n < 2) return std::nullopt;
  const std::size_t half = n / 2;
  std::uint64_t first = 0, second = 0;
  for (std::size_t i = 0; i < n; ++i)
    (i < half ? first : second) += h.events[i].is_bugfix ? 1 : 0;
  return std::make_pair(first, second);
}

// B6: number of commits touching the file.
inline std::uint64_t b6_commits(const FileHistory& h) { return h.events.size(); }

// B7: total lines deleted.
inline std::uint64_t b7_deleted(const FileHistory& h) {
  std::uint64_t total = 0;
  for (const auto& e : h.events) total += e.lines_deleted;
  return total;
}

// B8: percentage of the file's developers who authored strictly less than 5%
// of its added lines. Requires a non-zero added-line total.
inline std::optional<double> b8_minor_pct(const FileHistory& h) {
  std::uint64_t total_added = 0;
  for (const auto& [author, added] : h.per_author_added) total_added += added;
  if (total_added == 0) return std::nullopt;
  std::size_t minor = 0;
  // added/total < 5% checked exactly in integers (strict inequality).
  for (const auto& [author, added] : h.per_author_added)
    if (added * 20 < total_added) ++minor;
  return 100.0 * static_cast<double>(minor) /
         static_cast<double>(h.per_author_added.size());
}

// The paired (x, y) observations feeding one correlation cell.
struct BeliefSample {
  Belief belief = Belief::B1;
  FileCategory category = FileCategory::Source;
  std::vector<double> xs;
  std::vector<double> ys;
  std::size_t not_applicable = 0;  // defect-bearing files excluded per-belief

  std::size_t n() const { return xs.size(); }
};

// Metric value for the D-correlated beliefs (all but B3/B5).
inline double metric_value(Belief belief, const FileHistory& h) {
  switch (belief) {
    case Belief::B1: return static_cast<double>(b1_developers(h));
    case Belief::B2: return static_cast<double>(b2_added(h));
    case Belief::B4: return static_cast<double>(b4_loc(h));
    case Belief::B6: return static_cast<double>(b6_commits(h));
    case Belief::B7: return static_cast<double>(b7_deleted(h));
    case Belief::B8: return b8_minor_pct(h).value();
    default: throw std::logic_error("metric_value: paired belief");
  }
}

/// Builds one belief's (x, y) sample over a category. Zero-defect files (the
/// little set) never enter any sample; per-belief not-applicable files (B5
/// with fewer than two events, B8 with no added lines) are excluded and
/// counted.
inline BeliefSample assemble_samples(
    const std::map<std::string, FileHistory>& histories, Belief belief,
    FileCategory category) {
  BeliefSample sample;
  sample.belief = belief;
  sample.category = category;
  for (const auto& [path, h] : histories) {
    if (h.category != category) continue;
    if (defect_proneness(h) == 0) continue;  // little set
    switch (belief) {
      case Belief::B3: {
        const auto pair = b3_pair(h);  // present: the file has a fix
        sample.xs.push_back(static_cast<double>(pair->first));
        sample.ys.push_back(static_cast<double>(pair->second));
        break;
      }
      case Belief::B5: {
        const auto pair = b5_pair(h);
        if (!pair) {
          ++sample.not_applicable;
          break;
        }
        sample.xs.push_back(static_cast<double>(pair->first));
        sample.ys.push_back(static_cast<double>(pair->second));
        break;
      }
      case Belief::B8: {
        const auto pct = b8_minor_pct(h);
        if (!pct) {
          ++sample.not_applicable;
          break;
        }
        sample.xs.push_back(*pct);
        sample.ys.push_back(static_cast<double>(defect_proneness(h)));
        break;
      }
      default:
        sample.xs.push_back(metric_value(belief, h));
        sample.ys.push_back(static_cast<double>(defect_proneness(h)));
    }
  }
  return sample;
}

// Files with no recorded defect fixes in a category; they are reported, not
// correlated.
inline std::size_t little_set_count(
    const std::map<std::string, FileHistory>& histories, FileCategory category) {
  std::size_t count = 0;
  for (const auto& [path, h] : histories)
    if (h.category == category && defect_proneness(h) == 0) ++count;
  return count;
}

}  // namespace beliefbench::metrics
