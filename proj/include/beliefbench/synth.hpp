#pragma once

// Synthetic commit histories with optionally planted metric<->defect
// relationships, and a brute-force metrics oracle. The oracle recomputes
// everything by naive full scans and deliberately shares no code with the
// metrics module.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "beliefbench/core.hpp"
#include "beliefbench/gitlog.hpp"
#include "beliefbench/labeler.hpp"

namespace beliefbench::synth {

struct SynthSpec {
  std::uint64_t seed = 1;
  std::map<FileCategory, std::size_t> n_files = {
      {FileCategory::Source, 10},
      {FileCategory::Test, 4},
      {FileCategory::Config, 4},
      {FileCategory::Static, 2}};
  std::size_t n_commits = 100;  // free mode only; planted mode sizes by files
  std::map<Belief, double> target_rho;  // at most one planted belief
  double bugfix_rate = 0.3;
  std::size_t author_pool = 5;
};

namespace detail {

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1p-53;
}

// Box-Muller on explicit uniforms; std::normal_distribution is not
// reproducible across standard libraries.
inline double normal01(std::mt19937_64& rng) {
  const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

inline std::pair<double, double> correlated_pair(std::mt19937_64& rng,
                                                 double rho) {
  const double z = normal01(rng);
  const double w = rho * z + std::sqrt(1.0 - rho * rho) * normal01(rng);
  return {z, w};
}

inline std::string commit_id_for(std::uint64_t n) {
  char buf[41];
  std::snprintf(buf, sizeof buf, "%040llx", static_cast<unsigned long long>(n));
  return buf;
}

inline const char* fix_message(std::mt19937_64& rng) {
  static const std::array<const char*, 4> pool = {
      "fix crash in loader", "patch memory leak", "correct logic error",
      "bug repair in parser"};
  return pool[rng() % pool.size()];
}

inline const char* routine_message(std::mt19937_64& rng) {
  static const std::array<const char*, 5> pool = {
      "add widget", "update documentation", "rename handler",
      "introduce sample data", "tidy imports"};
  return pool[rng() % pool.size()];
}

inline std::vector<std::string> category_paths(FileCategory cat, std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    switch (cat) {
      case FileCategory::Source:
        out.push_back("src/module" + std::to_string(i) + ".c");
        break;
      case FileCategory::Test:
        out.push_back("tests/case" + std::to_string(i) + ".rb");
        break;
      case FileCategory::Config:
        out.push_back("settings/opt" + std::to_string(i) + ".yml");
        break;
      case FileCategory::Static:
        out.push_back(i % 2 == 0 ? "assets/img" + std::to_string(i) + ".png"
                                 : "notes/doc" + std::to_string(i) + ".txt");
        break;
    }
  }
  return out;
}

inline std::int64_t lround_clamped(double v, std::int64_t lo, std::int64_t hi) {
  const auto r = static_cast<std::int64_t>(std::llround(v));
  return std::clamp(r, lo, hi);
}

// One planted file: its events in file-local order.
struct PlantedFile {
  std::string path;
  struct Event {
    std::int64_t ts_override = -1;  // <0: take the global clock
    std::uint64_t added = 0, deleted = 0;
    bool bugfix = false;
    std::string author;
  };
  std::vector<Event> events;
};

// Couples one belief's metric with defect placements through a bivariate
// normal latent pair, then discretises.
inline PlantedFile plant_file(std::mt19937_64& rng, Belief belief, double rho,
                              double bugfix_rate, const std::string& path,
                              std::size_t file_index) {
  const auto [z, w] = correlated_pair(rng, rho);
  PlantedFile file;
  file.path = path;
  const std::string author = "dev" + std::to_string(rng() % 4) + "@synth";
  auto push = [&](std::uint64_t add, std::uint64_t del, bool fixup,
                  const std::string& who = "", std::int64_t ts = -1) {
    file.events.push_back({ts, add, del, fixup, who.empty() ? author : who});
  };

  switch (belief) {
    case Belief::B6: {  // commit count vs D
      const auto n = lround_clamped(30.0 + 8.0 * z, 2, 1000);
      const double mu_d = std::max(2.0, bugfix_rate * 30.0);
      const auto d = lround_clamped(mu_d + 3.0 * w, 1, n);
      for (std::int64_t i = 0; i < n; ++i)
        push(1 + rng() % 5, rng() % 3, i < d);
      break;
    }
    case Belief::B1: {  // developer count vs D
      const auto authors = lround_clamped(12.0 + 3.0 * z, 2, 64);
      const auto d = lround_clamped(5.0 + 1.5 * w, 1, authors);
      for (std::int64_t i = 0; i < authors; ++i)
        push(1 + rng() % 5, 0, i < d,
             "f" + std::to_string(file_index) + "a" + std::to_string(i));
      break;
    }
    case Belief::B2:    // added lines vs D
    case Belief::B7:    // deleted lines vs D
    case Belief::B4: {  // churn vs D
      const std::int64_t n = 12;
      const auto total = lround_clamped(400.0 + 90.0 * z, 1, 100000);
      const auto d = lround_clamped(4.0 + 1.5 * w, 1, n);
      for (std::int64_t i = 0; i < n; ++i) {
        const auto share =
            static_cast<std::uint64_t>(total / n + (i == 0 ? total % n : 0));
        if (belief == Belief::B2)
          push(share, rng() % 3, i < d);
        else if (belief == Belief::B7)
          push(rng() % 3, share, i < d);
        else
          push(share / 2, share - share / 2, i < d);
      }
      break;
    }
    case Belief::B8: {  // minor-contributor percentage vs D
      const std::int64_t authors = 10;
      const auto minors = lround_clamped(4.5 + 2.0 * z, 0, authors - 1);
      const auto d = lround_clamped(4.0 + 1.5 * w, 1, authors);
      const std::uint64_t total = 1000;
      const std::uint64_t major_share =
          (total - static_cast<std::uint64_t>(minors)) /
          static_cast<std::uint64_t>(authors - minors);
      for (std::int64_t i = 0; i < authors; ++i)
        push(i < minors ? 1 : major_share, 0, i < d,
             "f" + std::to_string(file_index) + "a" + std::to_string(i));
      break;
    }
    case Belief::B5: {  // fixes in first half vs second half
      const auto d1 = lround_clamped(3.0 + 1.2 * z, 0, 50);
      const auto d2 = lround_clamped(3.0 + 1.2 * w, 0, 50);
      const std::int64_t n = 2 * std::max({d1, d2, std::int64_t(1)}) + 2;
      const std::int64_t half = n / 2;
      for (std::int64_t i = 0; i < n; ++i)
        push(1 + rng() % 4, rng() % 2,
             i < half ? i < d1 : (i - half) < d2);
      break;
    }
    case Belief::B3: {  // creation time vs time-to-first-fix
      const std::int64_t day = 86400;
      const std::int64_t t0 = 1'000'000'000;
      const std::int64_t created =
          t0 + lround_clamped((500.0 + 100.0 * z) * day, day, 2000 * day);
      const std::int64_t interval =
          lround_clamped((100.0 + 30.0 * w) * day, 60, 4000 * day);
      push(5 + rng() % 20, 0, false, "", created);
      push(1 + rng() % 5, 1, true, "", created + interval);
      break;
    }
  }
  return file;
}

}  // namespace detail

inline void validate(const SynthSpec& spec) {
  if (spec.n_commits < 1) throw GenerationError("n_commits must be >= 1");
  if (spec.bugfix_rate < 0.0 || spec.bugfix_rate > 1.0)
    throw GenerationError("bugfix_rate must lie in [0, 1]");
  if (spec.author_pool < 1) throw GenerationError("author_pool must be >= 1");
  if (spec.target_rho.size() > 1)
    throw GenerationError("at most one planted belief per spec");
  for (const auto& [belief, rho] : spec.target_rho) {
    if (rho < -1.0 || rho > 1.0)
      throw GenerationError("target_rho must lie in [-1, 1]");
    if (spec.bugfix_rate == 0.0)
      throw GenerationError(
          "unsatisfiable: planted correlation requires bugfix_rate > 0");
  }
}

/// Deterministic function of the spec. Without targets, emits n_commits
/// multi-file commits with random churn. With one planted belief, files'
/// metric values and defect placements are co-generated from a correlated
/// latent pair so the realized sample correlation approaches the target
/// (within ~0.1 for 200+ files).
inline std::vector<gitlog::CommitRecord> generate(const SynthSpec& spec) {
  using namespace detail;
  validate(spec);
  std::mt19937_64 rng(spec.seed);
  std::vector<gitlog::CommitRecord> records;

  if (spec.target_rho.empty()) {
    std::vector<std::pair<std::string, FileCategory>> paths;
    for (const auto& [cat, count] : spec.n_files)
      for (auto& p : category_paths(cat, count)) paths.emplace_back(p, cat);
    if (paths.empty()) throw GenerationError("no files to generate");

    for (std::size_t i = 0; i < spec.n_commits; ++i) {
      gitlog::CommitRecord r;
      r.commit_id = commit_id_for(i);
      r.author_id = "dev" + std::to_string(rng() % spec.author_pool) + "@synth";
      r.timestamp = 1'000'000'000 + static_cast<std::int64_t>(i) * 60;
      const bool bugfix = uniform01(rng) < spec.bugfix_rate;
      r.message = bugfix ? fix_message(rng) : routine_message(rng);
      const std::size_t k = 1 + rng() % std::min<std::size_t>(5, paths.size());
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t pick = j + rng() % (paths.size() - j);
        std::swap(paths[j], paths[pick]);
        const auto& [path, cat] = paths[j];
        gitlog::FileChange c;
        c.path = path;
        if (cat == FileCategory::Static && path.ends_with(".png")) {
          c.is_binary = true;
        } else {
          c.lines_added = rng() % 50;
          c.lines_deleted = rng() % 30;
        }
        r.changes.push_back(std::move(c));
      }
      records.push_back(std::move(r));
    }
  } else {
    const auto [belief, rho] = *spec.target_rho.begin();
    std::vector<PlantedFile> files;
    std::size_t file_index = 0;
    for (const auto& [cat, count] : spec.n_files) {
      if (cat == FileCategory::Static) continue;
      for (const auto& path : category_paths(cat, count))
        files.push_back(
            plant_file(rng, belief, rho, spec.bugfix_rate, path, file_index++));
    }
    if (files.empty()) throw GenerationError("no files to generate");

    std::int64_t clock = 1'000'000'000;
    std::uint64_t id = 0;
    for (const auto& file : files) {
      for (const auto& e : file.events) {
        gitlog::CommitRecord r;
        r.commit_id = commit_id_for(id++);
        r.author_id = e.author;
        r.timestamp = e.ts_override >= 0 ? e.ts_override : (clock += 60);
        r.message = e.bugfix ? fix_message(rng) : routine_message(rng);
        r.changes.push_back({file.path, e.added, e.deleted, false});
        records.push_back(std::move(r));
      }
    }
  }

  std::sort(records.begin(), records.end(),
            [](const gitlog::CommitRecord& a, const gitlog::CommitRecord& b) {
              return a.timestamp != b.timestamp ? a.timestamp < b.timestamp
                                                : a.commit_id < b.commit_id;
            });
  return records;
}

// --- brute-force oracle ---

struct OracleFileMetrics {
  FileCategory category = FileCategory::Source;
  std::uint64_t d = 0;
  std::uint64_t b1 = 0;
  std::uint64_t b2 = 0;
  std::uint64_t b4 = 0;
  std::uint64_t b6 = 0;
  std::uint64_t b7 = 0;
  std::optional<std::pair<std::int64_t, std::int64_t>> b3;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> b5;
  std::optional<double> b8;
};

/// Recomputes D and every belief metric for each non-Static path by scanning
/// the full record list per file.
inline std::map<std::string, OracleFileMetrics> oracle_metrics(
    std::vector<gitlog::CommitRecord> records,
    const labeler::KeywordSet& keywords = labeler::KeywordSet::defaults(),
    const labeler::CategoryRules& rules = labeler::CategoryRules::defaults()) {
  std::sort(records.begin(), records.end(),
            [](const gitlog::CommitRecord& a, const gitlog::CommitRecord& b) {
              return a.timestamp != b.timestamp ? a.timestamp < b.timestamp
                                                : a.commit_id < b.commit_id;
            });

  std::map<std::string, FileCategory> paths;
  for (const auto& r : records)
    for (const auto& c : r.changes) {
      const auto cat = labeler::categorize_file(c.path, rules);
      if (cat != FileCategory::Static) paths.emplace(c.path, cat);
    }

  std::map<std::string, OracleFileMetrics> out;
  for (const auto& [path, category] : paths) {
    OracleFileMetrics m;
    m.category = category;

    // D: bug-fixing commits touching the path.
    for (const auto& r : records)
      if (labeler::classify_commit(r.message, keywords))
        for (const auto& c : r.changes)
          if (c.path == path) ++m.d;

    // B1: authors with a non-zero change.
    std::set<std::string> movers;
    for (const auto& r : records)
      for (const auto& c : r.changes)
        if (c.path == path && c.lines_added + c.lines_deleted > 0)
          movers.insert(r.author_id);
    m.b1 = movers.size();

    // B2 / B7 / B4 / B6.
    for (const auto& r : records)
      for (const auto& c : r.changes)
        if (c.path == path) {
          m.b2 += c.lines_added;
          m.b7 += c.lines_deleted;
          m.b4 += c.lines_added + c.lines_deleted;
          ++m.b6;
        }

    // B3: creation time and fix timing.
    std::int64_t created = 0;
    bool first = true;
    std::vector<std::int64_t> fixes;
    for (const auto& r : records)
      for (const auto& c : r.changes)
        if (c.path == path) {
          if (first) {
            created = r.timestamp;
            first = false;
          }
          if (labeler::classify_commit(r.message, keywords))
            fixes.push_back(r.timestamp);
        }
    if (!fixes.empty()) {
      const std::int64_t y = fixes.size() == 1
                                 ? fixes[0] - created
                                 : fixes.back() - fixes[fixes.size() - 2];
      m.b3 = std::make_pair(created, y);
    }

    // B5: fixes per half, first half holding floor(n/2) events.
    std::vector<bool> fix_flags;
    for (const auto& r : records)
      for (const auto& c : r.changes)
        if (c.path == path)
          fix_flags.push_back(labeler::classify_commit(r.message, keywords));
    if (fix_flags.size() >= 2) {
      std::uint64_t lo = 0, hi = 0;
      for (std::size_t i = 0; i < fix_flags.size(); ++i)
        (i < fix_flags.size() / 2 ? lo : hi) += fix_flags[i] ? 1 : 0;
      m.b5 = std::make_pair(lo, hi);
    }

    // B8: share of authors below the strict 5% ownership line.
    std::map<std::string, std::uint64_t> added_by;
    for (const auto& r : records)
      for (const auto& c : r.changes)
        if (c.path == path) added_by[r.author_id] += c.lines_added;
    std::uint64_t total_added = 0;
    for (const auto& [who, n] : added_by) total_added += n;
    if (total_added > 0) {
      std::size_t minors = 0;
      for (const auto& [who, n] : added_by)
        if (n * 20 < total_added) ++minors;
      m.b8 = 100.0 * double(minors) / double(added_by.size());
    }

    out.emplace(path, std::move(m));
  }
  return out;
}

}  // namespace beliefbench::synth
