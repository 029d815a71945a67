#pragma once

// The three pipeline commands behind the beliefbench CLI. Each is a plain
// function over an options struct so tests can drive them directly.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "beliefbench/analyze.hpp"
#include "beliefbench/config.hpp"
#include "beliefbench/corpus.hpp"
#include "beliefbench/gitlog.hpp"
#include "beliefbench/report.hpp"

namespace beliefbench::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFatal = 1;       // bad input
inline constexpr int kExitAllFailed = 2;   // no project could be processed

struct ExtractOptions {
  std::string manifest_path;  // empty: built-in 46-project manifest
  std::string cache_dir;
  std::optional<std::int64_t> until;  // overrides per-entry pins when set
  std::size_t jobs = 1;
};

/// Acquire + extract every manifest project into the cache. Succeeds (exit 0)
/// when at least one project yields an extract.
inline int cmd_extract(const ExtractOptions& opts, std::ostream& log) {
  const std::vector<corpus::ProjectEntry> entries =
      opts.manifest_path.empty() ? corpus::default_manifest()
                                 : corpus::load_manifest(opts.manifest_path);
  if (entries.empty()) throw InputError("manifest has no entries");
  std::filesystem::create_directories(opts.cache_dir);

  struct Outcome {
    bool ok = false;
    std::string message;
    std::vector<gitlog::CommitRecord> records;
  };
  std::vector<Outcome> outcomes(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < entries.size();
         i = next.fetch_add(1)) {
      const auto& entry = entries[i];
      auto& outcome = outcomes[i];
      try {
        const auto repo = corpus::acquire(entry, opts.cache_dir);
        const auto pin = opts.until ? opts.until : entry.pin_until;
        std::vector<std::string> warnings;
        auto records = gitlog::extract_history(repo.string(), pin, &warnings);
        gitlog::write_extract(records,
                              corpus::extract_path(opts.cache_dir, entry.slug));
        outcome.ok = true;
        outcome.message = std::to_string(records.size()) + " commits";
        if (!warnings.empty())
          outcome.message += " (" + std::to_string(warnings.size()) + " warnings)";
        outcome.records = std::move(records);
      } catch (const std::exception& e) {
        outcome.message = e.what();
      }
    }
  };
  const std::size_t jobs = std::max<std::size_t>(opts.jobs, 1);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < std::min(jobs, entries.size()); ++t)
      threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  std::map<std::string, std::vector<gitlog::CommitRecord>> extracts;
  std::size_t failures = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    log << (outcomes[i].ok ? "  ok   " : "  FAIL ") << entries[i].slug << ": "
        << outcomes[i].message << "\n";
    if (outcomes[i].ok)
      extracts.emplace(entries[i].slug, std::move(outcomes[i].records));
    else
      ++failures;
  }
  if (extracts.empty()) {
    log << "all " << entries.size() << " projects failed\n";
    return kExitAllFailed;
  }

  const auto report = corpus::verify_corpus(entries, extracts);
  log << "commit-count drift vs expected:\n";
  for (const auto& p : report.projects) {
    log << "  " << p.slug << ": " << p.actual_commits;
    if (p.expected_commits)
      log << " / " << *p.expected_commits << " expected ("
          << report::detail::fixed(p.drift_pct.value_or(0), 1) << "%)";
    log << "\n";
  }
  log << "totals: " << report.totals.commits << " commits, "
      << report.totals.insertions << " insertions, " << report.totals.deletions
      << " deletions, " << report.totals.unique_authors << " authors, "
      << report.totals.file_entries << " file entries\n";
  if (opts.manifest_path.empty()) {
    const auto& ref = corpus::kReferenceTotals;
    log << "reference corpus totals: " << ref.commits << " commits, "
        << ref.insertions << " insertions, " << ref.deletions << " deletions, "
        << ref.unique_authors << " authors, " << ref.file_entries
        << " file entries\n";
  }
  if (failures > 0) log << failures << " project(s) failed\n";
  return kExitOk;
}

struct AnalyzeOptions {
  std::string cache_dir;
  std::string config_path;  // empty: frozen defaults
  std::string out_dir;
  std::size_t jobs = 1;
};

inline std::string slug_from_cache_key(std::string key) {
  const auto pos = key.find("__");
  if (pos != std::string::npos) key.replace(pos, 2, "/");
  return key;
}

/// Correlate every cached extract and write results.csv + summary.json.
inline int cmd_analyze(const AnalyzeOptions& opts, std::ostream& log) {
  config::RunConfig cfg;
  if (!opts.config_path.empty()) cfg = config::load_config(opts.config_path);
  cfg.validate();

  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(opts.cache_dir))
    for (const auto& e : std::filesystem::directory_iterator(opts.cache_dir))
      if (e.is_regular_file() && e.path().extension() == ".jsonl")
        files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw InputError("no extracts (*.jsonl) under " + opts.cache_dir);

  std::map<std::string, std::vector<gitlog::CommitRecord>> extracts;
  for (const auto& f : files) {
    auto records = gitlog::read_extract(f);
    if (records.empty()) {
      log << "  skip " << f.filename().string() << ": empty extract\n";
      continue;
    }
    extracts.emplace(slug_from_cache_key(f.stem().string()),
                     std::move(records));
  }
  if (extracts.empty()) throw InputError("every extract was empty");

  const auto analysis = pipeline::analyze_extracts(extracts, cfg, opts.jobs);
  report::emit_tables(analysis.reports, analysis.summaries, opts.out_dir,
                      analysis.totals, cfg.hash());
  log << "analyzed " << analysis.reports.size() << " project(s); wrote "
      << (std::filesystem::path(opts.out_dir) / "results.csv").string()
      << " and "
      << (std::filesystem::path(opts.out_dir) / "summary.json").string()
      << "\n";
  for (const auto& r : analysis.reports)
    log << "  " << r.project_id << ": " << r.commits << " commits, bugfix fraction "
        << report::detail::fixed(r.bugfix_fraction, 3) << "\n";
  return kExitOk;
}

struct ReportOptions {
  std::string summary_path;
  std::string out_dir;
};

/// Render boxplot SVGs and the discrepancy table from a summary document.
inline int cmd_report(const ReportOptions& opts, std::ostream& log) {
  const auto doc = report::read_summary(opts.summary_path);
  const auto written =
      report::emit_boxplots(doc.beliefs, opts.out_dir, doc.config_hash);
  const auto rows = report::discrepancy_table(doc);
  report::write_discrepancy_csv(
      rows, std::filesystem::path(opts.out_dir) / "discrepancy.csv",
      doc.config_hash);
  log << "wrote " << written.size() << " boxplots (descending median order):\n";
  for (const auto& p : written) log << "  " << p.filename().string() << "\n";
  log << format_discrepancy(rows);
  return kExitOk;
}

}  // namespace beliefbench::cli
