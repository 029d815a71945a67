#pragma once

// Pipeline core shared by the CLI and the test suites: per-project analysis
// and cross-project summarisation.

#include <atomic>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "beliefbench/config.hpp"
#include "beliefbench/metrics.hpp"
#include "beliefbench/report.hpp"
#include "beliefbench/stats.hpp"

namespace beliefbench::pipeline {

/// Full 8x3 correlation grid for one project. Records must be sorted as
/// produced by extract_history and non-empty.
inline report::ProjectReport analyze_project(
    const std::string& project_id,
    const std::vector<gitlog::CommitRecord>& records,
    const config::RunConfig& cfg) {
  report::ProjectReport pr;
  pr.project_id = project_id;
  pr.bugfix_fraction = labeler::bugfix_fraction(records, cfg.keywords);
  pr.commits = records.size();
  for (const auto& r : records)
    for (const auto& c : r.changes) {
      pr.insertions += c.lines_added;
      pr.deletions += c.lines_deleted;
    }

  const auto histories = metrics::build_histories(records, cfg.keywords, cfg.rules);
  for (FileCategory cat : kAnalyzedCategories)
    pr.little_sets[cat] = metrics::little_set_count(histories, cat);
  for (Belief belief : kAllBeliefs)
    for (FileCategory cat : kAnalyzedCategories) {
      const auto sample = metrics::assemble_samples(histories, belief, cat);
      pr.cells.push_back(stats::correlate(belief, cat, project_id, sample.xs,
                                          sample.ys, cfg.strong_rho));
      if (sample.not_applicable > 0)
        pr.not_applicable[belief][cat] = sample.not_applicable;
    }
  return pr;
}

struct AnalysisResult {
  std::vector<report::ProjectReport> reports;           // ordered by project id
  std::vector<stats::DistributionSummary> summaries;    // 8 beliefs x C/T/S
  corpus::CorpusTotals totals;
};

/// Analyzes every extract (parallel across projects when jobs > 1) and folds
/// the per-cell results into distribution summaries. Output is independent
/// of the job count.
inline AnalysisResult analyze_extracts(
    const std::map<std::string, std::vector<gitlog::CommitRecord>>& extracts,
    const config::RunConfig& cfg, std::size_t jobs = 1) {
  if (extracts.empty()) throw InputError("analyze_extracts: no extracts");

  std::vector<const std::pair<const std::string,
                              std::vector<gitlog::CommitRecord>>*> items;
  for (const auto& kv : extracts) {
    if (kv.second.empty())
      throw InputError("analyze_extracts: empty extract for " + kv.first);
    items.push_back(&kv);
  }

  AnalysisResult result;
  result.reports.resize(items.size());
  if (jobs <= 1) jobs = 1;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < items.size();
         i = next.fetch_add(1))
      result.reports[i] = analyze_project(items[i]->first, items[i]->second, cfg);
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < std::min(jobs, items.size()); ++t)
      threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  // Cross-project summaries per (belief, category), in grid order.
  for (Belief belief : kAllBeliefs)
    for (FileCategory cat : kAnalyzedCategories) {
      std::vector<stats::CorrelationResult> group;
      for (const auto& r : result.reports)
        for (const auto& cell : r.cells)
          if (cell.belief == belief && cell.category == cat)
            group.push_back(cell);
      result.summaries.push_back(stats::summarize(group));
    }

  std::set<std::string> authors;
  for (const auto* item : items) {
    result.totals.commits += item->second.size();
    for (const auto& r : item->second) {
      authors.insert(r.author_id);
      for (const auto& c : r.changes) {
        result.totals.insertions += c.lines_added;
        result.totals.deletions += c.lines_deleted;
        ++result.totals.file_entries;
      }
    }
  }
  result.totals.unique_authors = authors.size();
  return result;
}

}  // namespace beliefbench::pipeline
