// beliefbench: mine git history for evidence on eight defect-proneness
// beliefs. Three composable stages with plain-file handoffs:
//
//   beliefbench extract  --cache DIR [--manifest PATH] [--until DATE] [--jobs N]
//   beliefbench analyze  --cache DIR --out DIR [--config PATH] [--jobs N]
//   beliefbench report   SUMMARY --out DIR

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "beliefbench/beliefbench.hpp"

namespace {

std::string default_cache() {
  const char* env = std::getenv("BELIEFBENCH_CACHE");
  return env && *env ? env : "cache";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"belief-vs-evidence mining over git repositories"};
  app.require_subcommand(1);

  beliefbench::cli::ExtractOptions extract_opts;
  extract_opts.cache_dir = default_cache();
  std::string until_str;
  auto* extract = app.add_subcommand("extract", "clone projects and cache commit extracts");
  extract->add_option("--manifest", extract_opts.manifest_path,
                      "project manifest (default: built-in 46-project corpus)");
  extract->add_option("--cache", extract_opts.cache_dir,
                      "cache directory (env BELIEFBENCH_CACHE)");
  extract->add_option("--until", until_str,
                      "pin extraction to YYYY-MM-DD or epoch seconds");
  extract->add_option("--jobs", extract_opts.jobs, "parallel acquisitions");

  beliefbench::cli::AnalyzeOptions analyze_opts;
  analyze_opts.cache_dir = default_cache();
  analyze_opts.out_dir = "out";
  auto* analyze = app.add_subcommand("analyze", "correlate beliefs against cached extracts");
  analyze->add_option("--cache", analyze_opts.cache_dir,
                      "cache directory with *.jsonl extracts");
  analyze->add_option("--config", analyze_opts.config_path,
                      "run configuration JSON (default: frozen defaults)");
  analyze->add_option("--out", analyze_opts.out_dir, "output directory");
  analyze->add_option("--jobs", analyze_opts.jobs, "parallel project analysis");

  beliefbench::cli::ReportOptions report_opts;
  report_opts.out_dir = "out";
  auto* report = app.add_subcommand("report", "render boxplots and the discrepancy table");
  report->add_option("summary", report_opts.summary_path, "summary.json from analyze")
      ->required();
  report->add_option("--out", report_opts.out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (extract->parsed()) {
      if (!until_str.empty())
        extract_opts.until = beliefbench::parse_timestamp(until_str);
      return beliefbench::cli::cmd_extract(extract_opts, std::cout);
    }
    if (analyze->parsed())
      return beliefbench::cli::cmd_analyze(analyze_opts, std::cout);
    if (report->parsed())
      return beliefbench::cli::cmd_report(report_opts, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "beliefbench: " << e.what() << "\n";
    return beliefbench::cli::kExitFatal;
  }
  return beliefbench::cli::kExitFatal;
}
