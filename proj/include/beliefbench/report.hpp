#pragma once

// Result emission: results.csv, summary.json, per-belief boxplot SVGs and
// the agreement-vs-evidence discrepancy table.

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "beliefbench/core.hpp"
#include "beliefbench/corpus.hpp"
#include "beliefbench/stats.hpp"

namespace beliefbench::report {

struct BeliefMeta {
  Belief belief;
  const char* statement;
  int agree_pct;
};

// Survey roster: statement text and percentage of practitioners endorsing
// each belief, in descending agreement order.
inline constexpr std::array<BeliefMeta, 8> kBeliefMeta = {{
    {Belief::B1, "Files changed by more developers are more buggy.", 64},
    {Belief::B2, "A file with more added lines is more bug-prone.", 61},
    {Belief::B3, "Recently created files tend to be buggy.", 52},
    {Belief::B4, "A file with more Lines of Code (LOC) is more bug-prone.", 48},
    {Belief::B5, "Files with more fixed bugs are more bug-prone.", 48},
    {Belief::B6, "A file with more commits is more bug-prone.", 46},
    {Belief::B7, "A file with more removed lines is more bug-prone.", 35},
    {Belief::B8,
     "Files with fewer lines contributed by their owners (who contribute "
     "most changes) are more bug-prone.",
     30},
}};

inline const BeliefMeta& belief_meta(Belief b) {
  for (const auto& m : kBeliefMeta)
    if (m.belief == b) return m;
  throw std::logic_error("belief_meta: unknown belief");
}

struct ProjectReport {
  std::string project_id;
  double bugfix_fraction = 0.0;
  std::uint64_t commits = 0;
  std::uint64_t insertions = 0;
  std::uint64_t deletions = 0;
  std::vector<stats::CorrelationResult> cells;  // 8 beliefs x C/T/S
  std::map<FileCategory, std::size_t> little_sets;
  std::map<Belief, std::map<FileCategory, std::size_t>> not_applicable;
};

// Median of every defined rho a belief produced, across categories and
// projects. This is the pooled median used for ordering and ranking.
inline std::optional<double> pooled_median(
    const std::vector<ProjectReport>& reports, Belief belief) {
  std::vector<double> values;
  for (const auto& r : reports)
    for (const auto& cell : r.cells)
      if (cell.belief == belief && cell.rho) values.push_back(*cell.rho);
  return stats::median(std::move(values));
}

// --- results.csv ---

inline constexpr const char* kResultsHeader =
    "project,belief,category,n,rho,strength";

/// Writes one row per populated cell (n >= 1); undefined rho prints as an
/// empty field.
inline void write_results_csv(const std::vector<ProjectReport>& reports,
                              const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out << kResultsHeader << '\n';
  for (const auto& r : reports)
    for (const auto& cell : r.cells) {
      if (cell.n == 0) continue;
      out << r.project_id << ',' << to_string(cell.belief) << ','
          << to_string(cell.category) << ',' << cell.n << ','
          << (cell.rho ? format_double(*cell.rho) : "") << ','
          << to_string(cell.strength) << '\n';
    }
  if (!out.flush()) throw InputError("write failed: " + path.string());
}

inline std::vector<stats::CorrelationResult> parse_results_csv(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError(path.string() + ":" + std::to_string(lineno) + ": " + why);
  };
  if (!std::getline(in, line) || line != kResultsHeader)
    throw ParseError(path.string() + ": bad or missing header");
  lineno = 1;
  std::vector<stats::CorrelationResult> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = gitlog::detail::split(line, ',');
    if (fields.size() != 6) throw fail("expected 6 fields");
    stats::CorrelationResult r;
    r.project_id = fields[0];
    const auto belief = belief_from_string(fields[1]);
    const auto category = category_from_string(fields[2]);
    const auto strength = stats::strength_from_string(fields[5]);
    if (!belief || !category || !strength) throw fail("bad enum field");
    r.belief = *belief;
    r.category = *category;
    r.strength = *strength;
    try {
      r.n = std::stoull(fields[3]);
      if (!fields[4].empty()) r.rho = std::stod(fields[4]);
    } catch (const std::exception& e) {
      throw fail(e.what());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

// --- summary.json ---

struct CategorySummary {
  FileCategory category = FileCategory::Source;
  std::size_t count = 0;
  std::size_t undefined_count = 0;
  std::optional<stats::Quartiles> quartiles;
};

struct BeliefSummary {
  Belief belief = Belief::B1;
  std::string statement;
  int agree_pct = 0;
  std::optional<double> pooled_median;
  std::vector<CategorySummary> categories;  // C/T/S order
};

struct SummaryDoc {
  std::string config_hash;
  std::vector<BeliefSummary> beliefs;  // B1..B8
  std::size_t projects = 0;
  corpus::CorpusTotals totals;
  std::map<FileCategory, std::size_t> little_sets;
};

inline SummaryDoc build_summary_doc(
    const std::vector<ProjectReport>& reports,
    const std::vector<stats::DistributionSummary>& summaries,
    const corpus::CorpusTotals& totals, const std::string& config_hash) {
  SummaryDoc doc;
  doc.config_hash = config_hash;
  doc.projects = reports.size();
  doc.totals = totals;
  for (FileCategory cat : kAnalyzedCategories) doc.little_sets[cat] = 0;
  for (const auto& r : reports)
    for (const auto& [cat, n] : r.little_sets) doc.little_sets[cat] += n;
  for (Belief b : kAllBeliefs) {
    BeliefSummary bs;
    bs.belief = b;
    bs.statement = belief_meta(b).statement;
    bs.agree_pct = belief_meta(b).agree_pct;
    bs.pooled_median = pooled_median(reports, b);
    for (FileCategory cat : kAnalyzedCategories) {
      CategorySummary cs;
      cs.category = cat;
      for (const auto& s : summaries)
        if (s.belief == b && s.category == cat) {
          cs.count = s.count;
          cs.undefined_count = s.undefined_count;
          cs.quartiles = s.quartiles;
        }
      bs.categories.push_back(std::move(cs));
    }
    doc.beliefs.push_back(std::move(bs));
  }
  return doc;
}

inline void write_summary_json(const SummaryDoc& doc,
                               const std::vector<ProjectReport>& reports,
                               const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["config_hash"] = doc.config_hash;
  auto beliefs = nlohmann::ordered_json::array();
  for (const auto& bs : doc.beliefs) {
    nlohmann::ordered_json b;
    b["id"] = to_string(bs.belief);
    b["statement"] = bs.statement;
    b["agree_pct"] = bs.agree_pct;
    b["pooled_median"] =
        bs.pooled_median ? nlohmann::ordered_json(*bs.pooled_median)
                         : nlohmann::ordered_json(nullptr);
    auto cats = nlohmann::ordered_json::array();
    for (const auto& cs : bs.categories) {
      nlohmann::ordered_json c;
      c["category"] = to_string(cs.category);
      c["count"] = cs.count;
      c["undefined"] = cs.undefined_count;
      if (cs.quartiles) {
        c["min"] = cs.quartiles->min;
        c["q1"] = cs.quartiles->q1;
        c["median"] = cs.quartiles->median;
        c["q3"] = cs.quartiles->q3;
        c["max"] = cs.quartiles->max;
      }
      cats.push_back(std::move(c));
    }
    b["categories"] = std::move(cats);
    beliefs.push_back(std::move(b));
  }
  j["beliefs"] = std::move(beliefs);
  j["totals"] = {{"projects", doc.projects},
                 {"commits", doc.totals.commits},
                 {"insertions", doc.totals.insertions},
                 {"deletions", doc.totals.deletions},
                 {"file_entries", doc.totals.file_entries},
                 {"authors", doc.totals.unique_authors}};
  auto little = nlohmann::ordered_json::object();
  for (FileCategory cat : kAnalyzedCategories)
    little[to_string(cat)] =
        doc.little_sets.count(cat) ? doc.little_sets.at(cat) : 0;
  j["little_sets"] = std::move(little);
  auto projects = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json p;
    p["id"] = r.project_id;
    p["commits"] = r.commits;
    p["insertions"] = r.insertions;
    p["deletions"] = r.deletions;
    p["bugfix_fraction"] = r.bugfix_fraction;
    auto ls = nlohmann::ordered_json::object();
    for (FileCategory cat : kAnalyzedCategories)
      ls[to_string(cat)] =
          r.little_sets.count(cat) ? r.little_sets.at(cat) : 0;
    p["little_sets"] = std::move(ls);
    projects.push_back(std::move(p));
  }
  j["projects"] = std::move(projects);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out.flush()) throw InputError("write failed: " + path.string());
}

inline SummaryDoc read_summary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read summary: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  SummaryDoc doc;
  try {
    doc.config_hash = j.at("config_hash").get<std::string>();
    for (const auto& b : j.at("beliefs")) {
      BeliefSummary bs;
      const auto belief = belief_from_string(b.at("id").get<std::string>());
      if (!belief) throw ParseError(path.string() + ": bad belief id");
      bs.belief = *belief;
      bs.statement = b.at("statement").get<std::string>();
      bs.agree_pct = b.at("agree_pct").get<int>();
      if (!b.at("pooled_median").is_null())
        bs.pooled_median = b.at("pooled_median").get<double>();
      for (const auto& c : b.at("categories")) {
        CategorySummary cs;
        const auto cat =
            category_from_string(c.at("category").get<std::string>());
        if (!cat) throw ParseError(path.string() + ": bad category");
        cs.category = *cat;
        cs.count = c.at("count").get<std::size_t>();
        cs.undefined_count = c.at("undefined").get<std::size_t>();
        if (c.contains("median")) {
          stats::Quartiles q;
          q.min = c.at("min").get<double>();
          q.q1 = c.at("q1").get<double>();
          q.median = c.at("median").get<double>();
          q.q3 = c.at("q3").get<double>();
          q.max = c.at("max").get<double>();
          cs.quartiles = q;
        }
        bs.categories.push_back(std::move(cs));
      }
      doc.beliefs.push_back(std::move(bs));
    }
    const auto& totals = j.at("totals");
    doc.projects = totals.at("projects").get<std::size_t>();
    doc.totals.commits = totals.at("commits").get<std::uint64_t>();
    doc.totals.insertions = totals.at("insertions").get<std::uint64_t>();
    doc.totals.deletions = totals.at("deletions").get<std::uint64_t>();
    doc.totals.file_entries = totals.at("file_entries").get<std::uint64_t>();
    doc.totals.unique_authors = totals.at("authors").get<std::uint64_t>();
    for (const auto& [key, value] : j.at("little_sets").items()) {
      const auto cat = category_from_string(key);
      if (!cat) throw ParseError(path.string() + ": bad little_sets key");
      doc.little_sets[*cat] = value.get<std::size_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return doc;
}

/// Writes results.csv and summary.json under out_dir.
inline void emit_tables(const std::vector<ProjectReport>& reports,
                        const std::vector<stats::DistributionSummary>& summaries,
                        const std::filesystem::path& out_dir,
                        const corpus::CorpusTotals& totals,
                        const std::string& config_hash) {
  if (reports.empty()) throw InputError("emit_tables: no project reports");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw InputError("cannot create " + out_dir.string());
  write_results_csv(reports, out_dir / "results.csv");
  write_summary_json(build_summary_doc(reports, summaries, totals, config_hash),
                     reports, out_dir / "summary.json");
}

// --- boxplot SVGs ---

namespace detail {

inline std::string fixed(double v, int places = 1) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", places, v);
  return buf;
}

// y pixel for rho in [-1, 1].
inline double rho_y(double rho) { return 252.0 - (rho + 1.0) * 90.0; }

}  // namespace detail

/// Renders one belief panel: three boxes (C/T/S) on a fixed rho scale.
/// Output depends only on the inputs, so identical summaries give identical
/// bytes.
inline std::string render_boxplot_svg(const BeliefSummary& bs, int rank,
                                      int of, const std::string& config_hash) {
  using detail::fixed;
  using detail::rho_y;
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"360\" height=\"320\" "
       "viewBox=\"0 0 360 320\" font-family=\"monospace\" font-size=\"11\">\n";
  s += "<!-- beliefbench config " + config_hash + " -->\n";
  s += "<rect x=\"0\" y=\"0\" width=\"360\" height=\"320\" fill=\"white\"/>\n";
  s += "<text x=\"16\" y=\"20\" font-size=\"14\">" + to_string(bs.belief) +
       " (agree " + std::to_string(bs.agree_pct) + "%)" + "</text>\n";
  std::string statement = bs.statement;
  if (statement.size() > 52) statement = statement.substr(0, 49) + "...";
  s += "<text x=\"16\" y=\"36\" font-size=\"9\">" + statement + "</text>\n";
  s += "<text x=\"16\" y=\"52\">pooled median rho = " +
       (bs.pooled_median ? fixed(*bs.pooled_median, 3) : "undefined") +
       " (rank " + std::to_string(rank) + "/" + std::to_string(of) + ")</text>\n";

  // Axis and gridlines.
  for (double g = -1.0; g <= 1.0; g += 0.5) {
    const std::string y = fixed(rho_y(g));
    s += "<line x1=\"44\" y1=\"" + y + "\" x2=\"340\" y2=\"" + y +
         "\" stroke=\"#ddd\"/>\n";
    s += "<text x=\"10\" y=\"" + fixed(rho_y(g) + 4) + "\">" + fixed(g) +
         "</text>\n";
  }
  s += "<line x1=\"44\" y1=\"" + fixed(rho_y(1)) + "\" x2=\"44\" y2=\"" +
       fixed(rho_y(-1)) + "\" stroke=\"#333\"/>\n";

  const std::array<double, 3> centers = {110, 200, 290};
  const std::array<const char*, 3> labels = {"C", "T", "S"};
  for (std::size_t i = 0; i < bs.categories.size() && i < 3; ++i) {
    const auto& cs = bs.categories[i];
    const double cx = centers[i];
    s += "<text x=\"" + fixed(cx - 4) + "\" y=\"284\">" + labels[i] +
         "</text>\n";
    s += "<text x=\"" + fixed(cx - 24) + "\" y=\"300\" font-size=\"9\">n=" +
         std::to_string(cs.count) + "</text>\n";
    if (!cs.quartiles) continue;
    const auto& q = *cs.quartiles;
    const double half = 22;
    // Whisker, box (at least a hairline when degenerate), median.
    s += "<line x1=\"" + fixed(cx) + "\" y1=\"" + fixed(rho_y(q.min)) +
         "\" x2=\"" + fixed(cx) + "\" y2=\"" + fixed(rho_y(q.max)) +
         "\" stroke=\"#345\"/>\n";
    const double top = rho_y(q.q3);
    const double height = std::max(rho_y(q.q1) - top, 0.5);
    s += "<rect x=\"" + fixed(cx - half) + "\" y=\"" + fixed(top) +
         "\" width=\"" + fixed(2 * half) + "\" height=\"" + fixed(height) +
         "\" fill=\"#cfe2f3\" stroke=\"#345\"/>\n";
    s += "<line x1=\"" + fixed(cx - half) + "\" y1=\"" + fixed(rho_y(q.median)) +
         "\" x2=\"" + fixed(cx + half) + "\" y2=\"" + fixed(rho_y(q.median)) +
         "\" stroke=\"#a00\" stroke-width=\"2\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

/// One SVG per belief, named belief_<id>.svg, emitted in descending pooled
/// median order (undefined medians last). Returns the paths in that order.
inline std::vector<std::filesystem::path> emit_boxplots(
    const std::vector<BeliefSummary>& beliefs,
    const std::filesystem::path& out_dir, const std::string& config_hash) {
  if (beliefs.empty()) throw InputError("emit_boxplots: no summaries");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw InputError("cannot create " + out_dir.string());

  std::vector<std::size_t> order(beliefs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ma = beliefs[a].pooled_median;
    const auto& mb = beliefs[b].pooled_median;
    if (ma.has_value() != mb.has_value()) return ma.has_value();
    if (ma && mb && *ma != *mb) return *ma > *mb;
    return beliefs[a].belief < beliefs[b].belief;
  });

  std::vector<std::filesystem::path> written;
  int rank = 0;
  for (const std::size_t idx : order) {
    ++rank;
    const auto path =
        out_dir / ("belief_" + to_string(beliefs[idx].belief) + ".svg");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path.string());
    out << render_boxplot_svg(beliefs[idx], rank, int(beliefs.size()),
                              config_hash);
    if (!out.flush()) throw InputError("write failed: " + path.string());
    written.push_back(path);
  }
  return written;
}

// --- discrepancy table ---

struct DiscrepancyRow {
  Belief belief = Belief::B1;
  int agree_pct = 0;
  int agree_rank = 0;
  std::optional<double> pooled_median;
  std::optional<int> empirical_rank;
  std::optional<int> rank_gap;
  bool flagged = false;  // comparable and |gap| >= 4
};

inline constexpr int kDiscrepancyGap = 4;

/// Compares each belief's agreement rank with its empirical median-rho rank.
/// Beliefs absent from the summaries (or with no defined median) come back
/// incomparable.
inline std::vector<DiscrepancyRow> discrepancy_table(const SummaryDoc& doc) {
  std::vector<std::pair<double, Belief>> medians;
  std::map<Belief, const BeliefSummary*> by_belief;
  for (const auto& bs : doc.beliefs) {
    by_belief[bs.belief] = &bs;
    if (bs.pooled_median) medians.emplace_back(*bs.pooled_median, bs.belief);
  }
  std::sort(medians.begin(), medians.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::map<Belief, int> empirical_rank;
  for (std::size_t i = 0; i < medians.size(); ++i)
    empirical_rank[medians[i].second] = int(i) + 1;

  std::vector<DiscrepancyRow> rows;
  int agree_rank = 0;
  for (const auto& meta : kBeliefMeta) {  // already in agreement order
    DiscrepancyRow row;
    row.belief = meta.belief;
    row.agree_pct = meta.agree_pct;
    row.agree_rank = ++agree_rank;
    const auto it = by_belief.find(meta.belief);
    if (it != by_belief.end()) row.pooled_median = it->second->pooled_median;
    const auto rank_it = empirical_rank.find(meta.belief);
    if (rank_it != empirical_rank.end()) {
      row.empirical_rank = rank_it->second;
      row.rank_gap = std::abs(row.agree_rank - *row.empirical_rank);
      row.flagged = *row.rank_gap >= kDiscrepancyGap;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline void write_discrepancy_csv(const std::vector<DiscrepancyRow>& rows,
                                  const std::filesystem::path& path,
                                  const std::string& config_hash = {}) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  if (!config_hash.empty()) out << "# config " << config_hash << '\n';
  out << "belief,agree_pct,agree_rank,pooled_median,empirical_rank,rank_gap,flag\n";
  for (const auto& r : rows) {
    out << to_string(r.belief) << ',' << r.agree_pct << ',' << r.agree_rank
        << ',' << (r.pooled_median ? format_double(*r.pooled_median) : "")
        << ',' << (r.empirical_rank ? std::to_string(*r.empirical_rank) : "")
        << ',' << (r.rank_gap ? std::to_string(*r.rank_gap) : "") << ','
        << (r.empirical_rank ? (r.flagged ? "flagged" : "") : "incomparable")
        << '\n';
  }
  if (!out.flush()) throw InputError("write failed: " + path.string());
}

inline std::string format_discrepancy(const std::vector<DiscrepancyRow>& rows) {
  std::string s =
      "belief  agree%  agree-rank  median-rho  emp-rank  gap  note\n";
  for (const auto& r : rows) {
    char line[160];
    std::snprintf(line, sizeof line, "%-6s  %5d  %10d  %10s  %8s  %3s  %s\n",
                  to_string(r.belief).c_str(), r.agree_pct, r.agree_rank,
                  r.pooled_median ? detail::fixed(*r.pooled_median, 3).c_str()
                                  : "-",
                  r.empirical_rank ? std::to_string(*r.empirical_rank).c_str()
                                   : "-",
                  r.rank_gap ? std::to_string(*r.rank_gap).c_str() : "-",
                  r.empirical_rank ? (r.flagged ? "DISCREPANCY" : "")
                                   : "incomparable");
    s += line;
  }
  return s;
}

}  // namespace beliefbench::report
