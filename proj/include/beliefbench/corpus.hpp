#pragma once

// Study-corpus management: the 46-project manifest, repository acquisition
// into a local cache, and commit-count verification against expected values.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "beliefbench/core.hpp"
#include "beliefbench/exec.hpp"
#include "beliefbench/gitlog.hpp"

namespace beliefbench::corpus {

struct ProjectEntry {
  std::string slug;  // "owner/name"
  std::string clone_url;
  std::optional<std::int64_t> pin_until;
  std::optional<std::uint64_t> expected_commits;
  std::vector<std::string> languages;

  bool operator==(const ProjectEntry&) const = default;
};

// Default observation-window pin: end of 2019-06-30 UTC.
inline std::int64_t default_pin_until() {
  static const std::int64_t ts = parse_timestamp("2019-06-30");
  return ts;
}

namespace detail {

struct RosterRow {
  const char* slug;
  std::uint64_t commits;
  const char* languages;  // comma-separated
};

// 46 studied projects with their recorded commit counts and dominant
// languages. The grape slug is the real one; an abbreviation artifact in the
// published table renders it as "Ru-grape/grape".
inline constexpr RosterRow kRoster[] = {
    {"activeadmin/activeadmin", 6373, "ruby,css"},
    {"activemerchant/active_merchant", 4482, "ruby,html"},
    {"aws/opsworks-cookbooks", 2047, "ruby,erb"},
    {"boto/boto3", 2179, "python,html"},
    {"bundler/bundler", 11724, "ruby,html"},
    {"cakePHP/phinx", 2304, "php,css"},
    {"Codeception/Codeception", 6625, "php,html"},
    {"django-tastypie/django-tastypie", 1335, "python,html"},
    {"doorkeeper-gem/doorkeeper", 1798, "ruby,erb"},
    {"drapergem/draper", 1165, "ruby,html"},
    {"encode/django-rest-framework", 8229, "python,html"},
    {"errbit/errbit", 2813, "ruby,html"},
    {"exercism/exercism.io", 6911, "ruby"},
    {"getpelican/pelican", 3092, "html,python"},
    {"irungentoo/toxcore", 3800, "c,c++"},
    {"jordansissel/fpm", 3885, "ruby,shell"},
    {"karmi/retire", 996, "ruby,html"},
    {"lra/mackup", 1914, "python"},
    {"lusis/chef-logstash", 790, "ruby"},
    {"Lusitanian/PHPoAuthLib", 833, "php,html"},
    {"mikel/mail", 1901, "ruby"},
    {"mperham/sidekiq", 3866, "ruby,javascript"},
    {"omniauth/omniauth", 1385, "ruby,html"},
    {"ooici/coi-services", 12982, "python,c"},
    {"pennersr/django-allauth", 2058, "python,html"},
    {"pentaho/data-access", 2575, "java,javascript"},
    {"plataformatec/simple_form", 2060, "ruby"},
    {"propelorm/Propel2", 4343, "php,html"},
    {"puppetlabs/beaker", 5127, "ruby,shell"},
    {"puppetlabs/puppetlabs-apache", 3224, "ruby"},
    {"reactjs/react-rails", 1080, "javascript,ruby"},
    {"resque/resque", 2487, "ruby,javascript"},
    {"restsharp/RestSharp", 1613, "css,html"},
    {"ros-simulation/gazebo_ros_pkgs", 1398, "c++,python"},
    {"ruby-grape/grape", 2170, "ruby,html"},
    {"scribejava/scribejava", 954, "java"},
    {"Seldaek/monolog", 2119, "php"},
    {"sferik/rails_admin", 4485, "javascript,ruby"},
    {"spotify/luigi", 3751, "python,javascript"},
    {"swanson/stringer", 934, "ruby"},
    {"teamcapybara/capybara", 3756, "ruby"},
    {"thoughtbot/bourbon", 1439, "css,html"},
    {"thoughtbot/paperclip", 2026, "ruby,html"},
    {"wlanslovenija/PiplMesh", 1660, "python,html"},
    {"xetorthio/jedis", 2140, "java,html"},
    {"ZF-Commons/ZfcUser", 887, "php,sql"},
};

inline std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      if (i > start) out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace detail

inline const std::vector<ProjectEntry>& default_manifest() {
  static const std::vector<ProjectEntry> entries = [] {
    std::vector<ProjectEntry> out;
    for (const auto& row : detail::kRoster) {
      ProjectEntry e;
      e.slug = row.slug;
      e.clone_url = "https://github.com/" + e.slug + ".git";
      e.pin_until = default_pin_until();
      e.expected_commits = row.commits;
      e.languages = detail::split_csv(row.languages);
      out.push_back(std::move(e));
    }
    return out;
  }();
  return entries;
}

// Manifest file: tab-separated, one project per line, '#' comments.
// Fields: slug, clone_url, pin (date or epoch or '-'), expected commits
// (or '-'), languages (comma list or '-').
inline std::vector<ProjectEntry> load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read manifest: " + path.string());
  std::vector<ProjectEntry> entries;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = gitlog::detail::split(line, '\t');
    const std::string where =
        path.string() + ":" + std::to_string(lineno) +
        " (entry " + std::to_string(entries.size() + 1) + ")";
    if (fields.size() != 5)
      throw ParseError(where + ": expected 5 tab-separated fields, got " +
                       std::to_string(fields.size()));
    ProjectEntry e;
    e.slug = fields[0];
    e.clone_url = fields[1];
    if (e.slug.find('/') == std::string::npos)
      throw ParseError(where + ": slug must look like owner/name");
    if (e.slug.find(',') != std::string::npos ||
        e.slug.find(' ') != std::string::npos)
      throw ParseError(where + ": slug must not contain commas or spaces");
    if (e.clone_url.empty()) throw ParseError(where + ": empty clone url");
    if (!seen.insert(e.slug).second)
      throw ParseError(where + ": duplicate slug " + e.slug);
    try {
      if (fields[2] != "-") e.pin_until = parse_timestamp(fields[2]);
      if (fields[3] != "-") {
        const long long v = std::stoll(fields[3]);
        if (v <= 0) throw InputError("expected commit count must be positive");
        e.expected_commits = static_cast<std::uint64_t>(v);
      }
    } catch (const std::exception& ex) {
      throw ParseError(where + ": " + ex.what());
    }
    if (fields[4] != "-") e.languages = detail::split_csv(fields[4]);
    entries.push_back(std::move(e));
  }
  return entries;
}

inline void write_manifest(const std::vector<ProjectEntry>& entries,
                           const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InputError("cannot write manifest: " + path.string());
  out << "# beliefbench corpus manifest\n"
      << "# slug\tclone_url\tpin_until\texpected_commits\tlanguages\n";
  for (const auto& e : entries) {
    out << e.slug << '\t' << e.clone_url << '\t'
        << (e.pin_until ? format_utc_date(*e.pin_until) : "-") << '\t'
        << (e.expected_commits ? std::to_string(*e.expected_commits) : "-")
        << '\t';
    if (e.languages.empty()) {
      out << '-';
    } else {
      for (std::size_t i = 0; i < e.languages.size(); ++i)
        out << (i ? "," : "") << e.languages[i];
    }
    out << '\n';
  }
}

inline std::string cache_key(const std::string& slug) {
  std::string key = slug;
  for (auto pos = key.find('/'); pos != std::string::npos; pos = key.find('/'))
    key.replace(pos, 1, "__");
  return key;
}

inline std::filesystem::path repo_dir(const std::filesystem::path& cache_dir,
                                      const std::string& slug) {
  return cache_dir / cache_key(slug);
}

inline std::filesystem::path extract_path(const std::filesystem::path& cache_dir,
                                          const std::string& slug) {
  return cache_dir / (cache_key(slug) + ".jsonl");
}

/// Ensures the project's repository is present under the cache and returns
/// its path. Idempotent: an existing cached clone is returned untouched.
inline std::filesystem::path acquire(const ProjectEntry& entry,
                                     const std::filesystem::path& cache_dir) {
  const auto dir = repo_dir(cache_dir, entry.slug);
  if (std::filesystem::exists(dir / ".git") ||
      std::filesystem::exists(dir / "HEAD"))
    return dir;
  std::filesystem::create_directories(cache_dir);
  const auto r = run_command(
      {"git", "clone", "--quiet", entry.clone_url, dir.string()});
  if (!r.ok()) {
    std::error_code ec;
    std::filesystem::remove_all(dir, ec);  // drop partial clones
    throw InputError("clone failed for " + entry.slug + ": " + trim(r.err));
  }
  return dir;
}

struct ProjectDrift {
  std::string slug;
  std::uint64_t actual_commits = 0;
  std::optional<std::uint64_t> expected_commits;
  std::optional<double> drift_pct;  // 100 * (actual - expected) / expected
};

struct CorpusTotals {
  std::uint64_t commits = 0;
  std::uint64_t insertions = 0;
  std::uint64_t deletions = 0;
  std::uint64_t file_entries = 0;
  std::uint64_t unique_authors = 0;
};

// Published corpus figures the totals can be compared against.
inline constexpr CorpusTotals kReferenceTotals = {145715, 21760416, 14992194,
                                                  592094, 13821};

struct CorpusReport {
  std::vector<ProjectDrift> projects;
  CorpusTotals totals;
  std::vector<std::string> missing;  // entries with no extract
};

/// Per-project commit drift against expected counts plus corpus-level totals
/// over all supplied extracts.
inline CorpusReport verify_corpus(
    const std::vector<ProjectEntry>& entries,
    const std::map<std::string, std::vector<gitlog::CommitRecord>>& extracts) {
  if (extracts.empty()) throw InputError("verify_corpus: no extracts");
  CorpusReport report;
  std::set<std::string> authors;
  for (const auto& entry : entries) {
    const auto it = extracts.find(entry.slug);
    if (it == extracts.end()) {
      report.missing.push_back(entry.slug);
      continue;
    }
    ProjectDrift drift;
    drift.slug = entry.slug;
    drift.actual_commits = it->second.size();
    drift.expected_commits = entry.expected_commits;
    if (entry.expected_commits && *entry.expected_commits > 0)
      drift.drift_pct = 100.0 *
                        (static_cast<double>(drift.actual_commits) -
                         static_cast<double>(*entry.expected_commits)) /
                        static_cast<double>(*entry.expected_commits);
    report.projects.push_back(std::move(drift));

    report.totals.commits += it->second.size();
    for (const auto& r : it->second) {
      authors.insert(r.author_id);
      for (const auto& c : r.changes) {
        report.totals.insertions += c.lines_added;
        report.totals.deletions += c.lines_deleted;
        ++report.totals.file_entries;
      }
    }
  }
  report.totals.unique_authors = authors.size();
  return report;
}

}  // namespace beliefbench::corpus
