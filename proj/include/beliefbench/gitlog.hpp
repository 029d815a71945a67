#pragma once

// Normalized, deterministic commit-record extraction from git history, plus
// the JSON Lines extract cache format.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "beliefbench/core.hpp"
#include "beliefbench/exec.hpp"

namespace beliefbench::gitlog {

struct FileChange {
  std::string path;
  std::uint64_t lines_added = 0;
  std::uint64_t lines_deleted = 0;
  bool is_binary = false;

  bool operator==(const FileChange&) const = default;
};

struct CommitRecord {
  std::string commit_id;
  std::string author_id;  // lowercase email, or lowercase name when absent
  std::int64_t timestamp = 0;
  std::string message;
  std::vector<FileChange> changes;
  bool is_merge = false;

  bool operator==(const CommitRecord&) const = default;
};

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

// Undoes git's C-style path quoting ("tab\tname.c" etc).
inline std::string unquote_git_path(std::string_view s) {
  if (s.size() < 2 || s.front() != '"' || s.back() != '"') return std::string(s);
  std::string out;
  out.reserve(s.size());
  std::size_t i = 1;
  const std::size_t end = s.size() - 1;
  while (i < end) {
    const char c = s[i++];
    if (c != '\\' || i >= end) {
      out.push_back(c);
      continue;
    }
    const char e = s[i++];
    switch (e) {
      case 'n': out.push_back('\n'); break;
      case 't': out.push_back('\t'); break;
      case 'r': out.push_back('\r'); break;
      case 'a': out.push_back('\a'); break;
      case 'b': out.push_back('\b'); break;
      case 'f': out.push_back('\f'); break;
      case 'v': out.push_back('\v'); break;
      case '\\': out.push_back('\\'); break;
      case '"': out.push_back('"'); break;
      default:
        if (e >= '0' && e <= '7') {
          int v = e - '0';
          for (int k = 0; k < 2 && i < end && s[i] >= '0' && s[i] <= '7'; ++k)
            v = v * 8 + (s[i++] - '0');
          out.push_back(static_cast<char>(v));
        } else {
          out.push_back(e);
        }
    }
  }
  return out;
}

inline CommandResult run_git(const std::string& repo,
                             std::vector<std::string> args) {
  std::vector<std::string> argv = {"git", "-C", repo, "-c",
                                   "core.quotePath=false"};
  argv.insert(argv.end(), std::make_move_iterator(args.begin()),
              std::make_move_iterator(args.end()));
  return run_command(argv);
}

inline bool parse_count(std::string_view s, std::uint64_t& out) {
  if (s.empty()) return false;
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  out = v;
  return true;
}

// One "added<TAB>deleted<TAB>path" numstat line; "-" counts mark binaries.
// Nullopt for anything malformed (the caller drops the change and warns).
inline std::optional<FileChange> parse_numstat_line(std::string_view line) {
  const auto fields = split(line, '\t');
  if (fields.size() < 3) return std::nullopt;
  FileChange change;
  if (fields[0] == "-" && fields[1] == "-") {
    change.is_binary = true;
  } else if (!parse_count(fields[0], change.lines_added) ||
             !parse_count(fields[1], change.lines_deleted)) {
    return std::nullopt;
  }
  // A path containing tabs comes back quoted; any tab splits beyond the
  // counts belong to it.
  std::string raw = fields[2];
  for (std::size_t i = 3; i < fields.size(); ++i) raw += "\t" + fields[i];
  change.path = utf8_sanitize(unquote_git_path(raw));
  if (change.path.empty()) return std::nullopt;
  return change;
}

}  // namespace detail

/// Extracts all non-merge commits on the first-parent chain of HEAD, ordered
/// ascending by (timestamp, commit_id). When `until` is set, commits after it
/// are dropped. Unparsable numstat lines are reported through `warnings` and
/// the affected change is dropped; the commit is kept.
inline std::vector<CommitRecord> extract_history(
    const std::string& repo_path, std::optional<std::int64_t> until = {},
    std::vector<std::string>* warnings = nullptr) {
  using namespace detail;
  if (until && *until <= 0) throw InputError("until must be a positive timestamp");

  if (!run_git(repo_path, {"rev-parse", "--git-dir"}).ok())
    throw InputError("not a git repository: " + repo_path);
  if (!run_git(repo_path, {"rev-parse", "--verify", "--quiet", "HEAD"}).ok())
    return {};  // repository with no commits

  // --no-renames keeps path identity simple: a rename is a deletion plus an
  // addition, never an "old => new" numstat line.
  const std::vector<std::string> walk = {"log", "--first-parent", "--no-merges",
                                         "--no-renames"};

  auto log_args = [&walk](std::initializer_list<std::string> extra) {
    std::vector<std::string> args = walk;
    args.insert(args.end(), extra);
    args.push_back("HEAD");
    return args;
  };

  const auto headers =
      run_git(repo_path, log_args({"--pretty=format:%H%x1f%ae%x1f%an%x1f%ct"}));
  const auto messages = run_git(repo_path, log_args({"-z", "--pretty=format:%B"}));
  const auto numstat = run_git(
      repo_path, log_args({"--numstat", "--pretty=format:%x01%H"}));
  if (!headers.ok() || !messages.ok() || !numstat.ok())
    throw InputError(
        "unreadable history in " + repo_path + ": " +
        trim(headers.ok() ? (messages.ok() ? numstat.err : messages.err)
                          : headers.err));

  std::vector<CommitRecord> records;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& line : split(headers.out, '\n')) {
    if (line.empty()) continue;
    const auto fields = split(line, '\x1f');
    if (fields.size() != 4)
      throw InputError("unreadable history: malformed header line in " +
                       repo_path);
    CommitRecord r;
    r.commit_id = fields[0];
    r.author_id = utf8_sanitize(
        fields[1].empty() ? lower_ascii(fields[2]) : lower_ascii(fields[1]));
    r.timestamp = std::strtoll(fields[3].c_str(), nullptr, 10);
    index.emplace(r.commit_id, records.size());
    records.push_back(std::move(r));
  }

  auto bodies = split(messages.out, '\0');
  if (bodies.size() == records.size() + 1 && bodies.back().empty())
    bodies.pop_back();
  if (bodies.size() != records.size())
    throw InputError("unreadable history: message/header mismatch in " +
                     repo_path);
  for (std::size_t i = 0; i < records.size(); ++i) {
    std::string& m = bodies[i];
    while (!m.empty() && m.back() == '\n') m.pop_back();
    records[i].message = utf8_sanitize(m);
  }

  CommitRecord* current = nullptr;
  for (const auto& line : split(numstat.out, '\n')) {
    if (line.empty()) continue;
    if (line[0] == '\x01') {
      const auto it = index.find(line.substr(1));
      current = it == index.end() ? nullptr : &records[it->second];
      continue;
    }
    auto change = parse_numstat_line(line);
    if (!change || !current) {
      if (warnings)
        warnings->push_back(
            "unparsable numstat line dropped" +
            (current ? " in commit " + current->commit_id : std::string()) +
            ": " + line);
      continue;
    }
    current->changes.push_back(std::move(*change));
  }

  if (until) {
    std::erase_if(records,
                  [&](const CommitRecord& r) { return r.timestamp > *until; });
  }
  std::sort(records.begin(), records.end(),
            [](const CommitRecord& a, const CommitRecord& b) {
              return a.timestamp != b.timestamp ? a.timestamp < b.timestamp
                                                : a.commit_id < b.commit_id;
            });
  return records;
}

// --- extract cache: JSON Lines, one commit per line ---

inline nlohmann::ordered_json to_json(const CommitRecord& r) {
  nlohmann::ordered_json j;
  j["id"] = r.commit_id;
  j["author"] = r.author_id;
  j["ts"] = r.timestamp;
  j["msg"] = r.message;
  j["merge"] = r.is_merge;
  auto files = nlohmann::ordered_json::array();
  for (const auto& c : r.changes) {
    nlohmann::ordered_json f;
    f["path"] = c.path;
    f["add"] = c.lines_added;
    f["del"] = c.lines_deleted;
    f["bin"] = c.is_binary;
    files.push_back(std::move(f));
  }
  j["files"] = std::move(files);
  return j;
}

inline void write_extract(const std::vector<CommitRecord>& records,
                          const std::filesystem::path& path) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write extract: " + path.string());
    for (const auto& r : records)
      out << to_json(r).dump(-1, ' ', false,
                             nlohmann::json::error_handler_t::replace)
          << '\n';
    out.flush();
    if (!out) throw InputError("write failed: " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::vector<CommitRecord> read_extract(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read extract: " + path.string());
  std::vector<CommitRecord> records;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError(path.string() + ":" + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw fail(e.what());
    }
    try {
      CommitRecord r;
      r.commit_id = j.at("id").get<std::string>();
      r.author_id = j.at("author").get<std::string>();
      r.timestamp = j.at("ts").get<std::int64_t>();
      r.message = j.at("msg").get<std::string>();
      r.is_merge = j.at("merge").get<bool>();
      for (const auto& f : j.at("files")) {
        FileChange c;
        c.path = f.at("path").get<std::string>();
        c.lines_added = f.at("add").get<std::uint64_t>();
        c.lines_deleted = f.at("del").get<std::uint64_t>();
        c.is_binary = f.at("bin").get<bool>();
        if (c.path.empty()) throw fail("empty file path");
        if (c.is_binary && (c.lines_added != 0 || c.lines_deleted != 0))
          throw fail("binary change with nonzero line counts");
        r.changes.push_back(std::move(c));
      }
      if (r.commit_id.empty()) throw fail("empty commit id");
      if (r.timestamp <= 0) throw fail("non-positive timestamp");
      records.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw fail(e.what());
    }
  }
  return records;
}

}  // namespace beliefbench::gitlog
