#pragma once

// Scratch git repositories for gitlog and pipeline tests.

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "beliefbench/exec.hpp"

namespace testutil {

class TempDir {
 public:
  TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "bbtest.XXXXXX").string();
    if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline void run_or_die(const std::vector<std::string>& argv,
                       const std::vector<std::string>& env = {}) {
  const auto r = beliefbench::run_command(argv, {}, env);
  if (!r.ok())
    throw std::runtime_error("command failed (" + argv[0] + " " +
                             (argv.size() > 1 ? argv[1] : "") + "): " + r.err);
}

inline void init_repo(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  run_or_die({"git", "init", "-q", "-b", "main", dir.string()});
}

struct FileSpec {
  std::string path;
  std::string content;
};

// Stages the given files (creating parent dirs) plus any removals, then
// commits with a fixed author and the given epoch timestamp.
inline void commit(const std::filesystem::path& repo, const std::string& message,
                   const std::vector<FileSpec>& files, long long ts,
                   const std::string& author_email = "dev@example.com",
                   const std::string& author_name = "Dev",
                   const std::vector<std::string>& removals = {}) {
  for (const auto& f : files) {
    const auto full = repo / f.path;
    std::filesystem::create_directories(full.parent_path());
    std::ofstream out(full, std::ios::binary | std::ios::trunc);
    out << f.content;
  }
  for (const auto& r : removals)
    run_or_die({"git", "-C", repo.string(), "rm", "-q", r});
  run_or_die({"git", "-C", repo.string(), "add", "-A"});
  const std::string date = "@" + std::to_string(ts) + " +0000";
  run_or_die({"git", "-C", repo.string(), "-c", "user.name=" + author_name,
              "-c", "user.email=" + author_email, "commit", "-q",
              "--allow-empty", "-m", message},
             {"GIT_AUTHOR_DATE=" + date, "GIT_COMMITTER_DATE=" + date});
}

inline std::string lines(int n, const std::string& tag = "x") {
  std::string out;
  for (int i = 0; i < n; ++i) out += tag + std::to_string(i) + "\n";
  return out;
}

}  // namespace testutil
