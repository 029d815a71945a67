#pragma once

// Minimal fork/exec wrapper for invoking git. stdout is drained through a
// pipe while stderr goes to an unlinked temp file, so neither stream can
// block the child.

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "beliefbench/core.hpp"

namespace beliefbench {

struct CommandResult {
  int status = -1;  // exit code, or 128+signal when killed
  std::string out;
  std::string err;

  bool ok() const { return status == 0; }
};

// Runs argv (argv[0] resolved via PATH). Optional stdin_path feeds the
// child's stdin; extra_env entries are "NAME=value" pairs set in the child.
inline CommandResult run_command(const std::vector<std::string>& argv,
                                 const std::string& stdin_path = {},
                                 const std::vector<std::string>& extra_env = {}) {
  if (argv.empty()) throw std::logic_error("run_command: empty argv");

  int out_pipe[2];
  if (pipe(out_pipe) != 0)
    throw InputError(std::string("pipe failed: ") + std::strerror(errno));

  std::FILE* err_file = std::tmpfile();
  if (!err_file) {
    close(out_pipe[0]);
    close(out_pipe[1]);
    throw InputError("tmpfile failed for stderr capture");
  }

  const pid_t pid = fork();
  if (pid < 0) {
    close(out_pipe[0]);
    close(out_pipe[1]);
    std::fclose(err_file);
    throw InputError(std::string("fork failed: ") + std::strerror(errno));
  }

  if (pid == 0) {
    close(out_pipe[0]);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(out_pipe[1]);
    dup2(fileno(err_file), STDERR_FILENO);
    int in_fd = open(stdin_path.empty() ? "/dev/null" : stdin_path.c_str(),
                     O_RDONLY);
    if (in_fd < 0) _exit(127);
    dup2(in_fd, STDIN_FILENO);
    close(in_fd);
    for (const auto& kv : extra_env) {
      const auto eq = kv.find('=');
      if (eq != std::string::npos)
        setenv(kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str(), 1);
    }
    std::vector<char*> cargv;
    cargv.reserve(argv.size() + 1);
    for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
    cargv.push_back(nullptr);
    execvp(cargv[0], cargv.data());
    _exit(127);
  }

  close(out_pipe[1]);
  CommandResult result;
  char buf[65536];
  for (;;) {
    const ssize_t n = read(out_pipe[0], buf, sizeof buf);
    if (n > 0) {
      result.out.append(buf, static_cast<std::size_t>(n));
    } else if (n == 0) {
      break;
    } else if (errno != EINTR) {
      break;
    }
  }
  close(out_pipe[0]);

  int wstatus = 0;
  while (waitpid(pid, &wstatus, 0) < 0 && errno == EINTR) {
  }
  if (WIFEXITED(wstatus))
    result.status = WEXITSTATUS(wstatus);
  else if (WIFSIGNALED(wstatus))
    result.status = 128 + WTERMSIG(wstatus);

  std::rewind(err_file);
  for (;;) {
    const std::size_t n = std::fread(buf, 1, sizeof buf, err_file);
    if (n == 0) break;
    result.err.append(buf, n);
  }
  std::fclose(err_file);
  return result;
}

}  // namespace beliefbench
