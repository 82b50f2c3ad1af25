#pragma once

#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace testsupport {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr, interleaved
  double wall_seconds = 0.0;
  std::uint64_t max_rss_bytes = 0;  // of the child process
};

// fork/exec with captured output and child rusage; argv[0] is the binary.
inline RunResult run_process(const std::vector<std::string>& argv) {
  if (argv.empty()) throw std::runtime_error("run_process: empty argv");

  int fds[2];
  if (pipe(fds) != 0) throw std::runtime_error("pipe failed");

  auto start = std::chrono::steady_clock::now();
  pid_t pid = fork();
  if (pid < 0) throw std::runtime_error("fork failed");

  if (pid == 0) {
    close(fds[0]);
    dup2(fds[1], STDOUT_FILENO);
    dup2(fds[1], STDERR_FILENO);
    close(fds[1]);
    std::vector<char*> args;
    args.reserve(argv.size() + 1);
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    execv(args[0], args.data());
    std::perror("execv");
    _exit(127);
  }

  close(fds[1]);
  RunResult result;
  char buf[4096];
  ssize_t got;
  while ((got = read(fds[0], buf, sizeof(buf))) > 0) {
    result.output.append(buf, std::size_t(got));
  }
  close(fds[0]);

  int status = 0;
  struct rusage usage {};
  if (wait4(pid, &status, 0, &usage) < 0) throw std::runtime_error("wait4 failed");
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.max_rss_bytes = std::uint64_t(usage.ru_maxrss) * 1024;  // Linux reports KiB
  return result;
}

// Resolved at build time; NFTCYCLES_BIN env var overrides.
inline std::string cli_path() {
  if (const char* env = std::getenv("NFTCYCLES_BIN")) return env;
#ifdef NFTCYCLES_CLI_PATH
  return NFTCYCLES_CLI_PATH;
#else
  throw std::runtime_error("NFTCYCLES_CLI_PATH not defined and NFTCYCLES_BIN not set");
#endif
}

}  // namespace testsupport
