// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#include "inquire/eval/sandbox.hpp"

#include <fcntl.h>
#include <sched.h>
#include <signal.h>
#include <sys/resource.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <thread>

#include "inquire/core/errors.hpp"
#include "inquire/core/io.hpp"

namespace inquire::eval {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kOutputTail = 8192;
constexpr rlim_t kMaxFileBytes = rlim_t{64} * 1024 * 1024;

// Used only when the kernel refuses a private network namespace.
constexpr std::string_view kSocketGuard =
    "import socket as _socket\n"
    "def _denied(*args, **kwargs):\n"
    "    raise OSError(101, 'network access denied by sandbox')\n"
    "class _DeniedSocket(_socket.socket):\n"
    "    def __init__(self, *args, **kwargs):\n"
    "        _denied()\n"
    "_socket.socket = _DeniedSocket\n"
    "_socket.create_connection = _denied\n"
    "_socket.getaddrinfo = _denied\n";

std::string resolve_executable(const std::string& name) {
  auto executable = [](const fs::path& p) { return ::access(p.c_str(), X_OK) == 0 && !fs::is_directory(p); };
  if (name.find('/') != std::string::npos) {
    if (executable(name)) return name;
    throw ConfigError("interpreter not executable: " + name);
  }
  const char* path = std::getenv("PATH");
  std::string_view dirs = path != nullptr ? path : "/usr/local/bin:/usr/bin:/bin";
  while (!dirs.empty()) {
    const auto colon = dirs.find(':');
    const std::string_view dir = dirs.substr(0, colon);
    if (!dir.empty() && executable(fs::path(dir) / name)) return (fs::path(dir) / name).string();
    if (colon == std::string_view::npos) break;
    dirs.remove_prefix(colon + 1);
  }
  throw ConfigError("interpreter not found on PATH: " + name);
}

std::string tail(const fs::path& file) {
  std::string text;
  try {
    text = read_file(file);
  } catch (const IoError&) {
    return {};
  }
  if (text.size() > kOutputTail) text.erase(0, text.size() - kOutputTail);
  return text;
}

struct TempDir {
  fs::path path;
  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "inquire-sbx-XXXXXX").string();
    if (::mkdtemp(tmpl.data()) == nullptr) throw IoError("mkdtemp failed: " + std::string(std::strerror(errno)));
    path = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

void set_limit(int resource, rlim_t value) {
  struct rlimit rl{value, value};
  ::setrlimit(resource, &rl);
}

std::vector<char*> c_strings(std::vector<std::string>& v) {
  std::vector<char*> out;
  out.reserve(v.size() + 1);
  for (auto& s : v) out.push_back(s.data());
  out.push_back(nullptr);
  return out;
}

}  // namespace

std::string compose_program(std::string_view source, const CodingGold& gold) {
  std::string out(source);
  if (!out.empty() && out.back() != '\n') out += '\n';
  out += "\n\n";
  out += gold.canonical_tests;
  if (!out.empty() && out.back() != '\n') out += '\n';
  if (gold.canonical_tests.find("def check(") != std::string::npos) {
    bool invoked = false;
    for (std::string_view line : split_lines(gold.canonical_tests)) {
      if (line.starts_with("check(")) invoked = true;
    }
    if (!invoked) out += "\n\ncheck(" + gold.entry_point + ")\n";
  }
  return out;
}

ExecutionResult execute_program(std::string_view program, const SandboxLimits& limits) {
  if (limits.interpreter.empty()) throw ConfigError("sandbox interpreter is empty");
  const std::string exe = resolve_executable(limits.interpreter.front());

  // Captured output and the socket guard live beside, not inside, the
  // working directory the program sees.
  TempDir dir;
  const fs::path work_dir = dir.path / "work";
  write_file_atomic(work_dir / "solution.py", program);
  const fs::path guard_dir = dir.path / ".guard";
  write_file_atomic(guard_dir / "sitecustomize.py", kSocketGuard);

  std::vector<std::string> args(limits.interpreter.begin(), limits.interpreter.end());
  args.front() = exe;
  args.emplace_back("solution.py");
  const char* host_path = std::getenv("PATH");
  std::vector<std::string> env{
      std::string("PATH=") + (host_path != nullptr ? host_path : "/usr/local/bin:/usr/bin:/bin"),
      "HOME=" + work_dir.string(), "TMPDIR=" + work_dir.string(), "LANG=C.UTF-8",
      "PYTHONDONTWRITEBYTECODE=1", "PYTHONHASHSEED=0"};
  std::vector<std::string> guarded_env = env;
  guarded_env.push_back("PYTHONPATH=" + guard_dir.string());
  auto argv = c_strings(args);
  auto envp = c_strings(env);
  auto guarded_envp = c_strings(guarded_env);

  const std::string work = work_dir.string();
  const int out_fd = ::open((dir.path / "stdout.txt").c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0600);
  const int err_fd = ::open((dir.path / "stderr.txt").c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0600);
  const int null_fd = ::open("/dev/null", O_RDONLY | O_CLOEXEC);
  int status_pipe[2];
  if (out_fd < 0 || err_fd < 0 || null_fd < 0 || ::pipe2(status_pipe, O_CLOEXEC) != 0) {
    for (int fd : {out_fd, err_fd, null_fd}) {
      if (fd >= 0) ::close(fd);
    }
    throw IoError("sandbox setup failed: " + std::string(std::strerror(errno)));
  }

  const bool deny_network = limits.deny_network;
  const auto memory = static_cast<rlim_t>(limits.memory_bytes);
  const auto cpu_seconds = static_cast<rlim_t>(std::ceil(limits.wall_clock_timeout_s)) + 1;

  const auto start = std::chrono::steady_clock::now();
  const pid_t pid = ::fork();
  if (pid < 0) {
    for (int fd : {out_fd, err_fd, null_fd, status_pipe[0], status_pipe[1]}) ::close(fd);
    throw IoError("fork failed: " + std::string(std::strerror(errno)));
  }
  if (pid == 0) {
    // Child: async-signal-safe calls only until exec.
    ::setpgid(0, 0);
    char isolation = 'N';
    if (deny_network) {
      if (::unshare(CLONE_NEWNET) != 0 && ::unshare(CLONE_NEWUSER | CLONE_NEWNET) != 0) isolation = 'G';
    }
    if (memory > 0) set_limit(RLIMIT_AS, memory);
    set_limit(RLIMIT_CPU, cpu_seconds);
    set_limit(RLIMIT_FSIZE, kMaxFileBytes);
    set_limit(RLIMIT_CORE, 0);
    if (::chdir(work.c_str()) != 0) ::_exit(126);
    ::dup2(null_fd, 0);
    ::dup2(out_fd, 1);
    ::dup2(err_fd, 2);
    ssize_t ignored = ::write(status_pipe[1], &isolation, 1);
    ::execve(argv[0], argv.data(), isolation == 'G' ? guarded_envp.data() : envp.data());
    const char failed = 'E';
    const int err = errno;
    ignored = ::write(status_pipe[1], &failed, 1);
    ignored = ::write(status_pipe[1], &err, sizeof err);
    (void)ignored;
    ::_exit(127);
  }

  ::close(status_pipe[1]);
  ::close(out_fd);
  ::close(err_fd);
  ::close(null_fd);

  ExecutionResult result;
  const auto deadline = start + std::chrono::duration<double>(limits.wall_clock_timeout_s);
  int status = 0;
  for (;;) {
    const pid_t done = ::waitpid(pid, &status, WNOHANG);
    if (done == pid) break;
    if (done < 0 && errno != EINTR) break;
    if (std::chrono::steady_clock::now() >= deadline) {
      result.timed_out = true;
      ::kill(-pid, SIGKILL);
      ::kill(pid, SIGKILL);
      while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
      }
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
  // Reap stragglers left in the group.
  ::kill(-pid, SIGKILL);
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  char buf[2 + sizeof(int)] = {};
  std::size_t got = 0;
  for (ssize_t n; got < sizeof buf && (n = ::read(status_pipe[0], buf + got, sizeof buf - got)) > 0;) {
    got += static_cast<std::size_t>(n);
  }
  ::close(status_pipe[0]);
  if (got >= 1) result.network_namespace = deny_network && buf[0] == 'N';
  if (got >= 2 && buf[1] == 'E') {
    int err = 0;
    if (got == sizeof buf) std::memcpy(&err, buf + 2, sizeof err);
    throw ConfigError("cannot execute interpreter " + exe + ": " + std::strerror(err));
  }

  if (!result.timed_out) {
    if (WIFEXITED(status)) {
      result.exit_code = WEXITSTATUS(status);
    } else if (WIFSIGNALED(status)) {
      result.signaled = true;
      result.term_signal = WTERMSIG(status);
    }
  }
  result.stdout_text = tail(dir.path / "stdout.txt");
  result.stderr_text = tail(dir.path / "stderr.txt");
  return result;
}

}  // namespace inquire::eval
