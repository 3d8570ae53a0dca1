// Copyright 2026 The synthbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "synthbench/subprocess.h"

#include <fcntl.h>
#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

#include "synthbench/error.h"

namespace synthbench {
namespace {

constexpr std::size_t kStderrKeepBytes = 64 * 1024;

std::string ReadTail(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  if (text.size() > kStderrKeepBytes) {
    text = text.substr(text.size() - kStderrKeepBytes);
  }
  return text;
}

}  // namespace

const char* ToString(GeneratorErrorKind kind) {
  switch (kind) {
    case GeneratorErrorKind::kPluginFailed: return "plugin_failed";
    case GeneratorErrorKind::kPluginTimeout: return "plugin_timeout";
    case GeneratorErrorKind::kMalformedOutput: return "malformed_output";
    case GeneratorErrorKind::kBuiltinFailed: return "builtin_failed";
  }
  return "unknown";
}

std::string ShellQuote(const std::string& arg) {
  std::string out = "'";
  for (char c : arg) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out.push_back(c);
    }
  }
  out.push_back('\'');
  return out;
}

ProcessResult RunProcess(const std::string& command_line,
                         std::chrono::milliseconds timeout,
                         const std::filesystem::path& scratch_dir) {
  const auto stderr_path = scratch_dir / "stderr.log";
  ProcessResult result;
  const auto start = std::chrono::steady_clock::now();
  const pid_t pid = fork();
  if (pid < 0) {
    throw IoError(std::string("fork failed: ") + std::strerror(errno));
  }
  if (pid == 0) {
    setpgid(0, 0);
    const int err = open(stderr_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    const int null_fd = open("/dev/null", O_RDWR);
    if (err >= 0) dup2(err, STDERR_FILENO);
    if (null_fd >= 0) {
      dup2(null_fd, STDOUT_FILENO);
      dup2(null_fd, STDIN_FILENO);
    }
    execl("/bin/sh", "sh", "-c", command_line.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);  // also done by the child; whichever runs first wins

  int status = 0;
  const auto deadline = start + timeout;
  auto sleep_for = std::chrono::microseconds(200);
  for (;;) {
    const pid_t done = waitpid(pid, &status, WNOHANG);
    if (done == pid) break;
    if (done < 0 && errno != EINTR) {
      throw IoError(std::string("waitpid failed: ") + std::strerror(errno));
    }
    if (std::chrono::steady_clock::now() >= deadline) {
      kill(-pid, SIGKILL);
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      result.timed_out = true;
      break;
    }
    std::this_thread::sleep_for(sleep_for);
    sleep_for = std::min(sleep_for * 2, std::chrono::microseconds(20000));
  }
  result.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  // Reap anything the command left running in its group.
  kill(-pid, SIGKILL);
  if (!result.timed_out && WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  }
  result.captured_stderr = ReadTail(stderr_path);
  return result;
}

TempDir::TempDir(const std::filesystem::path& parent) {
  std::filesystem::path base = parent;
  if (base.empty()) {
    if (const char* env = std::getenv("SYNTHBENCH_TMPDIR"); env && *env) {
      base = env;
    } else {
      base = std::filesystem::temp_directory_path();
    }
  }
  std::error_code ec;
  std::filesystem::create_directories(base, ec);
  std::string templ = (base / "synthbench-XXXXXX").string();
  if (mkdtemp(templ.data()) == nullptr) {
    throw IoError("cannot create a temporary directory under '" +
                  base.string() + "'");
  }
  path_ = templ;
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace synthbench
