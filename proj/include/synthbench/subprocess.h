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

#ifndef SYNTHBENCH_SUBPROCESS_H_
#define SYNTHBENCH_SUBPROCESS_H_

#include <chrono>
#include <filesystem>
#include <string>

namespace synthbench {

struct ProcessResult {
  int exit_code = -1;  // -1 when killed by a signal or the timeout
  bool timed_out = false;
  double seconds = 0.0;  // wall clock from spawn to reap
  std::string captured_stderr;
};

// Runs `command_line` through /bin/sh in its own process group. stdout is
// discarded, stderr is captured (last 64 KiB kept). On timeout the whole
// process group is killed.
ProcessResult RunProcess(const std::string& command_line,
                         std::chrono::milliseconds timeout,
                         const std::filesystem::path& scratch_dir);

// Single-quotes `arg` for /bin/sh.
std::string ShellQuote(const std::string& arg);

// Scratch directory removed (recursively) on destruction.
class TempDir {
 public:
  // Created under `parent`, or under SYNTHBENCH_TMPDIR / the system temp
  // directory when `parent` is empty.
  explicit TempDir(const std::filesystem::path& parent = {});
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace synthbench

#endif  // SYNTHBENCH_SUBPROCESS_H_
