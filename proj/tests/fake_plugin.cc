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

// Stand-in generator speaking the plugin protocol. The first argument picks
// a behaviour; the rest are the harness flags.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

namespace {

struct Args {
  std::string mode;
  std::string train;
  std::string out;
  std::string hparams;
  long n = 0;
  unsigned long long seed = 0;
};

Args Parse(int argc, char** argv) {
  Args a;
  a.mode = argc > 1 ? argv[1] : "";
  for (int i = 2; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    const std::string value = argv[i + 1];
    if (flag == "--train") a.train = value;
    else if (flag == "--out") a.out = value;
    else if (flag == "--hparams") a.hparams = value;
    else if (flag == "--n") a.n = std::stol(value);
    else if (flag == "--seed") a.seed = std::stoull(value);
  }
  return a;
}

// Copies training rows cyclically, starting at an offset chosen by the seed.
int Copy(const Args& a, long rows, bool bad_header, bool bad_cell) {
  std::ifstream in(a.train);
  std::string header;
  std::getline(in, header);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  if (lines.empty()) return 4;
  std::ofstream out(a.out);
  out << (bad_header ? "renamed" + header.substr(header.find(',')) : header)
      << "\n";
  for (long i = 0; i < rows; ++i) {
    std::string line = lines[(a.seed + i) % lines.size()];
    if (bad_cell && i == 0) line = "abc" + line.substr(line.find(','));
    out << line << "\n";
  }
  return out ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
  const Args a = Parse(argc, argv);
  if (a.mode == "ok") return Copy(a, a.n, false, false);
  if (a.mode == "hparams") {
    std::ifstream h(a.hparams);
    std::cerr << "hparams:" << h.rdbuf() << "\n";
    return Copy(a, a.n, false, false);
  }
  if (a.mode == "fail") {
    std::cerr << "boom: model diverged\n";
    return 1;
  }
  if (a.mode == "sleep") {
    // A grandchild that outlives a naive kill of the direct child.
    if (const char* mark = std::getenv("FAKE_PLUGIN_MARK")) {
      const std::string cmd =
          std::string("(sleep 2; touch '") + mark + "') &";
      if (std::system(cmd.c_str()) != 0) return 6;
    }
    std::this_thread::sleep_for(std::chrono::seconds(60));
    return Copy(a, a.n, false, false);
  }
  if (a.mode == "bad_header") return Copy(a, a.n, true, false);
  if (a.mode == "bad_cell") return Copy(a, a.n, false, true);
  if (a.mode == "short") return Copy(a, a.n - 1, false, false);
  if (a.mode == "no_output") return 0;
  std::cerr << "unknown mode '" << a.mode << "'\n";
  return 2;
}
