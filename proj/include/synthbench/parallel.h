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

#ifndef SYNTHBENCH_PARALLEL_H_
#define SYNTHBENCH_PARALLEL_H_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace synthbench {

// Number of worker threads used by the metric kernels. Defaults to the
// hardware concurrency; results never depend on this value.
unsigned DefaultWorkers();
void SetDefaultWorkers(unsigned workers);

// Splits [0, count) into contiguous chunks and runs fn(begin, end) on each,
// one chunk per worker. The first exception thrown by any chunk is
// rethrown on the calling thread after all workers join.
template <typename Fn>
void ParallelFor(std::size_t count, Fn&& fn, unsigned workers = 0) {
  if (workers == 0) workers = DefaultWorkers();
  const std::size_t chunks =
      std::min<std::size_t>(std::max(1u, workers), std::max<std::size_t>(count, 1));
  if (chunks <= 1) {
    if (count > 0) fn(std::size_t{0}, count);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> threads;
  threads.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = count * c / chunks;
    const std::size_t end = count * (c + 1) / chunks;
    threads.emplace_back([&, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace synthbench

#endif  // SYNTHBENCH_PARALLEL_H_
