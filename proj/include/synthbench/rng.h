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

#ifndef SYNTHBENCH_RNG_H_
#define SYNTHBENCH_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace synthbench {

// Seeded random source used by every generator and sampler.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The standard distributions are not (their algorithms vary
// between library vendors), so the variate transforms below are implemented
// here to keep outputs identical across platforms:
//   UniformIndex  - Lemire's multiply-and-reject bounded integer.
//   Uniform01     - top 53 bits of one engine draw, in [0, 1).
//   Normal        - Box-Muller, consuming two Uniform01 draws per variate
//                   (the sine half is discarded so each call is stateless).
//
// Independent streams are derived with SplitMix64 so that, for example,
// per-column sampling can run in any order without changing its output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }
  std::uint64_t UniformIndex(std::uint64_t bound);
  double Uniform01();
  double Normal();

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; a bijective 64-bit mix.
std::uint64_t Mix64(std::uint64_t x);

// Seed for the stream identified by (seed, stream); distinct stream ids give
// statistically independent seeds.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream);
std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view label);

}  // namespace synthbench

#endif  // SYNTHBENCH_RNG_H_
