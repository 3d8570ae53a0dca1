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

#ifndef SYNTHBENCH_GENERATORS_H_
#define SYNTHBENCH_GENERATORS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "synthbench/tabular.h"

namespace synthbench {

enum class GeneratorKind { kBootstrap, kMarginal, kCopula, kPlugin };

const char* ToString(GeneratorKind kind);

struct GeneratorSpec {
  std::string name;  // label used in reports
  GeneratorKind kind = GeneratorKind::kBootstrap;
  std::string command;  // plugin only
  nlohmann::json hyperparams = nlohmann::json::object();
  std::uint64_t seed = 0;
};

// Parses "bootstrap", "marginal", "copula" or "plugin:<command>". The name
// defaults to the text before any ':' ("plugin" for plugins).
GeneratorSpec ParseGeneratorSpec(std::string_view text);

// `n` rows drawn uniformly with replacement from `real`.
DataTable GenerateBootstrap(const DataTable& real, std::size_t n,
                            std::uint64_t seed);

// Every column drawn independently from its empirical distribution. Column
// c uses the stream DeriveSeed(seed, c).
DataTable GenerateMarginal(const DataTable& real, std::size_t n,
                           std::uint64_t seed);

struct CopulaOptions {
  // Diagonal jitter tried after a failed factorization, multiplied by 10 on
  // each further failure until it exceeds jitter_max.
  double jitter_start = 1e-6;
  double jitter_max = 1e-2;
};

// Gaussian copula over the numeric columns. Numeric values are mapped to
// normal scores through their (tie-averaged) ranks; sampling draws from the
// latent normal and maps back through linearly interpolated empirical
// quantiles. Categorical columns are sampled as in GenerateMarginal.
struct CopulaModel {
  TableSchema schema;
  std::vector<std::size_t> numeric_columns;
  std::vector<std::vector<double>> sorted_values;  // per numeric column
  std::vector<double> correlation;                 // row-major, d x d
  std::vector<double> cholesky;                    // lower, row-major
  double jitter_used = 0.0;
  DataTable source;  // for categorical sampling
};

CopulaModel FitCopula(const DataTable& real, const CopulaOptions& options = {});
DataTable SampleCopula(const CopulaModel& model, std::size_t n,
                       std::uint64_t seed);

// Runs a builtin generator after validating its hyperparameters
// (bootstrap/marginal take none; copula takes jitter_start, jitter_max).
DataTable GenerateBuiltin(const GeneratorSpec& spec, const DataTable& train,
                          std::size_t n, std::uint64_t seed);

}  // namespace synthbench

#endif  // SYNTHBENCH_GENERATORS_H_
