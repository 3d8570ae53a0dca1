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

#include "synthbench/generators.h"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numeric>

#include "synthbench/error.h"
#include "synthbench/fidelity.h"
#include "synthbench/rng.h"

namespace synthbench {
namespace {

void RequireRows(const DataTable& real, std::size_t n) {
  if (real.row_count() == 0) {
    throw ValidationError("cannot generate from an empty table");
  }
  if (n == 0) throw ValidationError("row count must be at least 1");
}

// Samples column `c` of `real` independently into `out`.
Column SampleColumn(const DataTable& real, std::size_t c, std::size_t n,
                    std::uint64_t seed) {
  Rng rng(DeriveSeed(seed, c));
  const std::size_t rows = real.row_count();
  if (real.schema().column(c).kind == ColumnKind::kNumeric) {
    const auto& src = real.numeric(c);
    NumericColumn col(n);
    for (auto& v : col) v = src[rng.UniformIndex(rows)];
    return col;
  }
  const auto& src = real.categorical(c);
  CategoricalColumn col;
  col.dictionary = src.dictionary;
  col.codes.resize(n);
  for (auto& code : col.codes) code = src.codes[rng.UniformIndex(rows)];
  return col;
}

std::vector<double> NormalScores(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return values[a] < values[b];
  });
  const boost::math::normal standard;
  std::vector<double> scores(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    // Average 1-based rank of the tie block.
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    const double z = boost::math::quantile(
        standard, rank / (static_cast<double>(n) + 1.0));
    for (std::size_t k = i; k <= j; ++k) scores[order[k]] = z;
    i = j + 1;
  }
  return scores;
}

double InterpolatedQuantile(const std::vector<double>& sorted, double u) {
  const double pos = std::clamp(u, 0.0, 1.0) *
                     static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double StandardNormalCdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double HyperDouble(const nlohmann::json& params, const char* key, double fallback) {
  if (!params.contains(key)) return fallback;
  const auto& v = params.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    if (auto parsed = ParseReal(v.get<std::string>())) return *parsed;
  }
  throw ValidationError(std::string("hyperparameter '") + key +
                        "' must be a number");
}

void RejectUnknown(const nlohmann::json& params,
                   std::initializer_list<std::string_view> allowed,
                   std::string_view generator) {
  if (!params.is_object()) {
    throw ValidationError("hyperparameters must be a key/value object");
  }
  for (const auto& [key, value] : params.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ValidationError("unknown hyperparameter '" + key + "' for " +
                            std::string(generator));
    }
  }
}

}  // namespace

const char* ToString(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kBootstrap: return "bootstrap";
    case GeneratorKind::kMarginal: return "marginal";
    case GeneratorKind::kCopula: return "copula";
    case GeneratorKind::kPlugin: return "plugin";
  }
  return "unknown";
}

GeneratorSpec ParseGeneratorSpec(std::string_view text) {
  GeneratorSpec spec;
  if (text == "bootstrap") {
    spec.kind = GeneratorKind::kBootstrap;
  } else if (text == "marginal") {
    spec.kind = GeneratorKind::kMarginal;
  } else if (text == "copula") {
    spec.kind = GeneratorKind::kCopula;
  } else if (text.starts_with("plugin:")) {
    spec.kind = GeneratorKind::kPlugin;
    spec.command = std::string(text.substr(7));
    if (spec.command.find_first_not_of(" \t") == std::string::npos) {
      throw ValidationError("plugin generator needs a command");
    }
  } else {
    throw ValidationError("unknown generator '" + std::string(text) +
                          "' (expected bootstrap, marginal, copula or "
                          "plugin:<command>)");
  }
  spec.name = ToString(spec.kind);
  return spec;
}

DataTable GenerateBootstrap(const DataTable& real, std::size_t n,
                            std::uint64_t seed) {
  RequireRows(real, n);
  Rng rng(seed);
  std::vector<std::size_t> rows(n);
  for (auto& r : rows) r = rng.UniformIndex(real.row_count());
  return real.SelectRows(rows);
}

DataTable GenerateMarginal(const DataTable& real, std::size_t n,
                           std::uint64_t seed) {
  RequireRows(real, n);
  std::vector<Column> columns;
  for (std::size_t c = 0; c < real.column_count(); ++c) {
    columns.push_back(SampleColumn(real, c, n, seed));
  }
  return DataTable(real.schema(), std::move(columns));
}

CopulaModel FitCopula(const DataTable& real, const CopulaOptions& options) {
  if (real.row_count() < 2) {
    throw ValidationError("copula needs at least two rows");
  }
  if (!(options.jitter_start > 0.0) || options.jitter_max < options.jitter_start) {
    throw ValidationError("copula jitter must satisfy 0 < start <= max");
  }
  CopulaModel model{real.schema(), real.schema().NumericIndices(), {}, {}, {},
                    0.0, real};
  const std::size_t d = model.numeric_columns.size();
  if (d == 0) return model;  // categorical-only: no latent structure

  std::vector<std::vector<double>> scores;
  for (auto c : model.numeric_columns) {
    auto sorted = real.numeric(c);
    scores.push_back(NormalScores(sorted));
    std::sort(sorted.begin(), sorted.end());
    model.sorted_values.push_back(std::move(sorted));
  }

  Eigen::MatrixXd corr = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(d),
                                                   static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const double rho = PearsonCorrelation(scores[i], scores[j]);
      corr(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rho;
      corr(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = rho;
    }
  }

  double jitter = 0.0;
  Eigen::LLT<Eigen::MatrixXd> llt(corr);
  while (llt.info() != Eigen::Success) {
    jitter = jitter == 0.0 ? options.jitter_start : jitter * 10.0;
    if (jitter > options.jitter_max * (1.0 + 1e-9)) {
      throw GeneratorError(GeneratorErrorKind::kBuiltinFailed,
                           "copula correlation matrix is not positive "
                           "definite even with maximum jitter");
    }
    Eigen::MatrixXd jittered = corr;
    jittered.diagonal().array() += jitter;
    llt.compute(jittered);
  }
  model.jitter_used = jitter;
  const Eigen::MatrixXd lower = llt.matrixL();
  model.correlation.resize(d * d);
  model.cholesky.resize(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const auto ei = static_cast<Eigen::Index>(i);
      const auto ej = static_cast<Eigen::Index>(j);
      model.correlation[i * d + j] = corr(ei, ej);
      model.cholesky[i * d + j] = lower(ei, ej);
    }
  }
  return model;
}

DataTable SampleCopula(const CopulaModel& model, std::size_t n,
                       std::uint64_t seed) {
  RequireRows(model.source, n);
  const std::size_t d = model.numeric_columns.size();
  std::vector<Column> columns(model.schema.size());
  for (std::size_t c = 0; c < model.schema.size(); ++c) {
    if (model.schema.column(c).kind == ColumnKind::kCategorical || d == 0) {
      columns[c] = SampleColumn(model.source, c, n, seed);
    }
  }
  if (d > 0) {
    std::vector<NumericColumn> out(d, NumericColumn(n));
    Rng rng(DeriveSeed(seed, "copula-latent"));
    std::vector<double> eps(d);
    for (std::size_t r = 0; r < n; ++r) {
      for (auto& e : eps) e = rng.Normal();
      for (std::size_t i = 0; i < d; ++i) {
        double z = 0.0;
        for (std::size_t j = 0; j <= i; ++j) z += model.cholesky[i * d + j] * eps[j];
        // Jitter inflates the latent variance; rescale to unit variance.
        double var = 0.0;
        for (std::size_t j = 0; j <= i; ++j) {
          var += model.cholesky[i * d + j] * model.cholesky[i * d + j];
        }
        z /= std::sqrt(var);
        out[i][r] = InterpolatedQuantile(model.sorted_values[i],
                                         StandardNormalCdf(z));
      }
    }
    for (std::size_t i = 0; i < d; ++i) {
      columns[model.numeric_columns[i]] = std::move(out[i]);
    }
  }
  return DataTable(model.schema, std::move(columns));
}

DataTable GenerateBuiltin(const GeneratorSpec& spec, const DataTable& train,
                          std::size_t n, std::uint64_t seed) {
  switch (spec.kind) {
    case GeneratorKind::kBootstrap:
      RejectUnknown(spec.hyperparams, {}, "bootstrap");
      return GenerateBootstrap(train, n, seed);
    case GeneratorKind::kMarginal:
      RejectUnknown(spec.hyperparams, {}, "marginal");
      return GenerateMarginal(train, n, seed);
    case GeneratorKind::kCopula: {
      RejectUnknown(spec.hyperparams, {"jitter_start", "jitter_max"}, "copula");
      CopulaOptions options;
      options.jitter_start =
          HyperDouble(spec.hyperparams, "jitter_start", options.jitter_start);
      options.jitter_max =
          HyperDouble(spec.hyperparams, "jitter_max", options.jitter_max);
      return SampleCopula(FitCopula(train, options), n, seed);
    }
    case GeneratorKind::kPlugin:
      break;
  }
  throw ValidationError("'" + spec.name + "' is not a builtin generator");
}

}  // namespace synthbench
