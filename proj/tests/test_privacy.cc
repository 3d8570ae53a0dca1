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

#include <cmath>

#include "doctest.h"
#include "oracles.h"
#include "synthbench/error.h"
#include "synthbench/nn_index.h"
#include "synthbench/parallel.h"
#include "synthbench/privacy.h"
#include "test_util.h"

using namespace synthbench;
using testing::kCat;
using testing::kNum;

namespace {

DistanceEmbedding Points(std::vector<std::vector<double>> rows) {
  std::vector<double> flat;
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return DistanceEmbedding::FromNumeric(rows.size(), rows.front().size(),
                                        std::move(flat));
}

}  // namespace

TEST_CASE("DCR and NNDR hand examples") {
  const auto real = Points({{0, 0}, {1, 0}});
  const auto q = Points({{0.25, 0}, {0, 0}, {0.5, 0}});
  CHECK(Dcr(q, 0, real) == 0.25);
  CHECK(Nndr(q, 0, real) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(Dcr(q, 1, real) == 0.0);
  CHECK(Nndr(q, 1, real) == 0.0);
  CHECK(Nndr(q, 2, real) == 1.0);  // equidistant
}

TEST_CASE("NNDR needs two real rows") {
  const auto real = Points({{0, 0}});
  CHECK_THROWS_AS(Nndr(real, 0, real), ValidationError);
}

TEST_CASE("NNDR edge cases") {
  CHECK(NndrFromSquared(0.0, 0.0) == 1.0);  // duplicate real rows
  CHECK(NndrFromSquared(0.0, 4.0) == 0.0);
  CHECK(NndrFromSquared(1.0, 4.0) == 0.5);
}

TEST_CASE("percentile by linear interpolation") {
  std::vector<double> v;
  for (int k = 1; k <= 100; ++k) v.push_back(0.01 * k);
  CHECK(Percentile(v, 5.0) == doctest::Approx(0.0595).epsilon(1e-12));
  CHECK(Percentile(v, 5.0) == oracle::Quantile(v, 5.0));
  CHECK(Percentile({3.0}, 5.0) == 3.0);
  CHECK(Percentile({1.0, 2.0}, 50.0) == 1.5);
  CHECK_THROWS_AS(Percentile({}, 5.0), ValidationError);
  CHECK_THROWS_AS(Percentile({1.0}, 0.0), ValidationError);
  CHECK_THROWS_AS(Percentile({1.0}, 100.0), ValidationError);
}

TEST_CASE("duplicating the sample keeps the percentile when n*p/100 is whole") {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(100);
    for (auto& x : v) x = rng.Uniform01();
    std::vector<double> doubled(v);
    doubled.insert(doubled.end(), v.begin(), v.end());
    CHECK(std::abs(Percentile(doubled, 5.0) - Percentile(v, 5.0)) <= 1e-12);
  }
  // n = 10, p = 5: n*p/100 is not whole and duplication shifts the value.
  std::vector<double> w;
  for (int k = 0; k < 10; ++k) w.push_back(k);
  std::vector<double> w2(w);
  w2.insert(w2.end(), w.begin(), w.end());
  CHECK(Percentile(w, 5.0) == doctest::Approx(0.45));
  CHECK(Percentile(w2, 5.0) == 0.0);
}

TEST_CASE("copy of real gives zero DCR and NNDR percentiles") {
  const auto t = testing::UniqueFixture(300, true, true, 3);
  const auto p = FitNormalization(t);
  const auto s = ComputePrivacyScores(t, t, p);
  CHECK(s.dcr_p == 0.0);
  CHECK(s.nndr_p == 0.0);
}

TEST_CASE("far synthetic points give positive DCR") {
  const auto real = testing::NumericTable({{0, 1, 2, 3}, {0, 1, 2, 3}});
  const auto synth = testing::NumericTable({{10, 11}, {-10, -11}});
  const auto s = ComputePrivacyScores(real, synth, FitNormalization(real));
  CHECK(s.dcr_p > 0.0);
}

TEST_CASE("indexed neighbours equal the brute-force scan bit for bit") {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t nd = rng.UniformIndex(4);
    const std::size_t cd = nd == 0 ? 1 + rng.UniformIndex(3) : rng.UniformIndex(3);
    const auto real = testing::RandomMixedTable(rng, 2 + rng.UniformIndex(200), nd, cd);
    const auto synth = testing::RandomMixedTable(rng, 1 + rng.UniformIndex(100), nd, cd, 5);
    const auto p = FitNormalization(real);
    const auto er = EmbedForDistance(real, p);
    const auto es = EmbedForDistance(synth, p);
    std::vector<oracle::Point> rp;
    for (std::size_t i = 0; i < er.rows(); ++i) rp.push_back(testing::ToPoint(er, i));
    const auto dist = ComputePrivacyDistributions(er, es);
    NearestNeighborIndex index(er, 1 + rng.UniformIndex(8));
    for (std::size_t s = 0; s < es.rows(); ++s) {
      const auto want = oracle::TwoNearest(testing::ToPoint(es, s), rp);
      const auto got = index.Query(es, s);
      CHECK(std::sqrt(got.d1_squared) == want.d1);
      CHECK(std::sqrt(got.d2_squared) == want.d2);
      CHECK(dist.dcr[s] == want.d1);
      CHECK(dist.nndr[s] == oracle::NndrOf(want));
      CHECK(Dcr(es, s, er) == want.d1);
      CHECK(Nndr(es, s, er) == oracle::NndrOf(want));
    }
  }
}

TEST_CASE("privacy scores do not depend on the worker count") {
  Rng rng(8);
  const auto real = testing::RandomMixedTable(rng, 400, 3, 2);
  const auto synth = testing::RandomMixedTable(rng, 300, 3, 2);
  const auto p = FitNormalization(real);
  SetDefaultWorkers(1);
  const auto one = ComputePrivacyScores(real, synth, p);
  SetDefaultWorkers(4);
  const auto four = ComputePrivacyScores(real, synth, p);
  SetDefaultWorkers(0);
  CHECK(one.dcr_p == four.dcr_p);
  CHECK(one.nndr_p == four.nndr_p);
}

TEST_CASE("privacy rejects degenerate inputs") {
  const auto one = testing::NumericTable({{1.0}});
  const auto two = testing::NumericTable({{1.0, 2.0}});
  CHECK_THROWS_AS(ComputePrivacyScores(one, two, FitNormalization(one)),
                  ValidationError);
  CHECK_THROWS_AS(ComputePrivacyScores(two, two, FitNormalization(two), {0.0}),
                  ValidationError);
}
