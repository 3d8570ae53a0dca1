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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails. Tolerances and time budgets are fixed
// below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "oracles.h"
#include "synthbench/bench.h"
#include "synthbench/fidelity.h"
#include "synthbench/generators.h"
#include "synthbench/graph.h"
#include "synthbench/privacy.h"
#include "synthbench/subprocess.h"
#include "synthbench/synthesis.h"
#include "test_util.h"

namespace {

using namespace synthbench;

constexpr double kIdentityBudget = 10.0;       // seconds
constexpr double kKsBudget = 5.0;
constexpr double kPrivacyBudget = 30.0;
constexpr double kBaselineBudget = 60.0;
constexpr double kProtocolBudget = 600.0;
constexpr double kRelabelTolerance = 1e-9;
constexpr double kFeatureTolerance = 1e-12;    // ratio features vs oracle
constexpr double kPercentileTolerance = 1e-12;

// Collects failures for one criterion.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    failed_ |= !ok;
  }
  bool failed() const { return failed_; }
  std::string Summary() const {
    std::string s;
    for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + f;
    return s;
  }

 private:
  bool failed_ = false;
  std::vector<std::string> failures_;
};

std::string Fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

int g_failed = 0;

void Criterion(const std::string& name, double budget,
               const std::function<std::string(Check&)>& body) {
  Check check;
  std::string note;
  const auto start = std::chrono::steady_clock::now();
  try {
    note = body(check);
  } catch (const std::exception& e) {
    check.Expect(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  if (budget > 0) {
    check.Expect(secs < budget, "took " + Fmt(secs) + " s, budget " +
                                    Fmt(budget) + " s");
  }
  const bool ok = !check.failed();
  g_failed += !ok;
  std::printf("%s  %-28s %7.2f s  %s\n", ok ? "PASS" : "FAIL", name.c_str(),
              secs, ok ? note.c_str() : check.Summary().c_str());
  std::fflush(stdout);
}

int Cli(std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), "synthbench");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  const int code = RunCli(static_cast<int>(argv.size()), argv.data(), o, e);
  if (out) *out = o.str();
  if (code != 0) std::fprintf(stderr, "%s", e.str().c_str());
  return code;
}

std::string OracleIdentity(Check& c) {
  TempDir dir;
  struct Fixture {
    const char* name;
    bool numeric;
    bool categorical;
  };
  const Fixture fixtures[] = {{"numeric", true, false},
                              {"categorical", false, true},
                              {"mixed", true, true}};
  for (const auto& f : fixtures) {
    const auto path = (dir.path() / (std::string(f.name) + ".csv")).string();
    WriteTable(testing::UniqueFixture(1000, f.numeric, f.categorical, 7), path);
    std::vector<std::string> args{"evaluate", "--real", path, "--synth", path};
    if (f.categorical) {
      args.insert(args.end(), {"--graph-source", "src", "--graph-target", "dst"});
    }
    std::string json;
    c.Expect(Cli(args, &json) == 0, std::string(f.name) + ": evaluate failed");
    const auto r = ParseReportsJson(json).at(0);
    const std::string n = f.name;
    c.Expect(r.column_fidelity == 1.0, n + ": column_fidelity");
    if (f.numeric) {
      c.Expect(r.row_fidelity && r.row_fidelity->value == 1.0, n + ": row_fidelity");
    } else {
      c.Expect(r.row_fidelity && !r.row_fidelity->value, n + ": row_fidelity should be undefined");
    }
    c.Expect(r.synthesis == 0.0, n + ": synthesis");
    c.Expect(r.dcr_p5 == 0.0, n + ": dcr_p5");
    c.Expect(r.nndr_p5 == 0.0, n + ": nndr_p5");
    if (f.categorical) {
      c.Expect(r.netsimile && r.netsimile->value == 0.0, n + ": netsimile");
    }
  }
  return "3 fixtures x 1000 rows, exact";
}

std::string KsOracle(Check& c) {
  Rng rng(101);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> a(1 + rng.UniformIndex(100));
    std::vector<double> b(1 + rng.UniformIndex(100));
    const bool ties = trial % 2 == 0;
    for (auto& v : a) v = ties ? static_cast<double>(rng.UniformIndex(20)) : rng.Normal();
    for (auto& v : b) v = ties ? static_cast<double>(rng.UniformIndex(20)) : rng.Normal() + 0.3;
    c.Expect(KsStatistic(a, b) == oracle::Ks(a, b), "pair " + std::to_string(trial));
  }
  return "1000 pairs, exact";
}

std::string PrivacyOracle(Check& c) {
  Rng rng(202);
  std::size_t queries = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t nd = rng.UniformIndex(5);
    const std::size_t cd = nd == 0 ? 1 + rng.UniformIndex(3) : rng.UniformIndex(4);
    const std::size_t rows_r = 2 + rng.UniformIndex(499);
    const std::size_t rows_s = 1 + rng.UniformIndex(500);
    const double grid = trial % 3 == 0 ? 1.0 : 0.01;  // coarse grids force ties
    const auto real = testing::RandomMixedTable(rng, rows_r, nd, cd, 3, grid);
    const auto synth = testing::RandomMixedTable(rng, rows_s, nd, cd, 4, grid);
    const auto params = FitNormalization(real);
    const auto er = EmbedForDistance(real, params);
    const auto es = EmbedForDistance(synth, params);
    const auto got = ComputePrivacyDistributions(er, es);

    std::vector<oracle::Point> rp;
    for (std::size_t i = 0; i < er.rows(); ++i) rp.push_back(testing::ToPoint(er, i));
    std::vector<double> dcr, nndr;
    for (std::size_t s = 0; s < es.rows(); ++s) {
      const auto want = oracle::TwoNearest(testing::ToPoint(es, s), rp);
      dcr.push_back(want.d1);
      nndr.push_back(oracle::NndrOf(want));
      c.Expect(got.dcr[s] == want.d1, "dcr mismatch in table " + std::to_string(trial));
      c.Expect(got.nndr[s] == nndr.back(), "nndr mismatch in table " + std::to_string(trial));
    }
    queries += es.rows();
    const auto scores = ComputePrivacyScores(real, synth, params);
    c.Expect(std::abs(scores.dcr_p - oracle::Quantile(dcr, 5.0)) <= kPercentileTolerance,
             "dcr_p5 in table " + std::to_string(trial));
    c.Expect(std::abs(scores.nndr_p - oracle::Quantile(nndr, 5.0)) <= kPercentileTolerance,
             "nndr_p5 in table " + std::to_string(trial));
  }
  std::vector<double> fixture;
  for (int k = 1; k <= 100; ++k) fixture.push_back(0.01 * k);
  const double p = Percentile(fixture, 5.0);
  c.Expect(std::abs(p - 0.0595) <= kPercentileTolerance, "percentile fixture gave " + Fmt(p));
  c.Expect(std::abs(p - oracle::Quantile(fixture, 5.0)) <= kPercentileTolerance,
           "percentile disagrees with oracle");
  return "200 tables, " + std::to_string(queries) + " queries bit-exact; p5 = " + Fmt(p);
}

std::string SynthesisLaw(Check& c) {
  // Range 100 with a 1% margin. The second real row only fixes the range.
  const auto real = testing::NumericTable({{0, 100}});
  const auto synth = testing::NumericTable({{0.5, 1.5}});
  const double s = SynthesisScore(real, synth, {0.01});
  c.Expect(s == 0.5, "single-row fixture gave " + Fmt(s));
  Rng rng(303);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = testing::RandomMixedTable(rng, 200, 2, 1, 2, 0.05);
    const auto b = testing::RandomMixedTable(rng, 200, 2, 1, 2, 0.05);
    double prev = 2.0;
    for (double m : {0.0, 0.005, 0.01, 0.02, 0.05}) {
      const double v = SynthesisScore(a, b, {m});
      c.Expect(v <= prev, "increase at margin " + Fmt(m) + " in pair " + std::to_string(trial));
      prev = v;
    }
  }
  return "fixture 0.5; monotone on 50 pairs";
}

std::string NetSimileSuite(Check& c) {
  using Edge = std::pair<std::uint32_t, std::uint32_t>;
  const std::vector<Edge> k3{{0, 1}, {1, 2}, {2, 0}};
  for (const auto& row : ComputeNodeFeatures(GraphFromEdges(3, k3))) {
    c.Expect(row == NodeFeatureRow{2, 1.0, 2, 1.0, 3, 0, 0}, "K3 features");
  }

  Rng rng(404);
  const std::size_t n = 200;
  std::vector<Edge> edges;
  for (int e = 0; e < 800; ++e) {
    edges.push_back({static_cast<std::uint32_t>(rng.UniformIndex(n)),
                     static_cast<std::uint32_t>(rng.UniformIndex(n))});
  }
  const auto base = ComputeSignature(GraphFromEdges(n, edges));
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  for (int t = 0; t < 100; ++t) {
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.UniformIndex(i + 1)]);
    std::vector<Edge> relabeled;
    for (auto [u, v] : edges) relabeled.push_back({perm[u], perm[v]});
    const auto sig = ComputeSignature(GraphFromEdges(n, relabeled));
    for (std::size_t k = 0; k < kSignatureLength; ++k) {
      c.Expect(std::abs(sig[k] - base[k]) <= kRelabelTolerance, "relabeling " + std::to_string(t));
    }
  }

  std::size_t graphs = 0;
  for (std::size_t nodes = 2; nodes <= 6; ++nodes) {
    std::vector<std::pair<int, int>> slots;
    for (std::size_t a = 0; a < nodes; ++a) {
      for (std::size_t b = a + 1; b < nodes; ++b) slots.push_back({int(a), int(b)});
    }
    for (std::uint32_t mask = 1; mask < (1u << slots.size()); ++mask) {
      std::vector<std::pair<int, int>> oe;
      std::vector<Edge> ge;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (mask & (1u << s)) {
          oe.push_back(slots[s]);
          ge.push_back({std::uint32_t(slots[s].first), std::uint32_t(slots[s].second)});
        }
      }
      if (!oracle::Connected(nodes, oe)) continue;
      ++graphs;
      const auto got = ComputeNodeFeatures(GraphFromEdges(nodes, ge));
      const auto want = oracle::NodeFeatures(nodes, oe);
      for (std::size_t v = 0; v < nodes; ++v) {
        for (std::size_t f = 0; f < kNodeFeatureCount; ++f) {
          c.Expect(std::abs(got[v][f] - want[v][f]) <= kFeatureTolerance,
                   "graph mask " + std::to_string(mask) + " on " + std::to_string(nodes) + " nodes");
        }
      }
    }
  }

  std::vector<double> a(kSignatureLength, 0.0), b(kSignatureLength, 0.0);
  a[0] = 1; a[2] = 2;
  b[0] = 1; b[1] = 1;
  const double d = NetSimileDistance(a, b);
  c.Expect(d == 2.0, "canberra fixture gave " + Fmt(d));
  return "K3 ok; 100 relabelings; " + std::to_string(graphs) + " connected graphs; canberra 2";
}

std::string Baselines(Check& c) {
  const auto real = testing::CorrelatedTable(10000, 0.9, 505);
  MetricOptions opts;
  opts.metrics = ParseMetricSelection("fidelity,synthesis,privacy");
  const auto score = [&](const char* g, std::uint64_t seed) {
    const auto synth = GenerateBuiltin(ParseGeneratorSpec(g), real, 10000, seed);
    MetricReport r;
    ScoreSynthetic(real, synth, opts, r);
    return r;
  };
  const auto pair_score = [](const MetricReport& r) {
    for (const auto& p : r.details.per_pair) {
      if (p.first == "x" && p.second == "y") return p.score;
    }
    return -1.0;
  };
  const auto boot = score("bootstrap", 1);
  const auto marg = score("marginal", 2);
  const auto cop = score("copula", 3);
  c.Expect(*boot.synthesis <= 0.01, "bootstrap synthesis " + Fmt(*boot.synthesis));
  c.Expect(*boot.dcr_p5 == 0.0, "bootstrap dcr_p5 " + Fmt(*boot.dcr_p5));
  c.Expect(*marg.column_fidelity >= 0.95, "marginal column fidelity " + Fmt(*marg.column_fidelity));
  c.Expect(pair_score(marg) <= 0.70, "marginal pair score " + Fmt(pair_score(marg)));
  c.Expect(pair_score(cop) >= 0.90, "copula pair score " + Fmt(pair_score(cop)));
  return "boot syn " + Fmt(*boot.synthesis) + ", marg col " + Fmt(*marg.column_fidelity) +
         " pair " + Fmt(pair_score(marg)) + ", copula pair " + Fmt(pair_score(cop));
}

std::string Protocol(Check& c) {
  TempDir dir;
  const auto real = (dir.path() / "real.csv").string();
  WriteTable(testing::CorrelatedTable(100000, 0.9, 606), real);
  const auto md = (dir.path() / "r.md").string();
  const auto js = (dir.path() / "r.json").string();
  c.Expect(Cli({"bench", "--real", real, "--runs", "3", "--train-size", "100000",
                "--gen-size", "10000", "--generator", "bootstrap", "--generator",
                "marginal", "--generator", "copula", "--out-json", js, "--out-md", md}) == 0,
           "bench exit code");
  const std::string text = testing::ReadFile(md);
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  c.Expect(lines.size() == 5, "expected header, rule and 3 rows");
  for (const auto& l : lines) {
    c.Expect(std::count(l.begin(), l.end(), '|') == 9, "row is not 1 + 7 columns: " + l);
  }
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const auto& l = lines[i];
    c.Expect(l.size() >= 7 && l.substr(l.size() - 7) == "| NaN |",
             "graph-less row lacks NaN: " + l);
    c.Expect(std::count(l.begin(), l.end(), 'N') == 2, "unexpected NaN in: " + l);
  }
  const auto reports = ParseReportsJson(testing::ReadFile(js));
  double total = 0;
  for (const auto& r : reports) {
    c.Expect(r.ok() && r.efficiency_seconds && *r.efficiency_seconds > 0, r.generator + " efficiency");
    if (r.efficiency_seconds) total += *r.efficiency_seconds;
  }
  return "100k rows, 3 builtins x 3 runs, mean gen " + Fmt(total) + " s total";
}

std::string Determinism(Check& c) {
  TempDir dir;
  const auto real = (dir.path() / "real.csv").string();
  WriteTable(testing::UniqueFixture(5000, true, true, 707), real);
  std::vector<std::vector<MetricReport>> runs;
  for (int i = 0; i < 2; ++i) {
    const auto js = (dir.path() / ("r" + std::to_string(i) + ".json")).string();
    const auto md = (dir.path() / ("r" + std::to_string(i) + ".md")).string();
    c.Expect(Cli({"bench", "--real", real, "--runs", "2", "--train-size", "4000",
                  "--gen-size", "2000", "--seed", "77", "--graph-source", "src",
                  "--graph-target", "dst", "--generator", "bootstrap", "--generator",
                  "marginal", "--generator", "copula", "--out-json", js, "--out-md",
                  md}) == 0,
             "bench exit code");
    auto reports = ParseReportsJson(testing::ReadFile(js));
    for (auto& r : reports) {
      r.efficiency_seconds.reset();
      r.metadata.started_at.clear();
      r.metadata.finished_at.clear();
    }
    runs.push_back(std::move(reports));
  }
  c.Expect(runs[0].size() == 3, "expected three reports");
  c.Expect(runs[0] == runs[1], "reports differ between identical runs");
  return "two runs identical apart from timing fields";
}

}  // namespace

int main() {
  Criterion("oracle_identity", kIdentityBudget, OracleIdentity);
  Criterion("ks_oracle", kKsBudget, KsOracle);
  Criterion("privacy_oracle", kPrivacyBudget, PrivacyOracle);
  Criterion("synthesis_margin_law", 0, SynthesisLaw);
  Criterion("netsimile_suite", 0, NetSimileSuite);
  Criterion("baseline_directionality", kBaselineBudget, Baselines);
  Criterion("protocol_scale_run", kProtocolBudget, Protocol);
  Criterion("determinism", 0, Determinism);
  std::printf("%d of 8 criteria failed\n", g_failed);
  return g_failed == 0 ? 0 : 1;
}
